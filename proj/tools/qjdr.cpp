// Copyright 2026 The qjdr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qjdr: command-line driver for the receiver comparison experiment.
//
// Exit status: 0 success, 1 usage or configuration error, 2 numerical
// failure, 3 I/O error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qjdr/qjdr.hpp>

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

struct Common {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::string out;
};

struct Point {
    double magnitude = 0.5;
    double temperature = 1e-3;
    double phase = 0.0;
};

qjdr::SweepConfig resolve_config(const Common &common) {
    qjdr::SweepConfig config;
    if (!common.config_path.empty()) {
        config = qjdr::load_config(common.config_path);
    }
    for (const auto &o : common.overrides) {
        qjdr::apply_override(config, o);
    }
    if (common.seed) {
        config.train.seed = *common.seed;
    }
    config.validate();
    return config;
}

/// Writes to `path`, or to stdout when the path is empty or "-".
void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw qjdr::IoError("cannot open '" + path + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw qjdr::IoError("failed writing '" + path + "'");
    }
}

std::string real(double v) { return qjdr::format_real(v); }

int run_baseline(const Common &common) {
    const auto config = resolve_config(common);
    auto mags = config.magnitudes;
    std::sort(mags.begin(), mags.end());
    std::ostringstream out;
    out << "magnitude,alpha_sq,p_err_single,p_err_classical\n";
    for (double m : mags) {
        out << real(m) << ',' << real(m * m) << ',' << real(qjdr::helstrom_bpsk_optical(m)) << ','
            << real(qjdr::classical_codeword_baseline(m, config.info_pulses)) << '\n';
    }
    write_text(common.out, out.str());
    return kOk;
}

int run_transduce(const Common &common, const Point &point) {
    const auto config = resolve_config(common);
    const auto channel = config.channel_at(point.temperature);
    const auto rho = qjdr::transduce_pulse(qjdr::CoherentPulse(point.magnitude, point.phase), channel);
    const auto b = qjdr::bloch_vector(rho);
    std::ostringstream out;
    out << "magnitude," << real(point.magnitude) << '\n'
        << "phase," << real(point.phase) << '\n'
        << "nbar," << real(channel.thermal_occupancy) << '\n'
        << "bloch_x," << real(b.x) << '\n'
        << "bloch_y," << real(b.y) << '\n'
        << "bloch_z," << real(b.z) << '\n'
        << "transverse_length," << real(b.transverse_length()) << '\n'
        << "azimuth," << real(b.azimuth()) << '\n'
        << "purity," << real(rho.purity()) << '\n';
    write_text(common.out, out.str());
    return kOk;
}

int run_optimal(const Common &common, const Point &point) {
    const auto config = resolve_config(common);
    const auto channel = config.channel_at(point.temperature);
    const auto states = qjdr::ensemble(config.load_codebook_source(), point.magnitude, channel);
    const auto opt = qjdr::optimal_povm(states, config.povm_tol, config.povm_max_iter);
    const double pgm = qjdr::povm_error_prob(states, qjdr::pretty_good_measurement(states));
    std::ostringstream out;
    out << "magnitude," << real(point.magnitude) << '\n'
        << "nbar," << real(channel.thermal_occupancy) << '\n'
        << "p_err_classical,"
        << real(qjdr::classical_codeword_baseline(point.magnitude, config.info_pulses)) << '\n'
        << "p_err_pgm," << real(pgm) << '\n'
        << "p_err_optimal," << real(opt.p_err) << '\n'
        << "ykl_residual," << real(opt.ykl_residual) << '\n'
        << "iterations," << opt.iterations << '\n'
        << "converged," << (opt.converged ? "true" : "false") << '\n';
    write_text(common.out, out.str());
    if (!opt.converged) {
        std::cerr << "error: optimal POVM iteration did not converge\n";
        return kNumerical;
    }
    return kOk;
}

int run_train(const Common &common, const Point &point) {
    const auto config = resolve_config(common);
    const auto codebook = config.load_codebook_source();
    const auto channel = config.channel_at(point.temperature);
    const auto states = qjdr::ensemble(codebook, point.magnitude, channel);
    const qjdr::AnsatzSpec spec{static_cast<int>(codebook.length()), config.layers};
    const auto result = qjdr::train(spec, states, config.train);

    std::ostringstream out;
    out << "outer_iter,best_p_err\n";
    for (const auto &t : result.trajectory) {
        out << t.outer_iter << ',' << real(t.best_p_err) << '\n';
    }
    write_text(common.out, out.str());

    std::cerr << "best restart " << result.best_restart << " of " << config.train.restarts
              << ", p_err " << real(result.p_err) << '\n';
    std::cerr << "restart p_err:";
    for (double p : result.restart_p_err) {
        std::cerr << ' ' << real(p);
    }
    std::cerr << "\noutcome -> codeword:";
    for (auto m : result.assignment.outcome_to_codeword) {
        std::cerr << ' ' << m;
    }
    std::cerr << '\n';
    return kOk;
}

int run_sweep(const Common &common, const std::string &plot_path) {
    const auto config = resolve_config(common);
    const auto report = qjdr::run_sweep(config, qjdr::SweepOptions{common.jobs});
    const std::string path = common.out.empty() ? config.output : common.out;
    std::ostringstream csv;
    qjdr::write_csv(report.rows, csv);
    write_text(path, csv.str());
    if (!plot_path.empty() && !report.rows.empty()) {
        qjdr::PlotOptions opts;
        opts.frequency_hz = config.frequency_hz;
        qjdr::emit_plot(report.rows, plot_path, opts);
    }
    int code = kOk;
    for (const auto &f : report.failures) {
        std::cerr << "error: point T=" << real(f.temperature_kelvin)
                  << " K, |alpha|=" << real(f.magnitude) << ": " << f.message << '\n';
        code = std::max(code, f.kind == qjdr::FailureKind::numerical ? int{kNumerical}
                                                                     : int{kUsage});
    }
    return code;
}

int run_plot(const Common &common, const std::string &in_path, double frequency_hz) {
    if (common.out.empty()) {
        throw qjdr::ConfigError("plot: --out is required");
    }
    qjdr::PlotOptions opts;
    opts.frequency_hz = frequency_hz;
    qjdr::emit_plot(qjdr::load_csv(in_path), common.out, opts);
    return kOk;
}

void add_common(CLI::App *app, Common &common) {
    app->add_option("--config", common.config_path, "Configuration file");
    app->add_option("--set", common.overrides, "Override a key: section.key=value")
        ->allow_extra_args(false);
    app->add_option("--seed", common.seed, "Training seed (overrides receiver.seed)");
    app->add_option("--jobs", common.jobs, "Worker threads (0 = auto)");
    app->add_option("--out", common.out, "Output path (default: stdout)");
}

void add_point(CLI::App *app, Point &point, bool with_phase) {
    app->add_option("--magnitude", point.magnitude, "Pulse magnitude |alpha|")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--temperature", point.temperature, "Temperature in kelvin")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (with_phase) {
        app->add_option("--phase", point.phase, "Pulse phase in radians")->capture_default_str();
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Joint-detection receiver comparison for transduced coherent pulses"};
    app.require_subcommand(1);

    Common common;
    Point point;
    std::string plot_path;
    std::string plot_in;
    double plot_frequency = 10e9;

    auto *baseline = app.add_subcommand("baseline", "Classical single-pulse receiver curve");
    add_common(baseline, common);

    auto *transduce = app.add_subcommand("transduce", "Bloch vector of one transduced pulse");
    add_common(transduce, common);
    add_point(transduce, point, true);

    auto *optimal = app.add_subcommand("optimal", "Measurement bounds at one grid point");
    add_common(optimal, common);
    add_point(optimal, point, false);

    auto *train = app.add_subcommand("train", "Train the circuit receiver at one grid point");
    add_common(train, common);
    add_point(train, point, false);

    auto *sweep = app.add_subcommand("sweep", "Full magnitude and temperature sweep to CSV");
    add_common(sweep, common);
    sweep->add_option("--plot", plot_path, "Also render the sweep as SVG");

    auto *plot = app.add_subcommand("plot", "Render a sweep CSV as SVG");
    add_common(plot, common);
    plot->add_option("--in", plot_in, "Sweep CSV")->required();
    plot->add_option("--frequency", plot_frequency, "Mode frequency in Hz for temperature labels")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*baseline) {
            return run_baseline(common);
        }
        if (*transduce) {
            return run_transduce(common, point);
        }
        if (*optimal) {
            return run_optimal(common, point);
        }
        if (*train) {
            return run_train(common, point);
        }
        if (*sweep) {
            return run_sweep(common, plot_path);
        }
        return run_plot(common, plot_in, plot_frequency);
    } catch (const qjdr::IoError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const qjdr::NumericalError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const qjdr::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
