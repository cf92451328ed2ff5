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

/**
 * @file
 * Grid sweep over pulse magnitude and transducer temperature.
 *
 * Each grid point builds the codeword ensemble, evaluates the classical
 * single-pulse baseline, the square-root and optimal measurements, and
 * trains the variational receiver. Points are independent; with several
 * jobs they run on worker threads and are collected in grid order, so the
 * output does not depend on the job count.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../codebook.hpp"
#include "../discrimination.hpp"
#include "../vqc.hpp"
#include "config.hpp"

namespace qjdr {

struct SweepRow {
    double magnitude = 0.0;
    double alpha_sq = 0.0;
    double nbar = 0.0;
    double p_err_classical = 0.0;
    double p_err_optimal = 0.0;
    double p_err_pgm = 0.0;
    double p_err_vqc = 0.0;
    double ykl_residual = 0.0;
    int train_iterations = 0;
    std::uint64_t seed = 0;
    /// Not part of the CSV schema; NaN when rows were read back from CSV.
    double temperature_kelvin = std::numeric_limits<double>::quiet_NaN();
};

enum class FailureKind { input, numerical };

struct PointFailure {
    double temperature_kelvin;
    double magnitude;
    FailureKind kind;
    std::string message;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::vector<PointFailure> failures;

    [[nodiscard]] bool ok() const { return failures.empty(); }
};

struct SweepOptions {
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned jobs = 1;
};

/// Bounds and training at a single grid point.
inline SweepRow evaluate_point(const SweepConfig &config, const Codebook &codebook,
                               double temperature_kelvin, double magnitude) {
    const auto channel = config.channel_at(temperature_kelvin);
    const auto states = ensemble(codebook, magnitude, channel);

    SweepRow row;
    row.magnitude = magnitude;
    row.alpha_sq = magnitude * magnitude;
    row.nbar = channel.thermal_occupancy;
    row.temperature_kelvin = temperature_kelvin;
    row.seed = config.train.seed;
    row.p_err_classical = classical_codeword_baseline(magnitude, config.info_pulses);

    const auto opt = optimal_povm(states, config.povm_tol, config.povm_max_iter);
    if (!opt.converged) {
        std::ostringstream msg;
        msg << "optimal POVM iteration did not converge in " << opt.iterations
            << " iterations";
        throw NoConvergence(msg.str());
    }
    row.p_err_optimal = opt.p_err;
    row.ykl_residual = opt.ykl_residual;
    row.p_err_pgm = povm_error_prob(states, pretty_good_measurement(states));

    const AnsatzSpec spec{static_cast<int>(codebook.length()), config.layers};
    const auto trained = train(spec, states, config.train);
    row.p_err_vqc = trained.p_err;
    row.train_iterations = trained.outer_iterations;

    if (row.p_err_vqc < row.p_err_optimal - 1e-8 || row.p_err_pgm < row.p_err_optimal - 1e-8) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "measurement error below the optimal bound (optimal " << row.p_err_optimal
            << ", pgm " << row.p_err_pgm << ", vqc " << row.p_err_vqc << ")";
        throw NumericalError(msg.str());
    }
    return row;
}

/**
 * Run every (temperature, magnitude) point. Failing points are reported with
 * their coordinates and skipped; the remaining points still run. Rows are
 * ordered by temperature, then magnitude.
 */
inline SweepReport run_sweep(const SweepConfig &config, SweepOptions options = {}) {
    config.validate();
    const auto codebook = config.load_codebook_source();

    auto temps = config.temperatures_kelvin;
    auto mags = config.magnitudes;
    std::sort(temps.begin(), temps.end());
    std::sort(mags.begin(), mags.end());

    struct Task {
        double temperature;
        double magnitude;
    };
    std::vector<Task> tasks;
    for (double t : temps) {
        for (double m : mags) {
            tasks.push_back({t, m});
        }
    }

    std::vector<std::optional<SweepRow>> rows(tasks.size());
    std::vector<std::optional<PointFailure>> failures(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const auto &task = tasks[i];
            try {
                rows[i] = evaluate_point(config, codebook, task.temperature, task.magnitude);
            } catch (const NumericalError &e) {
                failures[i] = PointFailure{task.temperature, task.magnitude,
                                           FailureKind::numerical, e.what()};
            } catch (const Error &e) {
                failures[i] = PointFailure{task.temperature, task.magnitude,
                                           FailureKind::input, e.what()};
            }
        }
    };

    unsigned jobs = options.jobs == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                      : options.jobs;
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(tasks.size(), 1)));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
    }

    SweepReport report;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (rows[i]) {
            report.rows.push_back(*rows[i]);
        }
        if (failures[i]) {
            report.failures.push_back(*failures[i]);
        }
    }
    return report;
}

} // namespace qjdr
