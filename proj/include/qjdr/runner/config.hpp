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
 * Sweep configuration and its key-value file format.
 *
 * The file is INI-like: `[section]` headers followed by `key = value` lines;
 * `#` starts a comment. Every key is addressed as `section.key`, which is
 * also the syntax of command-line overrides (`--set receiver.layers=2`).
 * Unknown sections or keys and repeated keys are rejected.
 *
 * Real lists accept comma-separated values or an inclusive range written
 * `start:stop:step`.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../codebook.hpp"
#include "../discrimination.hpp"
#include "../error.hpp"
#include "../transduction.hpp"
#include "../vqc.hpp"

namespace qjdr {

struct SweepConfig {
    std::vector<double> magnitudes;
    std::vector<double> temperatures_kelvin{0.001, 1.0};
    /// Pulses decoded independently by the classical receiver.
    int info_pulses = 2;

    double frequency_hz = 10e9;
    double efficiency = 1.0;
    int fock_cutoff = 30;
    double coupling_time = std::numbers::pi / 2.0;

    int layers = 3;
    TrainConfig train;

    double povm_tol = kDefaultPovmTol;
    int povm_max_iter = kDefaultPovmMaxIter;

    /// Built-in codebook name (`parity_3_2`) or path to a codebook table.
    std::string codebook = "parity_3_2";
    std::string output = "sweep.csv";

    SweepConfig() {
        for (int k = 1; k <= 20; ++k) {
            magnitudes.push_back(k * 5 / 100.0);
        }
    }

    /// Channel parameters at a given temperature.
    [[nodiscard]] TransductionParams channel_at(double temperature_kelvin) const {
        TransductionParams p;
        p.efficiency = efficiency;
        p.thermal_occupancy = nbar_from_temperature(temperature_kelvin, frequency_hz);
        p.fock_cutoff = fock_cutoff;
        p.coupling_time = coupling_time;
        return p;
    }

    [[nodiscard]] Codebook load_codebook_source() const {
        if (codebook == "parity_3_2") {
            return parity_code_3_2();
        }
        return load_codebook(codebook);
    }

    void validate() const {
        if (magnitudes.empty() || temperatures_kelvin.empty()) {
            throw ConfigError("config: magnitude and temperature grids must be "
                              "non-empty");
        }
        for (double m : magnitudes) {
            if (!(m >= 0.0) || !std::isfinite(m)) {
                throw ConfigError("config: magnitudes must be finite and >= 0");
            }
        }
        for (double t : temperatures_kelvin) {
            if (!(t > 0.0) || !std::isfinite(t)) {
                throw ConfigError("config: temperatures must be positive");
            }
        }
        if (!(frequency_hz > 0.0)) {
            throw ConfigError("config: frequency must be positive");
        }
        if (info_pulses < 1) {
            throw ConfigError("config: info_pulses must be >= 1");
        }
        if (povm_max_iter < 1 || !(povm_tol > 0.0)) {
            throw ConfigError("config: povm tol must be > 0 and max_iter >= 1");
        }
        if (layers < 0) {
            throw ConfigError("config: layers must be >= 0");
        }
        try {
            TransductionParams p;
            p.efficiency = efficiency;
            p.fock_cutoff = fock_cutoff;
            p.coupling_time = coupling_time;
            p.validate();
            train.validate();
        } catch (const InputError &e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }
};

namespace detail {

inline std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string &text) {
    const auto t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception &) {
        throw ConfigError("expected a number, got '" + t + "'");
    }
    if (used != t.size() || !std::isfinite(v)) {
        throw ConfigError("expected a number, got '" + t + "'");
    }
    return v;
}

inline long long parse_integer(const std::string &text) {
    const auto t = trim(text);
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &used);
    } catch (const std::exception &) {
        throw ConfigError("expected an integer, got '" + t + "'");
    }
    if (used != t.size()) {
        throw ConfigError("expected an integer, got '" + t + "'");
    }
    return v;
}

inline int parse_int(const std::string &text) {
    const auto v = parse_integer(text);
    if (v < -2147483647LL || v > 2147483647LL) {
        throw ConfigError("integer out of range: '" + trim(text) + "'");
    }
    return static_cast<int>(v);
}

inline std::uint64_t parse_u64(const std::string &text) {
    const auto t = trim(text);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError("expected an unsigned integer, got '" + t + "'");
    }
    try {
        return std::stoull(t);
    } catch (const std::exception &) {
        throw ConfigError("unsigned integer out of range: '" + t + "'");
    }
}

/// Round to 12 significant digits so range points equal their decimal form.
inline double decimal12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::stod(buf);
}

inline std::vector<double> parse_real_list(const std::string &text) {
    const auto t = trim(text);
    std::vector<double> out;
    if (t.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(t);
        std::string part;
        while (std::getline(ss, part, ':')) {
            parts.push_back(part);
        }
        if (parts.size() != 3) {
            throw ConfigError("range must be start:stop:step, got '" + t + "'");
        }
        const double start = parse_real(parts[0]);
        const double stop = parse_real(parts[1]);
        const double step = parse_real(parts[2]);
        if (!(step > 0.0) || stop < start) {
            throw ConfigError("range needs step > 0 and stop >= start: '" + t + "'");
        }
        const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 100000) {
            throw ConfigError("range has too many points: '" + t + "'");
        }
        for (long long k = 0; k < count; ++k) {
            out.push_back(decimal12(start + static_cast<double>(k) * step));
        }
        return out;
    }
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_real(item));
    }
    if (out.empty()) {
        throw ConfigError("empty list");
    }
    return out;
}

inline Optimizer parse_optimizer(const std::string &text) {
    const auto t = trim(text);
    if (t == "gradient_parameter_shift") {
        return Optimizer::gradient_parameter_shift;
    }
    if (t == "spsa") {
        return Optimizer::spsa;
    }
    throw ConfigError("unknown optimizer '" + t +
                      "' (expected gradient_parameter_shift or spsa)");
}

using Setter = std::function<void(SweepConfig &, const std::string &)>;

inline const std::map<std::string, Setter> &config_setters() {
    static const std::map<std::string, Setter> table{
        {"sweep.magnitudes",
         [](SweepConfig &c, const std::string &v) { c.magnitudes = parse_real_list(v); }},
        {"sweep.temperatures_kelvin",
         [](SweepConfig &c, const std::string &v) {
             c.temperatures_kelvin = parse_real_list(v);
         }},
        {"sweep.info_pulses",
         [](SweepConfig &c, const std::string &v) { c.info_pulses = parse_int(v); }},
        {"channel.frequency_hz",
         [](SweepConfig &c, const std::string &v) { c.frequency_hz = parse_real(v); }},
        {"channel.efficiency",
         [](SweepConfig &c, const std::string &v) { c.efficiency = parse_real(v); }},
        {"channel.fock_cutoff",
         [](SweepConfig &c, const std::string &v) { c.fock_cutoff = parse_int(v); }},
        {"channel.coupling_time",
         [](SweepConfig &c, const std::string &v) { c.coupling_time = parse_real(v); }},
        {"receiver.layers",
         [](SweepConfig &c, const std::string &v) { c.layers = parse_int(v); }},
        {"receiver.restarts",
         [](SweepConfig &c, const std::string &v) { c.train.restarts = parse_int(v); }},
        {"receiver.max_outer_iters",
         [](SweepConfig &c, const std::string &v) {
             c.train.max_outer_iters = parse_int(v);
         }},
        {"receiver.inner_steps",
         [](SweepConfig &c, const std::string &v) { c.train.inner_steps = parse_int(v); }},
        {"receiver.optimizer",
         [](SweepConfig &c, const std::string &v) {
             c.train.optimizer = parse_optimizer(v);
         }},
        {"receiver.step_size",
         [](SweepConfig &c, const std::string &v) { c.train.step_size = parse_real(v); }},
        {"receiver.seed",
         [](SweepConfig &c, const std::string &v) { c.train.seed = parse_u64(v); }},
        {"receiver.convergence_tol",
         [](SweepConfig &c, const std::string &v) {
             c.train.convergence_tol = parse_real(v);
         }},
        {"receiver.spsa_perturbation",
         [](SweepConfig &c, const std::string &v) {
             c.train.spsa_perturbation = parse_real(v);
         }},
        {"receiver.spsa_stability",
         [](SweepConfig &c, const std::string &v) {
             c.train.spsa_stability = parse_real(v);
         }},
        {"povm.tol", [](SweepConfig &c, const std::string &v) { c.povm_tol = parse_real(v); }},
        {"povm.max_iter",
         [](SweepConfig &c, const std::string &v) { c.povm_max_iter = parse_int(v); }},
        {"io.codebook",
         [](SweepConfig &c, const std::string &v) { c.codebook = trim(v); }},
        {"io.output", [](SweepConfig &c, const std::string &v) { c.output = trim(v); }},
    };
    return table;
}

} // namespace detail

/// Apply one `section.key` assignment.
inline void set_config_value(SweepConfig &config, const std::string &key,
                             const std::string &value) {
    const auto &setters = detail::config_setters();
    const auto it = setters.find(detail::trim(key));
    if (it == setters.end()) {
        throw ConfigError("unknown config key '" + detail::trim(key) + "'");
    }
    try {
        it->second(config, value);
    } catch (const ConfigError &e) {
        throw ConfigError(it->first + ": " + e.what());
    }
}

/// Apply a `section.key=value` override.
inline void apply_override(SweepConfig &config, const std::string &assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override '" + assignment + "' is not key=value");
    }
    set_config_value(config, assignment.substr(0, eq), assignment.substr(eq + 1));
}

inline void parse_config(std::istream &in, SweepConfig &config,
                         const std::string &source = "<config>") {
    std::string line;
    std::string section;
    std::set<std::string> seen;
    std::size_t lineno = 0;
    auto fail = [&](const std::string &what) {
        throw ConfigError(source + ":" + std::to_string(lineno) + ": " + what);
    };
    std::set<std::string> sections;
    for (const auto &[key, setter] : detail::config_setters()) {
        sections.insert(key.substr(0, key.find('.')));
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                fail("malformed section header");
            }
            section = detail::trim(line.substr(1, line.size() - 2));
            if (sections.count(section) == 0) {
                fail("unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail("expected key = value");
        }
        if (section.empty()) {
            fail("key outside of any section");
        }
        const auto key = section + "." + detail::trim(line.substr(0, eq));
        if (!seen.insert(key).second) {
            fail("duplicate key '" + key + "'");
        }
        try {
            set_config_value(config, key, line.substr(eq + 1));
        } catch (const ConfigError &e) {
            fail(e.what());
        }
    }
}

inline SweepConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    SweepConfig config;
    parse_config(in, config, path);
    return config;
}

} // namespace qjdr
