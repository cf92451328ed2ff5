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
 * BPSK codebooks and joint codeword states.
 *
 * A codebook holds M distinct phase patterns of n pulses each. Codeword
 * states are tensor products of independently transduced pulses, with
 * pulse 0 as the most significant qubit.
 */

#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "qmath.hpp"
#include "transduction.hpp"

namespace qjdr {

struct WeightedState {
    double prior;
    DensityMatrix state;
};

using Ensemble = std::vector<WeightedState>;

class Codebook {
  public:
    Codebook(std::vector<std::vector<double>> phases, std::vector<double> priors)
        : phases_(std::move(phases)), priors_(std::move(priors)) {
        if (phases_.size() < 2) {
            throw InputError("Codebook: need at least two codewords");
        }
        const auto n = phases_.front().size();
        if (n == 0) {
            throw InputError("Codebook: codewords must have at least one pulse");
        }
        for (const auto &row : phases_) {
            if (row.size() != n) {
                throw InputError("Codebook: codewords have unequal lengths");
            }
        }
        if (std::set(phases_.begin(), phases_.end()).size() != phases_.size()) {
            throw InputError("Codebook: codewords are not distinct");
        }
        if (priors_.size() != phases_.size()) {
            throw InputError("Codebook: prior count differs from codeword count");
        }
        double total = 0.0;
        for (double p : priors_) {
            if (!(p >= 0.0) || !std::isfinite(p)) {
                throw InputError("Codebook: priors must be finite and >= 0");
            }
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw InputError("Codebook: priors do not sum to 1");
        }
    }

    /// Uniform priors.
    explicit Codebook(std::vector<std::vector<double>> phases)
        : Codebook(phases, std::vector<double>(phases.size(),
                                               1.0 / static_cast<double>(
                                                         phases.size()))) {}

    [[nodiscard]] std::size_t num_codewords() const { return phases_.size(); }
    [[nodiscard]] std::size_t length() const { return phases_.front().size(); }
    [[nodiscard]] const std::vector<std::vector<double>> &phases() const {
        return phases_;
    }
    [[nodiscard]] const std::vector<double> &priors() const { return priors_; }

    /// Same codebook with pulse slots reordered: slot i of the result is
    /// slot order[i] of this one.
    [[nodiscard]] Codebook permuted(const std::vector<std::size_t> &order) const {
        if (order.size() != length() ||
            std::set(order.begin(), order.end()).size() != order.size() ||
            *std::max_element(order.begin(), order.end()) >= length()) {
            throw InputError("Codebook::permuted: not a permutation of slots");
        }
        auto rows = phases_;
        for (std::size_t m = 0; m < rows.size(); ++m) {
            for (std::size_t i = 0; i < order.size(); ++i) {
                rows[m][i] = phases_[m][order[i]];
            }
        }
        return Codebook(std::move(rows), priors_);
    }

  private:
    std::vector<std::vector<double>> phases_;
    std::vector<double> priors_;
};

/// The [3,2] even-parity code on BPSK phases, uniform priors.
inline Codebook parity_code_3_2() {
    constexpr double pi = std::numbers::pi;
    return Codebook({{0.0, 0.0, 0.0}, {0.0, pi, pi}, {pi, 0.0, pi}, {pi, pi, 0.0}});
}

/**
 * Parse a codebook table.
 *
 * One codeword per line written with `+` (phase 0) and `-` (phase pi),
 * optionally separated by spaces, followed by an optional prior. Either every
 * line carries a prior or none does. Priors summing to 1 within 1e-6 are
 * renormalized. Blank lines and `#` comments are skipped.
 */
inline Codebook parse_codebook(std::istream &in, const std::string &source = "<input>") {
    std::vector<std::vector<double>> rows;
    std::vector<double> priors;
    std::size_t with_prior = 0;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string &what) {
        std::ostringstream msg;
        msg << source << ":" << lineno << ": " << what;
        throw ParseError(msg.str());
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream tokens(line);
        std::string tok;
        std::vector<double> row;
        bool have_prior = false;
        double prior = 0.0;
        while (tokens >> tok) {
            if (have_prior) {
                fail("unexpected token '" + tok + "' after prior");
            }
            if (tok.find_first_not_of("+-") == std::string::npos) {
                for (char c : tok) {
                    row.push_back(c == '+' ? 0.0 : std::numbers::pi);
                }
                continue;
            }
            std::size_t used = 0;
            try {
                prior = std::stod(tok, &used);
            } catch (const std::exception &) {
                fail("cannot parse token '" + tok + "'");
            }
            if (used != tok.size()) {
                fail("cannot parse token '" + tok + "'");
            }
            if (row.empty()) {
                fail("prior given before any phase symbol");
            }
            have_prior = true;
        }
        if (row.empty()) {
            continue;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            fail("codeword length " + std::to_string(row.size()) +
                 " differs from first codeword length " +
                 std::to_string(rows.front().size()));
        }
        if (have_prior && !(prior >= 0.0)) {
            fail("prior must be non-negative");
        }
        if (std::find(rows.begin(), rows.end(), row) != rows.end()) {
            fail("duplicate codeword");
        }
        rows.push_back(std::move(row));
        priors.push_back(prior);
        with_prior += have_prior ? 1 : 0;
    }
    if (rows.size() < 2) {
        std::ostringstream msg;
        msg << source << ": need at least two codewords, found " << rows.size();
        throw ParseError(msg.str());
    }
    if (with_prior == 0) {
        return Codebook(std::move(rows));
    }
    if (with_prior != rows.size()) {
        throw ParseError(source + ": priors must be given on every line or none");
    }
    double total = 0.0;
    for (double p : priors) {
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << source << ": priors sum to " << total << ", expected 1";
        throw ParseError(msg.str());
    }
    for (double &p : priors) {
        p /= total;
    }
    return Codebook(std::move(rows), std::move(priors));
}

inline Codebook load_codebook(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open codebook file '" + path + "'");
    }
    return parse_codebook(in, path);
}

namespace detail {

using PulseCache = std::map<double, ComplexMatrix>;

inline DensityMatrix joint_pulse_state(const std::vector<double> &phases,
                                       double magnitude,
                                       const TransductionParams &params,
                                       PulseCache &cache) {
    ComplexMatrix joint = ComplexMatrix::Identity(1, 1);
    for (double phase : phases) {
        auto it = cache.find(phase);
        if (it == cache.end()) {
            auto qubit = transduce_pulse(CoherentPulse(magnitude, phase), params);
            it = cache.emplace(phase, qubit.matrix()).first;
        }
        joint = kron(joint, it->second);
    }
    return DensityMatrix(joint);
}

} // namespace detail

/// Tensor product of transduced pulses for codeword `index`.
inline DensityMatrix codeword_state(const Codebook &codebook, std::size_t index,
                                    double magnitude,
                                    const TransductionParams &params) {
    if (index >= codebook.num_codewords()) {
        throw IndexOutOfRange("codeword_state: index " + std::to_string(index) +
                              " out of range for " +
                              std::to_string(codebook.num_codewords()) +
                              " codewords");
    }
    detail::PulseCache cache;
    return detail::joint_pulse_state(codebook.phases()[index], magnitude, params,
                                     cache);
}

/// All codeword states with their priors, in codebook order.
inline Ensemble ensemble(const Codebook &codebook, double magnitude,
                         const TransductionParams &params) {
    // BPSK codebooks repeat only two phases; share transduced pulses.
    detail::PulseCache cache;
    Ensemble out;
    out.reserve(codebook.num_codewords());
    for (std::size_t m = 0; m < codebook.num_codewords(); ++m) {
        out.push_back({codebook.priors()[m],
                       detail::joint_pulse_state(codebook.phases()[m], magnitude,
                                                 params, cache)});
    }
    return out;
}

} // namespace qjdr
