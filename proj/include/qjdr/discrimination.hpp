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
 * Minimum-error state discrimination: closed-form Helstrom bounds, the
 * square-root ("pretty good") measurement and an iterative optimal POVM
 * solver with a Yuen-Kennedy-Lax optimality certificate.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "codebook.hpp"
#include "error.hpp"
#include "qmath.hpp"

namespace qjdr {

/// Eigenvalues at or below this are treated as kernel when taking operator
/// inverse square roots.
inline constexpr double kSupportCutoff = 1e-12;
inline constexpr double kCompletenessTol = 1e-8;
/// Kernel cutoff for the fixed-point normalizer, relative to its trace. The
/// normalized operator scales as rho^2, so an absolute 1e-12 would discard
/// directions where the states carry weight near 1e-6.
inline constexpr double kIterationRelativeCutoff = 1e-14;

class Povm {
  public:
    explicit Povm(std::vector<ComplexMatrix> elements)
        : elements_(std::move(elements)) {
        if (elements_.empty()) {
            throw InputError("Povm: no elements");
        }
        const auto d = elements_.front().rows();
        ComplexMatrix total = ComplexMatrix::Zero(d, d);
        for (auto &e : elements_) {
            if (e.rows() != d || e.cols() != d) {
                throw DimensionMismatch("Povm: elements differ in dimension");
            }
            if (hermitian_deviation(e) > kHermitianTol) {
                throw InvalidState("Povm: element is not Hermitian");
            }
            e = hermitian_part(e);
            const double lmin = min_eigenvalue(e);
            if (lmin < -kPsdTol) {
                std::ostringstream msg;
                msg << "Povm: element has negative eigenvalue " << lmin;
                throw InvalidState(msg.str());
            }
            total += e;
        }
        const double gap = max_abs_entry(total - ComplexMatrix::Identity(d, d));
        if (gap > kCompletenessTol) {
            std::ostringstream msg;
            msg << "Povm: elements sum to identity only within " << gap;
            throw InvalidState(msg.str());
        }
    }

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(elements_.front().rows());
    }
    [[nodiscard]] std::size_t size() const { return elements_.size(); }
    [[nodiscard]] const std::vector<ComplexMatrix> &elements() const {
        return elements_;
    }
    [[nodiscard]] const ComplexMatrix &operator[](std::size_t i) const {
        return elements_[i];
    }

  private:
    std::vector<ComplexMatrix> elements_;
};

struct DiscriminationResult {
    double p_err = 1.0;
    Povm povm;
    double ykl_residual = 0.0;
    int iterations = 0;
    /// False when the iteration cap was hit while still moving.
    bool converged = true;
    /// Success probability after initialization and after each iteration.
    std::vector<double> success_history;
};

namespace detail {

inline void check_ensemble(const Ensemble &states, const char *who) {
    if (states.size() < 2) {
        throw InputError(std::string(who) + ": need at least two states");
    }
    const auto d = states.front().state.dim();
    for (const auto &s : states) {
        if (s.state.dim() != d) {
            throw DimensionMismatch(std::string(who) +
                                    ": ensemble states differ in dimension");
        }
    }
}

inline std::vector<ComplexMatrix> weighted(const Ensemble &states) {
    std::vector<ComplexMatrix> out;
    out.reserve(states.size());
    for (const auto &s : states) {
        out.push_back(s.prior * s.state.matrix());
    }
    return out;
}

inline double success(const std::vector<ComplexMatrix> &weighted_states,
                      const std::vector<ComplexMatrix> &elements) {
    double total = 0.0;
    for (std::size_t m = 0; m < elements.size(); ++m) {
        total += (elements[m] * weighted_states[m]).trace().real();
    }
    return total;
}

/// Pi_m = X^{-1/2} A_m X^{-1/2} + P_ker / M for X = sum_m A_m. The kernel is
/// eigenvalues <= kSupportCutoff, or <= relative_cutoff * Tr X when given.
///
/// Eigenvalues of X just above the support cutoff leave the sum off the
/// identity by up to ~eps ||X|| / lambda_min, so the elements are conjugated
/// once more by S^{-1/2}, S = sum_m Pi_m ~ I.
inline std::vector<ComplexMatrix>
normalize_to_povm(const std::vector<ComplexMatrix> &parts, double relative_cutoff = 0.0) {
    const auto d = parts.front().rows();
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (const auto &p : parts) {
        total += p;
    }
    const double cutoff = relative_cutoff > 0.0 ? relative_cutoff * total.trace().real()
                                                : kSupportCutoff;
    const auto root = inverse_sqrt_on_support(hermitian_part(total), cutoff);
    const double share = 1.0 / static_cast<double>(parts.size());
    std::vector<ComplexMatrix> out;
    out.reserve(parts.size());
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto &p : parts) {
        out.push_back(hermitian_part(root.inverse_sqrt * p * root.inverse_sqrt +
                                     share * root.kernel_projector));
        sum += out.back();
    }
    const ComplexMatrix polish = inverse_sqrt_on_support(hermitian_part(sum)).inverse_sqrt;
    for (auto &e : out) {
        e = hermitian_part(polish * e * polish);
    }
    return out;
}

} // namespace detail

/// 1 - sum_m p_m Tr(Pi_m rho_m).
inline double povm_error_prob(const Ensemble &states, const Povm &povm) {
    if (states.size() != povm.size()) {
        throw ElementCountMismatch("povm_error_prob: " + std::to_string(povm.size()) +
                                   " elements for " + std::to_string(states.size()) +
                                   " states");
    }
    double succ = 0.0;
    for (std::size_t m = 0; m < states.size(); ++m) {
        if (states[m].state.dim() != povm.dim()) {
            throw DimensionMismatch("povm_error_prob: state and POVM dimensions "
                                    "differ");
        }
        succ += states[m].prior * (povm[m] * states[m].state.matrix()).trace().real();
    }
    const double raw = 1.0 - succ;
    if (raw < -1e-9 || raw > 1.0 + 1e-9) {
        std::ostringstream msg;
        msg << "povm_error_prob: error probability " << raw << " outside [0, 1]";
        throw NumericalError(msg.str());
    }
    return std::clamp(raw, 0.0, 1.0);
}

/// Helstrom bound 1/2 (1 - || p0 rho0 - (1 - p0) rho1 ||_1).
inline double helstrom_binary(const DensityMatrix &rho0, const DensityMatrix &rho1,
                              double p0) {
    if (rho0.dim() != rho1.dim()) {
        throw DimensionMismatch("helstrom_binary: states differ in dimension");
    }
    if (!(p0 >= 0.0 && p0 <= 1.0)) {
        throw InputError("helstrom_binary: prior must be in [0, 1]");
    }
    const ComplexMatrix gamma = p0 * rho0.matrix() - (1.0 - p0) * rho1.matrix();
    return std::clamp(0.5 * (1.0 - trace_norm(gamma)), 0.0, 0.5);
}

/// Equal-prior Helstrom error for the optical BPSK pair |alpha>, |-alpha>.
inline double helstrom_bpsk_optical(double magnitude) {
    if (!(magnitude >= 0.0)) {
        throw InputError("helstrom_bpsk_optical: magnitude must be >= 0");
    }
    // 1 - exp(-4|alpha|^2), accurate for small |alpha|.
    const double one_minus_overlap_sq = -std::expm1(-4.0 * magnitude * magnitude);
    return 0.5 * (1.0 - std::sqrt(one_minus_overlap_sq));
}

/// Codeword error when each of `info_pulses` pulses is decoded independently
/// by an optimal optical receiver.
inline double classical_codeword_baseline(double magnitude, int info_pulses = 2) {
    if (info_pulses < 1) {
        throw InputError("classical_codeword_baseline: info_pulses must be >= 1");
    }
    const double single = helstrom_bpsk_optical(magnitude);
    return 1.0 - std::pow(1.0 - single, info_pulses);
}

/// Square-root measurement; the kernel of sum_m p_m rho_m is split equally.
inline Povm pretty_good_measurement(const Ensemble &states) {
    detail::check_ensemble(states, "pretty_good_measurement");
    const auto parts = detail::weighted(states);
    ComplexMatrix total = ComplexMatrix::Zero(parts.front().rows(), parts.front().cols());
    for (const auto &p : parts) {
        total += p;
    }
    if (max_abs_entry(total) == 0.0) {
        throw DegenerateEnsemble("pretty_good_measurement: weighted states sum "
                                 "to zero");
    }
    return Povm(detail::normalize_to_povm(parts));
}

/// max_m max(0, -lambda_min(Y - p_m rho_m)), Y = Herm(sum_m p_m rho_m Pi_m).
inline double ykl_residual(const Ensemble &states, const Povm &povm) {
    const auto parts = detail::weighted(states);
    const auto d = parts.front().rows();
    ComplexMatrix y = ComplexMatrix::Zero(d, d);
    for (std::size_t m = 0; m < parts.size(); ++m) {
        y += parts[m] * povm[m];
    }
    y = hermitian_part(y);
    double worst = 0.0;
    for (const auto &p : parts) {
        worst = std::max(worst, -min_eigenvalue(y - p));
    }
    return worst;
}

inline constexpr double kDefaultPovmTol = 1e-12;
inline constexpr int kDefaultPovmMaxIter = 10000;

/**
 * Minimum-error POVM by fixed-point iteration.
 *
 * Starting from the square-root measurement, each step replaces
 * Pi_m by L^{-1/2} A_m Pi_m A_m L^{-1/2} with A_m = p_m rho_m and
 * L = sum_m A_m Pi_m A_m. Iteration stops once the success probability
 * moves by less than `tol`. The result is flagged unconverged (not thrown)
 * when `max_iter` is reached with the last step still above 100 * tol.
 */
inline DiscriminationResult optimal_povm(const Ensemble &states,
                                         double tol = kDefaultPovmTol,
                                         int max_iter = kDefaultPovmMaxIter) {
    detail::check_ensemble(states, "optimal_povm");
    if (!(tol > 0.0)) {
        throw InputError("optimal_povm: tol must be > 0");
    }
    const auto parts = detail::weighted(states);
    auto elements = pretty_good_measurement(states).elements();
    double succ = detail::success(parts, elements);
    std::vector<double> history{succ};

    int it = 0;
    double step = 0.0;
    while (it < max_iter) {
        ++it;
        std::vector<ComplexMatrix> next;
        next.reserve(parts.size());
        for (std::size_t m = 0; m < parts.size(); ++m) {
            next.push_back(parts[m] * elements[m] * parts[m]);
        }
        elements = detail::normalize_to_povm(next, kIterationRelativeCutoff);
        const double updated = detail::success(parts, elements);
        history.push_back(updated);
        step = std::abs(updated - succ);
        succ = updated;
        if (step < tol) {
            break;
        }
    }

    Povm povm(std::move(elements));
    const double p_err = povm_error_prob(states, povm);
    const double residual = ykl_residual(states, povm);
    const bool converged = !(it >= max_iter && step > 100.0 * tol);
    return {p_err, std::move(povm), residual, it, converged, std::move(history)};
}

} // namespace qjdr
