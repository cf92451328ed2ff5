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
 * Variational joint receiver.
 *
 * A hardware-efficient circuit (Ry then Rz on every qubit, followed by L
 * rounds of a CZ ring and another Ry/Rz layer) rotates the codeword states
 * before a computational-basis readout. Outcomes are mapped to codewords by
 * maximum likelihood, and the circuit angles are trained to minimize the
 * resulting error probability.
 *
 * Qubit 0 is the most significant bit of a basis index, matching the tensor
 * order of codeword states.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "codebook.hpp"
#include "error.hpp"
#include "qmath.hpp"

namespace qjdr {

struct AnsatzSpec {
    int num_qubits = 3;
    int num_layers = 3;

    [[nodiscard]] std::size_t parameter_count() const {
        return 2U * static_cast<std::size_t>(num_qubits) *
               static_cast<std::size_t>(num_layers + 1);
    }
    [[nodiscard]] std::size_t dim() const { return std::size_t{1} << num_qubits; }

    void validate() const {
        if (num_qubits < 1 || num_qubits > 10) {
            throw InputError("AnsatzSpec: num_qubits must be in [1, 10]");
        }
        if (num_layers < 0) {
            throw InputError("AnsatzSpec: num_layers must be >= 0");
        }
    }
};

/// Circuit angles in radians: for each rotation layer and qubit, (Ry, Rz).
using ParamVector = std::vector<double>;

namespace detail {

using Gate2 = std::array<Complex, 4>; // row-major 2x2

/// Rz(phi) * Ry(theta).
inline Gate2 ry_then_rz(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex em = std::polar(1.0, -phi / 2.0);
    const Complex ep = std::polar(1.0, phi / 2.0);
    return {em * c, -em * s, ep * s, ep * c};
}

/// u <- G_q u for a single-qubit gate on qubit q of n.
inline void left_apply(ComplexMatrix &u, const Gate2 &g, int q, int n) {
    const auto bit = Eigen::Index{1} << (n - 1 - q);
    const auto d = u.rows();
    for (Eigen::Index i0 = 0; i0 < d; ++i0) {
        if ((i0 & bit) != 0) {
            continue;
        }
        const Eigen::Index i1 = i0 | bit;
        for (Eigen::Index c = 0; c < u.cols(); ++c) {
            const Complex a = u(i0, c);
            const Complex b = u(i1, c);
            u(i0, c) = g[0] * a + g[1] * b;
            u(i1, c) = g[2] * a + g[3] * b;
        }
    }
}

/// Diagonal of the CZ ring: CZ on every distinct pair (i, i+1 mod n).
inline std::vector<double> cz_ring_signs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        const std::pair<int, int> p{std::min(i, j), std::max(i, j)};
        if (p.first != p.second &&
            std::find(pairs.begin(), pairs.end(), p) == pairs.end()) {
            pairs.push_back(p);
        }
    }
    const std::size_t d = std::size_t{1} << n;
    std::vector<double> signs(d, 1.0);
    for (std::size_t idx = 0; idx < d; ++idx) {
        for (auto [a, b] : pairs) {
            const bool ba = ((idx >> (n - 1 - a)) & 1U) != 0;
            const bool bb = ((idx >> (n - 1 - b)) & 1U) != 0;
            if (ba && bb) {
                signs[idx] = -signs[idx];
            }
        }
    }
    return signs;
}

inline void check_params(const AnsatzSpec &spec, std::span<const double> params) {
    spec.validate();
    if (params.size() != spec.parameter_count()) {
        throw ParamLengthMismatch("circuit expects " +
                                  std::to_string(spec.parameter_count()) +
                                  " parameters, got " + std::to_string(params.size()));
    }
    for (double p : params) {
        if (!std::isfinite(p)) {
            throw InputError("circuit parameters must be finite");
        }
    }
}

} // namespace detail

/// The full circuit unitary U.
inline ComplexMatrix circuit_unitary(const AnsatzSpec &spec,
                                     std::span<const double> params) {
    detail::check_params(spec, params);
    const int n = spec.num_qubits;
    const auto d = static_cast<Eigen::Index>(spec.dim());
    const auto signs = detail::cz_ring_signs(n);
    ComplexMatrix u = ComplexMatrix::Identity(d, d);
    std::size_t k = 0;
    for (int layer = 0; layer <= spec.num_layers; ++layer) {
        if (layer > 0) {
            for (Eigen::Index r = 0; r < d; ++r) {
                if (signs[static_cast<std::size_t>(r)] < 0.0) {
                    u.row(r) *= -1.0;
                }
            }
        }
        for (int q = 0; q < n; ++q, k += 2) {
            detail::left_apply(u, detail::ry_then_rz(params[k], params[k + 1]), q, n);
        }
    }
    return u;
}

inline DensityMatrix apply_circuit(const AnsatzSpec &spec,
                                   std::span<const double> params,
                                   const DensityMatrix &rho) {
    spec.validate();
    if (rho.dim() != spec.dim()) {
        throw DimensionMismatch("apply_circuit: state dimension " +
                                std::to_string(rho.dim()) + " != 2^" +
                                std::to_string(spec.num_qubits));
    }
    const ComplexMatrix u = circuit_unitary(spec, params);
    return DensityMatrix(u * rho.matrix() * u.adjoint(), rho.trace_deficit());
}

/// Computational-basis outcome probabilities.
inline std::vector<double> measurement_distribution(const DensityMatrix &rho) {
    const auto d = rho.dim();
    if ((d & (d - 1)) != 0) {
        throw DimensionMismatch("measurement_distribution: dimension is not a "
                                "power of two");
    }
    std::vector<double> p(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double v = rho.matrix()(static_cast<Eigen::Index>(i),
                                      static_cast<Eigen::Index>(i))
                             .real();
        p[i] = std::max(v, 0.0);
    }
    return p;
}

struct Assignment {
    /// Codeword index decided for each measurement outcome.
    std::vector<std::size_t> outcome_to_codeword;
    double p_err = 1.0;
};

/// Maximum-likelihood decision rule; ties go to the lowest codeword index.
inline Assignment ml_assignment(const std::vector<std::vector<double>> &distributions,
                                std::span<const double> priors) {
    if (distributions.size() < 2 || priors.size() != distributions.size()) {
        throw InputError("ml_assignment: need >= 2 distributions with one prior "
                         "each");
    }
    const auto outcomes = distributions.front().size();
    for (const auto &row : distributions) {
        if (row.size() != outcomes) {
            throw DimensionMismatch("ml_assignment: distributions differ in "
                                    "length");
        }
    }
    Assignment out{std::vector<std::size_t>(outcomes, 0), 1.0};
    double hit = 0.0;
    for (std::size_t o = 0; o < outcomes; ++o) {
        std::size_t best = 0;
        double best_val = priors[0] * distributions[0][o];
        for (std::size_t m = 1; m < distributions.size(); ++m) {
            const double v = priors[m] * distributions[m][o];
            if (v > best_val) {
                best_val = v;
                best = m;
            }
        }
        out.outcome_to_codeword[o] = best;
        hit += best_val;
    }
    out.p_err = 1.0 - hit;
    return out;
}

namespace detail {

/// P(o | m) for every codeword state after conjugation by u.
inline std::vector<std::vector<double>> distributions(const ComplexMatrix &u,
                                                      const Ensemble &states) {
    std::vector<std::vector<double>> out;
    out.reserve(states.size());
    const auto d = u.rows();
    for (const auto &s : states) {
        const ComplexMatrix ur = u * s.state.matrix();
        std::vector<double> p(static_cast<std::size_t>(d));
        for (Eigen::Index o = 0; o < d; ++o) {
            const double v = ur.row(o).dot(u.row(o)).real();
            p[static_cast<std::size_t>(o)] = std::max(v, 0.0);
        }
        out.push_back(std::move(p));
    }
    return out;
}

inline std::vector<double> priors_of(const Ensemble &states) {
    std::vector<double> p;
    p.reserve(states.size());
    for (const auto &s : states) {
        p.push_back(s.prior);
    }
    return p;
}

inline void check_ensemble_dim(const AnsatzSpec &spec, const Ensemble &states) {
    if (states.size() < 2) {
        throw InputError("variational receiver needs at least two states");
    }
    for (const auto &s : states) {
        if (s.state.dim() != spec.dim()) {
            throw DimensionMismatch("ensemble state dimension does not match "
                                    "the circuit");
        }
    }
}

inline double fixed_assignment_error(const std::vector<std::vector<double>> &dists,
                                     std::span<const double> priors,
                                     std::span<const std::size_t> assignment) {
    double hit = 0.0;
    for (std::size_t o = 0; o < assignment.size(); ++o) {
        const auto m = assignment[o];
        hit += priors[m] * dists[m][o];
    }
    return 1.0 - hit;
}

/// Error of a frozen decision rule, without input validation.
inline double fixed_loss(const AnsatzSpec &spec, std::span<const double> params,
                         const Ensemble &states, std::span<const double> priors,
                         std::span<const std::size_t> assignment) {
    return fixed_assignment_error(distributions(circuit_unitary(spec, params), states),
                                  priors, assignment);
}

inline Assignment ml_for(const AnsatzSpec &spec, std::span<const double> params,
                         const Ensemble &states, std::span<const double> priors) {
    return ml_assignment(distributions(circuit_unitary(spec, params), states), priors);
}

} // namespace detail

/// Error probability of the circuit followed by the ML decision rule.
inline double loss_p_err(const AnsatzSpec &spec, std::span<const double> params,
                         const Ensemble &states) {
    detail::check_ensemble_dim(spec, states);
    const auto priors = detail::priors_of(states);
    return detail::ml_for(spec, params, states, priors).p_err;
}

/// Current ML decision rule for the circuit.
inline Assignment circuit_assignment(const AnsatzSpec &spec,
                                     std::span<const double> params,
                                     const Ensemble &states) {
    detail::check_ensemble_dim(spec, states);
    const auto priors = detail::priors_of(states);
    return detail::ml_for(spec, params, states, priors);
}

/// Error probability of the circuit under a fixed outcome-to-codeword map.
inline double fixed_assignment_loss(const AnsatzSpec &spec,
                                    std::span<const double> params,
                                    const Ensemble &states,
                                    std::span<const std::size_t> assignment) {
    detail::check_ensemble_dim(spec, states);
    detail::check_params(spec, params);
    if (assignment.size() != spec.dim()) {
        throw DimensionMismatch("assignment must cover every outcome");
    }
    for (auto m : assignment) {
        if (m >= states.size()) {
            throw IndexOutOfRange("assignment refers to a missing codeword");
        }
    }
    const auto priors = detail::priors_of(states);
    return detail::fixed_loss(spec, params, states, priors, assignment);
}

/// Parameter-shift gradient of the fixed-assignment error probability.
inline std::vector<double> parameter_shift_grad(const AnsatzSpec &spec,
                                                std::span<const double> params,
                                                const Ensemble &states,
                                                std::span<const std::size_t> assignment) {
    // Validates everything once.
    (void)fixed_assignment_loss(spec, params, states, assignment);
    const auto priors = detail::priors_of(states);
    constexpr double shift = std::numbers::pi / 2.0;
    ParamVector shifted(params.begin(), params.end());
    std::vector<double> grad(params.size());
    for (std::size_t j = 0; j < params.size(); ++j) {
        shifted[j] = params[j] + shift;
        const double plus = detail::fixed_loss(spec, shifted, states, priors, assignment);
        shifted[j] = params[j] - shift;
        const double minus = detail::fixed_loss(spec, shifted, states, priors, assignment);
        shifted[j] = params[j];
        grad[j] = 0.5 * (plus - minus);
    }
    return grad;
}

enum class Optimizer { gradient_parameter_shift, spsa };

struct TrainConfig {
    int restarts = 8;
    int max_outer_iters = 200;
    /// Optimizer steps taken per outer iteration with the assignment frozen.
    int inner_steps = 10;
    Optimizer optimizer = Optimizer::gradient_parameter_shift;
    /// Gradient-descent learning rate, or SPSA gain a.
    double step_size = 0.1;
    std::uint64_t seed = 0;
    double convergence_tol = 1e-7;
    double spsa_perturbation = 0.1; ///< SPSA c
    double spsa_stability = 10.0;   ///< SPSA A
    double spsa_alpha = 0.602;
    double spsa_gamma = 0.101;

    void validate() const {
        if (restarts < 1) {
            throw InputError("TrainConfig: restarts must be >= 1");
        }
        if (max_outer_iters < 0 || inner_steps < 1) {
            throw InputError("TrainConfig: max_outer_iters must be >= 0 and "
                             "inner_steps >= 1");
        }
        if (!(step_size > 0.0) || !(convergence_tol > 0.0) ||
            !(spsa_perturbation > 0.0) || !(spsa_stability >= 0.0)) {
            throw InputError("TrainConfig: step sizes and tolerances must be "
                             "positive");
        }
    }
};

struct TrajectoryPoint {
    int outer_iter;
    double best_p_err;
};

struct TrainResult {
    ParamVector best_params;
    double p_err = 1.0;
    /// Best-so-far error of the winning restart, one point per outer iteration
    /// (iteration 0 is the random initialization).
    std::vector<TrajectoryPoint> trajectory;
    Assignment assignment;
    int best_restart = 0;
    /// Outer iterations run by the winning restart.
    int outer_iterations = 0;
    /// Final best error of every restart, in restart order.
    std::vector<double> restart_p_err;
};

/**
 * Deterministic random stream for one restart.
 *
 * Both mt19937_64 and seed_seq are fully specified by the standard, and
 * doubles are formed from the top 53 bits, so streams agree across platforms.
 */
class RestartStream {
  public:
    RestartStream(std::uint64_t seed, int restart) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffU),
                          static_cast<std::uint32_t>(seed >> 32U),
                          static_cast<std::uint32_t>(restart)};
        engine_.seed(seq);
    }

    double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }
    double sign() { return (engine_() >> 63U) != 0 ? 1.0 : -1.0; }

  private:
    std::mt19937_64 engine_;
};

namespace detail {

struct RestartOutcome {
    ParamVector best_params;
    double best = 1.0;
    std::vector<TrajectoryPoint> trajectory;
    int outer_iterations = 0;
};

inline RestartOutcome train_restart(const AnsatzSpec &spec, const Ensemble &states,
                                    std::span<const double> priors,
                                    const TrainConfig &config, int restart) {
    RestartStream rng(config.seed, restart);
    ParamVector params(spec.parameter_count());
    for (double &p : params) {
        p = 2.0 * std::numbers::pi * rng.uniform();
    }

    RestartOutcome out;
    out.best = ml_for(spec, params, states, priors).p_err;
    out.best_params = params;
    out.trajectory.push_back({0, out.best});

    double previous = out.best;
    long spsa_k = 0;
    ParamVector delta(params.size());
    ParamVector probe(params.size());
    for (int outer = 1; outer <= config.max_outer_iters; ++outer) {
        const auto assignment = ml_for(spec, params, states, priors).outcome_to_codeword;
        for (int step = 0; step < config.inner_steps; ++step) {
            if (config.optimizer == Optimizer::gradient_parameter_shift) {
                const auto grad = parameter_shift_grad(spec, params, states, assignment);
                for (std::size_t j = 0; j < params.size(); ++j) {
                    params[j] -= config.step_size * grad[j];
                }
                continue;
            }
            const double kk = static_cast<double>(spsa_k++);
            const double ak = config.step_size /
                              std::pow(kk + 1.0 + config.spsa_stability, config.spsa_alpha);
            const double ck = config.spsa_perturbation / std::pow(kk + 1.0, config.spsa_gamma);
            for (double &d : delta) {
                d = rng.sign();
            }
            for (std::size_t j = 0; j < params.size(); ++j) {
                probe[j] = params[j] + ck * delta[j];
            }
            const double plus = fixed_loss(spec, probe, states, priors, assignment);
            for (std::size_t j = 0; j < params.size(); ++j) {
                probe[j] = params[j] - ck * delta[j];
            }
            const double minus = fixed_loss(spec, probe, states, priors, assignment);
            const double slope = (plus - minus) / (2.0 * ck);
            for (std::size_t j = 0; j < params.size(); ++j) {
                params[j] -= ak * slope * delta[j];
            }
        }
        const double loss = ml_for(spec, params, states, priors).p_err;
        if (loss < out.best) {
            out.best = loss;
            out.best_params = params;
        }
        out.trajectory.push_back({outer, out.best});
        out.outer_iterations = outer;
        if (previous - loss < config.convergence_tol) {
            break;
        }
        previous = loss;
    }
    return out;
}

} // namespace detail

/**
 * Train the receiver from `config.restarts` random starts and keep the best.
 *
 * Each outer iteration refreshes the ML assignment and then takes
 * `inner_steps` optimizer steps on the error with that assignment frozen.
 * A restart ends when an outer iteration improves the error by less than
 * `convergence_tol`. The result depends only on the inputs.
 */
inline TrainResult train(const AnsatzSpec &spec, const Ensemble &states,
                         const TrainConfig &config) {
    spec.validate();
    config.validate();
    detail::check_ensemble_dim(spec, states);
    const auto priors = detail::priors_of(states);

    TrainResult result;
    for (int r = 0; r < config.restarts; ++r) {
        auto run = detail::train_restart(spec, states, priors, config, r);
        result.restart_p_err.push_back(run.best);
        if (r == 0 || run.best < result.p_err) {
            result.p_err = run.best;
            result.best_params = std::move(run.best_params);
            result.trajectory = std::move(run.trajectory);
            result.best_restart = r;
            result.outer_iterations = run.outer_iterations;
        }
    }
    result.assignment = detail::ml_for(spec, result.best_params, states, priors);
    return result;
}

} // namespace qjdr
