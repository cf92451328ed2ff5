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
 * Optical pulse to qubit channel.
 *
 * A received coherent pulse is attenuated (amplitude scaled by sqrt(eta)),
 * mixed with thermal noise of occupancy nbar to form a displaced thermal
 * microwave state, and written into a ground-state qubit through a resonant
 * Jaynes-Cummings exchange a sigma_+ + a^dagger sigma_- of duration gt.
 * The field is then traced out.
 *
 * Qubit basis: index 0 is the ground state |g>, index 1 the excited state.
 * With this ordering the Bloch azimuth of the output equals the pulse phase
 * minus pi/2.
 */

#pragma once

#include <cmath>
#include <numbers>
#include <sstream>

#include "error.hpp"
#include "qmath.hpp"

namespace qjdr {

inline constexpr double kPlanck = 6.62607015e-34;
inline constexpr double kBoltzmann = 1.380649e-23;

struct CoherentPulse {
    double magnitude = 0.0; ///< |alpha|
    double phase = 0.0;     ///< theta, normalized to [0, 2 pi)

    CoherentPulse() = default;
    CoherentPulse(double magnitude_, double phase_)
        : magnitude(magnitude_), phase(normalize(phase_)) {
        if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) {
            throw InputError("CoherentPulse: magnitude must be finite and >= 0");
        }
    }

    [[nodiscard]] Complex amplitude() const {
        return std::polar(magnitude, phase);
    }

  private:
    static double normalize(double theta) {
        if (!std::isfinite(theta)) {
            throw InputError("CoherentPulse: phase must be finite");
        }
        constexpr double two_pi = 2.0 * std::numbers::pi;
        double r = std::fmod(theta, two_pi);
        if (r < 0.0) {
            r += two_pi;
        }
        return r >= two_pi ? 0.0 : r;
    }
};

struct TransductionParams {
    double efficiency = 1.0;        ///< eta in [0, 1]
    double thermal_occupancy = 0.0; ///< nbar >= 0
    int fock_cutoff = 30;           ///< N_max >= 2
    double coupling_time = std::numbers::pi / 2.0; ///< g t > 0

    void validate() const {
        if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
            throw InputError("TransductionParams: efficiency must be in [0, 1]");
        }
        if (!(thermal_occupancy >= 0.0) || !std::isfinite(thermal_occupancy)) {
            throw InputError("TransductionParams: thermal occupancy must be "
                             "finite and >= 0");
        }
        if (fock_cutoff < 2) {
            throw InputError("TransductionParams: Fock cutoff must be >= 2");
        }
        if (!(coupling_time > 0.0) || !std::isfinite(coupling_time)) {
            throw InputError("TransductionParams: coupling time must be > 0");
        }
    }
};

/// Bose-Einstein occupancy of a mode at frequency `frequency_hz`.
inline double nbar_from_temperature(double temperature_kelvin,
                                    double frequency_hz) {
    if (!(temperature_kelvin > 0.0) || !(frequency_hz > 0.0)) {
        throw InputError("nbar_from_temperature: temperature and frequency "
                         "must be positive");
    }
    const double x = kPlanck * frequency_hz / (kBoltzmann * temperature_kelvin);
    return 1.0 / std::expm1(x);
}

inline constexpr double kThermalDeficitLimit = 1e-6;

/// Diagonal thermal state truncated at `n_max`. The discarded tail is
/// recorded as the state's trace deficit.
inline DensityMatrix thermal_state(double nbar, int n_max) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw InputError("thermal_state: nbar must be finite and >= 0");
    }
    if (n_max < 0) {
        throw InputError("thermal_state: n_max must be >= 0");
    }
    const double ratio = nbar / (1.0 + nbar);
    const double deficit = std::pow(ratio, n_max + 1);
    if (deficit >= kThermalDeficitLimit) {
        std::ostringstream msg;
        msg << "thermal_state: cutoff " << n_max << " leaves tail weight "
            << deficit << " at nbar " << nbar;
        throw CutoffTooSmall(msg.str());
    }
    const auto dim = static_cast<Eigen::Index>(n_max + 1);
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    double pn = 1.0 / (1.0 + nbar);
    for (Eigen::Index n = 0; n < dim; ++n) {
        rho(n, n) = pn;
        pn *= ratio;
    }
    return DensityMatrix(rho, deficit);
}

/// Truncated annihilation operator on n_max + 1 Fock levels.
inline ComplexMatrix annihilation(int n_max) {
    const auto dim = static_cast<Eigen::Index>(n_max + 1);
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

/// exp(beta a^dagger - beta^* a) on the truncated Fock space, requiring
/// |beta|^2 <= n_max / 4.
inline ComplexMatrix displacement_operator(Complex beta, int n_max) {
    if (n_max < 1) {
        throw InputError("displacement_operator: n_max must be >= 1");
    }
    if (std::norm(beta) > n_max / 4.0) {
        std::ostringstream msg;
        msg << "displacement_operator: |beta|^2 = " << std::norm(beta)
            << " exceeds n_max/4 = " << n_max / 4.0;
        throw TruncationRisk(msg.str());
    }
    const ComplexMatrix a = annihilation(n_max);
    const ComplexMatrix generator =
        Complex(0.0, 1.0) * (beta * a.adjoint() - std::conj(beta) * a);
    return expm_unitary(generator, 1.0);
}

/// H = a sigma_+ + a^dagger sigma_- on field (x) qubit, g = 1.
inline ComplexMatrix jaynes_cummings_hamiltonian(int n_max) {
    const ComplexMatrix a = annihilation(n_max);
    ComplexMatrix raise = ComplexMatrix::Zero(2, 2);
    raise(1, 0) = 1.0;
    return kron(a, raise) + kron(a.adjoint(), raise.adjoint());
}

/// Field state after attenuation and heating: D(beta) rho_th D(beta)^dagger.
inline DensityMatrix received_field_state(const CoherentPulse &pulse,
                                          const TransductionParams &params) {
    params.validate();
    const Complex beta =
        std::polar(std::sqrt(params.efficiency) * pulse.magnitude, pulse.phase);
    const auto thermal =
        thermal_state(params.thermal_occupancy, params.fock_cutoff);
    const ComplexMatrix d = displacement_operator(beta, params.fock_cutoff);
    return DensityMatrix(d * thermal.matrix() * d.adjoint(),
                         thermal.trace_deficit());
}

/**
 * Qubit state produced by transducing one pulse.
 *
 * The reduced qubit operator is renormalized by its trace so the returned
 * state is exactly unit trace; the discarded thermal tail is below 1e-6.
 */
inline DensityMatrix transduce_pulse(const CoherentPulse &pulse,
                                     const TransductionParams &params) {
    const auto field = received_field_state(pulse, params);
    ComplexMatrix ground = ComplexMatrix::Zero(2, 2);
    ground(0, 0) = 1.0;
    const ComplexMatrix joint = kron(field.matrix(), ground);
    const ComplexMatrix u = expm_unitary(
        jaynes_cummings_hamiltonian(params.fock_cutoff), params.coupling_time);
    const ComplexMatrix evolved = u * joint * u.adjoint();

    const std::vector<std::size_t> dims{
        static_cast<std::size_t>(params.fock_cutoff + 1), 2};
    const std::vector<std::size_t> keep{1};
    const ComplexMatrix qubit = partial_trace(evolved, dims, keep);
    return DensityMatrix(hermitian_part(qubit) / qubit.trace().real());
}

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    [[nodiscard]] double transverse_length() const { return std::hypot(x, y); }
    [[nodiscard]] double azimuth() const { return std::atan2(y, x); }
    [[nodiscard]] double length() const { return std::sqrt(x * x + y * y + z * z); }
};

inline BlochVector bloch_vector(const DensityMatrix &rho) {
    if (rho.dim() != 2) {
        throw DimensionMismatch("bloch_vector: state is not a qubit");
    }
    const ComplexMatrix &m = rho.matrix();
    return {(m * pauli::x()).trace().real(), (m * pauli::y()).trace().real(),
            (m * pauli::z()).trace().real()};
}

} // namespace qjdr
