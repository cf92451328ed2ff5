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
 * Dense complex linear algebra for small quantum operators.
 *
 * Every spectral quantity in the library (trace norms, PSD checks, operator
 * square roots, unitary propagators) is derived from a single Hermitian
 * eigendecomposition. Operators never exceed a few dozen rows, so plain
 * O(n^3) dense routines are used throughout.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"

namespace qjdr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;

inline bool all_finite(const ComplexMatrix &a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (!std::isfinite(a(i, j).real()) ||
                !std::isfinite(a(i, j).imag())) {
                return false;
            }
        }
    }
    return true;
}

/// Largest entry-wise modulus of a - a^dagger.
inline double hermitian_deviation(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        throw DimensionMismatch("hermitian_deviation: matrix is not square");
    }
    double worst = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i <= j; ++i) {
            worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    return worst;
}

inline ComplexMatrix hermitian_part(const ComplexMatrix &a) {
    return 0.5 * (a + a.adjoint());
}

inline double max_abs_entry(const ComplexMatrix &a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

/// Eigenvalues sorted descending; eigenvectors stored as matching columns.
struct EigenSystem {
    RealVector values;
    ComplexMatrix vectors;
};

/**
 * Eigendecomposition of a Hermitian matrix.
 *
 * Each eigenvector is rephased so that its first component with modulus
 * above 1e-10 is real and positive.
 */
inline EigenSystem herm_eig(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        throw DimensionMismatch("herm_eig: matrix is not square");
    }
    if (!all_finite(a)) {
        throw InputError("herm_eig: matrix has non-finite entries");
    }
    const double dev = hermitian_deviation(a);
    if (dev > kHermitianTol) {
        std::ostringstream msg;
        msg << "herm_eig: matrix deviates from Hermitian by " << dev;
        throw NotHermitian(msg.str());
    }
    const auto n = a.rows();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
    if (solver.info() != Eigen::Success) {
        throw NoConvergence("herm_eig: eigensolver did not converge");
    }

    // Eigen returns ascending order.
    EigenSystem out{RealVector(n), ComplexMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = n - 1 - k;
        out.values(k) = solver.eigenvalues()(src);
        ComplexVector v = solver.eigenvectors().col(src);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double mag = std::abs(v(i));
            if (mag > 1e-10) {
                v *= std::conj(v(i)) / mag;
                v(i) = Complex(v(i).real(), 0.0);
                break;
            }
        }
        out.vectors.col(k) = v;
    }
    return out;
}

inline double trace_norm(const ComplexMatrix &a) {
    const auto eig = herm_eig(a);
    return eig.values.cwiseAbs().sum();
}

inline double min_eigenvalue(const ComplexMatrix &a) {
    const auto eig = herm_eig(a);
    return eig.values.size() == 0 ? 0.0 : eig.values(eig.values.size() - 1);
}

/// exp(-i h t) for Hermitian h.
inline ComplexMatrix expm_unitary(const ComplexMatrix &h, double t) {
    const auto eig = herm_eig(h);
    ComplexVector phases(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        phases(k) = std::exp(Complex(0.0, -eig.values(k) * t));
    }
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

/// Pseudo-inverse square root of a PSD operator and the projector onto its
/// numerical kernel (eigenvalues at or below `cutoff`).
struct SupportInverseSqrt {
    ComplexMatrix inverse_sqrt;
    ComplexMatrix kernel_projector;
};

inline SupportInverseSqrt inverse_sqrt_on_support(const ComplexMatrix &s,
                                                  double cutoff = 1e-12) {
    const auto eig = herm_eig(s);
    const auto n = s.rows();
    RealVector scale = RealVector::Zero(n);
    RealVector kernel = RealVector::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (eig.values(k) > cutoff) {
            scale(k) = 1.0 / std::sqrt(eig.values(k));
        } else {
            kernel(k) = 1.0;
        }
    }
    const ComplexMatrix &v = eig.vectors;
    return {v * scale.cast<Complex>().asDiagonal() * v.adjoint(),
            v * kernel.cast<Complex>().asDiagonal() * v.adjoint()};
}

/**
 * Validated density operator.
 *
 * Hermitian and positive semidefinite within 1e-9. The trace must equal
 * 1 - trace_deficit within 1e-9, where a nonzero deficit is only declared
 * by Fock-truncated states.
 */
class DensityMatrix {
  public:
    explicit DensityMatrix(const ComplexMatrix &mat, double trace_deficit = 0.0)
        : deficit_(trace_deficit) {
        if (mat.rows() == 0 || mat.rows() != mat.cols()) {
            throw InvalidState("DensityMatrix: matrix must be square and "
                               "non-empty");
        }
        if (!all_finite(mat)) {
            throw InvalidState("DensityMatrix: non-finite entries");
        }
        const double dev = hermitian_deviation(mat);
        if (dev > kHermitianTol) {
            std::ostringstream msg;
            msg << "DensityMatrix: not Hermitian (deviation " << dev << ")";
            throw InvalidState(msg.str());
        }
        mat_ = hermitian_part(mat);
        const double tr = mat_.trace().real();
        if (std::abs(tr - (1.0 - deficit_)) > kTraceTol) {
            std::ostringstream msg;
            msg.precision(15);
            msg << "DensityMatrix: trace " << tr << " != " << 1.0 - deficit_;
            throw InvalidState(msg.str());
        }
        const double lmin = min_eigenvalue(mat_);
        if (lmin < -kPsdTol) {
            std::ostringstream msg;
            msg << "DensityMatrix: negative eigenvalue " << lmin;
            throw InvalidState(msg.str());
        }
    }

    static DensityMatrix pure(const ComplexVector &psi) {
        const ComplexVector unit = psi / psi.norm();
        return DensityMatrix(unit * unit.adjoint());
    }

    static DensityMatrix maximally_mixed(std::size_t dim) {
        const auto n = static_cast<Eigen::Index>(dim);
        return DensityMatrix(ComplexMatrix::Identity(n, n) /
                             static_cast<double>(dim));
    }

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(mat_.rows());
    }
    [[nodiscard]] const ComplexMatrix &matrix() const { return mat_; }
    [[nodiscard]] double trace_deficit() const { return deficit_; }
    [[nodiscard]] double purity() const {
        return (mat_ * mat_).trace().real();
    }

  private:
    ComplexMatrix mat_;
    double deficit_;
};

/**
 * Reduced operator on the subsystems listed in `keep` (returned in ascending
 * subsystem order). Subsystem 0 is the most significant tensor factor.
 */
inline ComplexMatrix partial_trace(const ComplexMatrix &m,
                                   std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
    const std::size_t total = std::accumulate(
        dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (dims.empty() || std::find(dims.begin(), dims.end(), 0U) != dims.end()) {
        throw DimensionMismatch("partial_trace: subsystem dims must be positive");
    }
    if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != total) {
        throw DimensionMismatch("partial_trace: dims do not multiply to the "
                                "operator dimension");
    }
    if (keep.empty()) {
        throw DimensionMismatch("partial_trace: keep set is empty");
    }
    std::vector<bool> kept(dims.size(), false);
    for (auto k : keep) {
        if (k >= dims.size() || kept[k]) {
            throw DimensionMismatch("partial_trace: invalid or repeated "
                                    "subsystem index in keep set");
        }
        kept[k] = true;
    }

    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t i = dims.size() - 1; i > 0; --i) {
        strides[i - 1] = strides[i] * dims[i];
    }
    // Offsets into the full index for every multi-index of a subsystem group.
    auto offsets = [&](bool want_kept) {
        std::vector<std::size_t> out{0};
        for (std::size_t s = 0; s < dims.size(); ++s) {
            if (kept[s] != want_kept) {
                continue;
            }
            std::vector<std::size_t> next;
            next.reserve(out.size() * dims[s]);
            for (auto base : out) {
                for (std::size_t d = 0; d < dims[s]; ++d) {
                    next.push_back(base + d * strides[s]);
                }
            }
            out = std::move(next);
        }
        return out;
    };
    const auto keep_off = offsets(true);
    const auto trace_off = offsets(false);

    const auto dk = static_cast<Eigen::Index>(keep_off.size());
    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index r = 0; r < dk; ++r) {
        for (Eigen::Index c = 0; c < dk; ++c) {
            Complex acc{0.0, 0.0};
            for (auto t : trace_off) {
                acc += m(static_cast<Eigen::Index>(keep_off[r] + t),
                         static_cast<Eigen::Index>(keep_off[c] + t));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

inline DensityMatrix partial_trace(const DensityMatrix &rho,
                                   std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
    return DensityMatrix(partial_trace(rho.matrix(), dims, keep),
                         rho.trace_deficit());
}

inline DensityMatrix partial_trace(const DensityMatrix &rho,
                                   std::initializer_list<std::size_t> dims,
                                   std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span(dims.begin(), dims.size()),
                         std::span(keep.begin(), keep.size()));
}

namespace pauli {

inline ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

inline ComplexMatrix x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline ComplexMatrix y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

inline ComplexMatrix z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

} // namespace pauli

} // namespace qjdr
