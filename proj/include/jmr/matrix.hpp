// Copyright 2026 The jmr Authors

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
 * Dense square complex matrices. Every operator in the library (Clifford
 * generators, POVM elements, joint POVM elements) is a ComplexMatrix.
 *
 * Dimensions here are tiny (a few dozen at most), so storage is a flat
 * row-major std::vector and arithmetic is written out directly. The only
 * non-trivial numerical kernel, the Hermitian eigensolver, is delegated to
 * Eigen.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "jmr/error.hpp"

namespace jmr {

using Complex = std::complex<double>;

/// Numerical thresholds used throughout. All must be strictly positive.
struct Tolerance {
    double eq_tol = 1e-10;   ///< entrywise equality
    double psd_tol = 1e-9;   ///< tolerated eigenvalue negativity
    double feas_tol = 1e-7;  ///< feasibility / marginal residual

    [[nodiscard]] bool valid() const {
        return eq_tol > 0.0 && psd_tol > 0.0 && feas_tol > 0.0;
    }
};

class ComplexMatrix {
  public:
    ComplexMatrix() : ComplexMatrix(1) {}

    /// Zero matrix of the given dimension.
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
        if (dim == 0) {
            throw DimensionError("matrix dimension must be positive");
        }
    }

    ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
        : dim_(dim), data_(std::move(entries)) {
        if (dim == 0) {
            throw DimensionError("matrix dimension must be positive");
        }
        if (data_.size() != dim * dim) {
            throw DimensionError("entry count " + std::to_string(data_.size()) +
                                 " does not match dim^2 = " +
                                 std::to_string(dim * dim));
        }
        for (const auto &z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw DomainError("matrix entries must be finite");
            }
        }
    }

    /// Row-major nested initializer, mostly for tests and fixed constants.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : ComplexMatrix(rows.size()) {
        std::size_t i = 0;
        for (const auto &row : rows) {
            if (row.size() != dim_) {
                throw DimensionError("matrix literal is not square");
            }
            std::copy(row.begin(), row.end(), data_.begin() + i * dim_);
            ++i;
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }

    static ComplexMatrix diagonal(std::span<const double> diag) {
        ComplexMatrix m(diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) {
            m(i, i) = diag[i];
        }
        return m;
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] std::span<const Complex> entries() const { return data_; }

    Complex &operator()(std::size_t i, std::size_t j) {
        return data_[i * dim_ + j];
    }
    const Complex &operator()(std::size_t i, std::size_t j) const {
        return data_[i * dim_ + j];
    }

    [[nodiscard]] ComplexMatrix adjoint() const {
        ComplexMatrix out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                out(j, i) = std::conj((*this)(i, j));
            }
        }
        return out;
    }

    [[nodiscard]] Complex trace() const {
        Complex t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    /// Largest entrywise modulus.
    [[nodiscard]] double max_abs() const {
        double m = 0.0;
        for (const auto &z : data_) {
            m = std::max(m, std::abs(z));
        }
        return m;
    }

    [[nodiscard]] double frobenius_norm() const {
        double s = 0.0;
        for (const auto &z : data_) {
            s += std::norm(z);
        }
        return std::sqrt(s);
    }

    /// max |m - m^dagger| entrywise.
    [[nodiscard]] double hermiticity_residual() const {
        double r = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = i; j < dim_; ++j) {
                r = std::max(r, std::abs((*this)(i, j) -
                                         std::conj((*this)(j, i))));
            }
        }
        return r;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &o) {
        require_same_dim(o, "add");
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += o.data_[k];
        }
        return *this;
    }
    ComplexMatrix &operator-=(const ComplexMatrix &o) {
        require_same_dim(o, "sub");
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }
    ComplexMatrix &operator*=(Complex s) {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

  private:
    void require_same_dim(const ComplexMatrix &o, const char *op) const {
        if (o.dim_ != dim_) {
            throw DimensionError(std::string(op) + ": dimension mismatch (" +
                                 std::to_string(dim_) + " vs " +
                                 std::to_string(o.dim_) + ")");
        }
    }

    std::size_t dim_;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    return a += b;
}
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    return a -= b;
}
inline ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
inline ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
inline ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("matmul: dimension mismatch (" +
                             std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()) + ")");
    }
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b) { return a + b; }
inline ComplexMatrix sub(const ComplexMatrix &a, const ComplexMatrix &b) { return a - b; }
inline ComplexMatrix scale(const ComplexMatrix &a, Complex s) { return a * s; }
inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) { return a * b; }

/// max |a - b| entrywise; throws on dimension mismatch.
inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).max_abs();
}

inline bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b,
                         double tol) {
    return a.dim() == b.dim() && max_abs_diff(a, b) <= tol;
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) {
                    out(i * nb + k, j * nb + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Block-diagonal matrix with the given blocks in order.
inline ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks) {
    if (blocks.empty()) {
        throw DimensionError("direct_sum: empty block list");
    }
    std::size_t total = 0;
    for (const auto &b : blocks) {
        total += b.dim();
    }
    ComplexMatrix out(total);
    std::size_t offset = 0;
    for (const auto &b : blocks) {
        for (std::size_t i = 0; i < b.dim(); ++i) {
            for (std::size_t j = 0; j < b.dim(); ++j) {
                out(offset + i, offset + j) = b(i, j);
            }
        }
        offset += b.dim();
    }
    return out;
}

inline ComplexMatrix direct_sum(std::initializer_list<ComplexMatrix> blocks) {
    return direct_sum(std::span<const ComplexMatrix>(blocks.begin(), blocks.size()));
}

/// The square sub-block starting at (offset, offset).
inline ComplexMatrix diagonal_block(const ComplexMatrix &m, std::size_t offset,
                                    std::size_t dim) {
    if (offset + dim > m.dim()) {
        throw DimensionError("diagonal_block: block exceeds matrix");
    }
    ComplexMatrix out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            out(i, j) = m(offset + i, offset + j);
        }
    }
    return out;
}

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix &m) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXcd e(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            e(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    return e;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd &e) {
    ComplexMatrix m(static_cast<std::size_t>(e.rows()));
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
        for (Eigen::Index j = 0; j < e.cols(); ++j) {
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
        }
    }
    return m;
}

inline void require_hermitian(const ComplexMatrix &m, double tol, const char *op) {
    const double r = m.hermiticity_residual();
    if (r > tol) {
        throw DomainError(std::string(op) + ": matrix is not Hermitian (residual " +
                          std::to_string(r) + ")");
    }
}

inline bool is_real_diagonal(const ComplexMatrix &m) {
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            const Complex z = m(i, j);
            if ((i != j && z != Complex{}) || (i == j && z.imag() != 0.0)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

/// Spectrum of a Hermitian matrix, ascending. Real-diagonal input is
/// returned as its sorted diagonal without going through the solver.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m,
                                                 const Tolerance &tol = {}) {
    detail::require_hermitian(m, tol.eq_tol, "hermitian_eigenvalues");
    std::vector<double> out(m.dim());
    if (detail::is_real_diagonal(m)) {
        for (std::size_t i = 0; i < m.dim(); ++i) {
            out[i] = m(i, i).real();
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        detail::to_eigen(m), Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        out[static_cast<std::size_t>(i)] = ev(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline double min_eigenvalue(const ComplexMatrix &m, const Tolerance &tol = {}) {
    return hermitian_eigenvalues(m, tol).front();
}

inline bool is_psd(const ComplexMatrix &m, const Tolerance &tol = {}) {
    return min_eigenvalue(m, tol) >= -tol.psd_tol;
}

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
/// The input is Hermitized first; it is expected to be Hermitian up to
/// rounding.
inline ComplexMatrix project_psd(const ComplexMatrix &m) {
    Eigen::MatrixXcd e = detail::to_eigen(m);
    e = 0.5 * (e + e.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e);
    Eigen::VectorXd ev = solver.eigenvalues();
    if (ev.minCoeff() >= 0.0) {
        return detail::from_eigen(e);
    }
    ev = ev.cwiseMax(0.0);
    const auto &v = solver.eigenvectors();
    return detail::from_eigen(v * ev.asDiagonal() * v.adjoint());
}

/// Standard-basis Pauli matrices.
namespace pauli {
inline ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix y() {
    return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
}
inline ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
} // namespace pauli

} // namespace jmr
