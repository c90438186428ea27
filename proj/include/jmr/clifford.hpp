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
 * Hermitian representations of Clifford algebra generators: n mutually
 * anticommuting involutions G_1..G_n with G_j G_k + G_k G_j = 2 delta_jk I.
 *
 * Families are grown two generators at a time. Starting from the single
 * generator 1 on C, each step maps G_i -> G_i (x) sigma_z and appends
 * I (x) sigma_x and I (x) sigma_y, doubling the dimension. Even n is
 * obtained by building n + 1 generators and dropping the last one, so a
 * family of n generators always lives on dimension 2^floor(n/2).
 */

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "jmr/error.hpp"
#include "jmr/matrix.hpp"

namespace jmr {

struct CliffordFamily {
    std::size_t dim = 1;
    std::vector<ComplexMatrix> gammas;

    [[nodiscard]] std::size_t n() const { return gammas.size(); }
    const ComplexMatrix &operator[](std::size_t k) const { return gammas[k]; }
};

inline CliffordFamily build_clifford(std::size_t n) {
    if (n == 0) {
        throw DomainError("build_clifford: need at least one generator");
    }
    const std::size_t odd_n = (n % 2 == 0) ? n + 1 : n;

    CliffordFamily fam;
    fam.dim = 1;
    fam.gammas.push_back(ComplexMatrix::identity(1));
    const ComplexMatrix sx = pauli::x();
    const ComplexMatrix sy = pauli::y();
    const ComplexMatrix sz = pauli::z();
    while (fam.gammas.size() < odd_n) {
        const ComplexMatrix id = ComplexMatrix::identity(fam.dim);
        for (auto &g : fam.gammas) {
            g = kron(g, sz);
        }
        fam.gammas.push_back(kron(id, sx));
        fam.gammas.push_back(kron(id, sy));
        fam.dim *= 2;
    }
    fam.gammas.resize(n);
    return fam;
}

/// One violated (or checked) relation in a CliffordReport.
struct CliffordViolation {
    enum class Kind { hermiticity, square, anticommutation, trace };
    Kind kind;
    std::size_t j;  ///< generator index (0-based)
    std::size_t k;  ///< second index for anticommutation, else == j
    double residual;
};

inline const char *to_string(CliffordViolation::Kind kind) {
    switch (kind) {
    case CliffordViolation::Kind::hermiticity:
        return "hermiticity";
    case CliffordViolation::Kind::square:
        return "square";
    case CliffordViolation::Kind::anticommutation:
        return "anticommutation";
    case CliffordViolation::Kind::trace:
        return "trace";
    }
    return "unknown";
}

struct CliffordReport {
    bool passed = true;
    double max_residual = 0.0;
    bool trace_checked = false;
    std::vector<CliffordViolation> violations;
};

/**
 * Check hermiticity, G_k^2 = I, pairwise anticommutation, and (for n >= 2)
 * tracelessness. Failures are collected, never thrown; max_residual is the
 * worst residual over every relation evaluated, violated or not.
 */
inline CliffordReport check_clifford(const CliffordFamily &fam,
                                     const Tolerance &tol = {}) {
    CliffordReport report;
    auto record = [&](CliffordViolation::Kind kind, std::size_t j, std::size_t k,
                      double residual) {
        report.max_residual = std::max(report.max_residual, residual);
        if (residual > tol.eq_tol) {
            report.passed = false;
            report.violations.push_back({kind, j, k, residual});
        }
    };

    const std::size_t n = fam.n();
    for (const auto &g : fam.gammas) {
        if (g.dim() != fam.dim) {
            throw DimensionError("check_clifford: generator dimension differs from family dim");
        }
    }
    const ComplexMatrix id = ComplexMatrix::identity(fam.dim);
    for (std::size_t j = 0; j < n; ++j) {
        const ComplexMatrix &gj = fam.gammas[j];
        record(CliffordViolation::Kind::hermiticity, j, j, gj.hermiticity_residual());
        record(CliffordViolation::Kind::square, j, j, max_abs_diff(gj * gj, id));
        for (std::size_t k = j + 1; k < n; ++k) {
            const ComplexMatrix &gk = fam.gammas[k];
            record(CliffordViolation::Kind::anticommutation, j, k,
                   (gj * gk + gk * gj).max_abs());
        }
    }
    // Tracelessness follows from anticommutation with some other generator,
    // so it is only meaningful for n >= 2.
    if (n >= 2) {
        report.trace_checked = true;
        for (std::size_t k = 0; k < n; ++k) {
            record(CliffordViolation::Kind::trace, k, k, std::abs(fam.gammas[k].trace()));
        }
    }
    return report;
}

/// sum_k x_k G_k
inline ComplexMatrix weighted_sum(const CliffordFamily &fam, std::span<const double> x) {
    if (x.size() != fam.n()) {
        throw DimensionError("weighted_sum: coefficient count " + std::to_string(x.size()) +
                             " != generator count " + std::to_string(fam.n()));
    }
    ComplexMatrix s(fam.dim);
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += fam.gammas[k] * Complex(x[k]);
    }
    return s;
}

/// (sum_k x_k G_k)^2 == (sum_k x_k^2) I within eq_tol.
inline bool weighted_sum_square_check(const CliffordFamily &fam, std::span<const double> x,
                                      const Tolerance &tol = {}) {
    const ComplexMatrix s = weighted_sum(fam, x);
    double norm2 = 0.0;
    for (double v : x) {
        norm2 += v * v;
    }
    return max_abs_diff(s * s, ComplexMatrix::identity(fam.dim) * Complex(norm2)) <=
           tol.eq_tol;
}

} // namespace jmr
