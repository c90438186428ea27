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
 * Numerical joint-measurability oracle for arbitrary finite POVM families.
 *
 * A joint POVM G(x_1..x_N) must be positive elementwise and reproduce each
 * input POVM as a marginal. Both constraint sets are convex: the product of
 * PSD cones, and for every component i the affine set
 *
 *     sum_{x : x_i = a} G(x) = M_i(a)    for all a in X_i.
 *
 * Dykstra's cyclic projection scheme is run over these N + 1 sets. After
 * every sweep the iterate is clipped to the PSD product and its marginal
 * residual measured; a residual within feas_tol yields a witness that is
 * exactly positive with marginals accurate to feas_tol.
 *
 * A "feasible" verdict is therefore backed by a checkable witness. A
 * "presumed_infeasible" verdict only means the residual stopped improving
 * above feas_tol; it is a heuristic, not a certificate.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jmr/error.hpp"
#include "jmr/matrix.hpp"
#include "jmr/povm.hpp"

namespace jmr {

enum class FeasibilityStatus { feasible, presumed_infeasible, iteration_limit };

inline const char *to_string(FeasibilityStatus s) {
    switch (s) {
    case FeasibilityStatus::feasible:
        return "feasible";
    case FeasibilityStatus::presumed_infeasible:
        return "presumed_infeasible";
    case FeasibilityStatus::iteration_limit:
        return "iteration_limit";
    }
    return "unknown";
}

struct FeasibilityOptions {
    std::size_t max_iter = 20000;
    std::size_t plateau_window = 200;
    double plateau_tol = 1e-9;  ///< relative residual change over the window
};

struct FeasibilityReport {
    FeasibilityStatus status = FeasibilityStatus::iteration_limit;
    double residual = 0.0;  ///< max Frobenius marginal violation of the clipped iterate
    std::size_t iterations = 0;
    std::vector<double> residual_history;
    std::optional<JointPovm> witness;

    [[nodiscard]] bool heuristic() const { return status != FeasibilityStatus::feasible; }
};

namespace detail {

inline void require_common_dim(std::span<const Povm> povms) {
    if (povms.empty()) {
        throw DomainError("joint measurability: no POVMs given");
    }
    for (const auto &p : povms) {
        if (p.dim != povms.front().dim) {
            throw DimensionError("joint measurability: POVMs act on different dimensions (" +
                                 std::to_string(povms.front().dim) + " vs " +
                                 std::to_string(p.dim) + ")");
        }
        if (p.elements.empty() || p.elements.size() != p.outcomes.size()) {
            throw DimensionError("joint measurability: malformed POVM");
        }
        for (const auto &e : p.elements) {
            if (e.dim() != p.dim) {
                throw DimensionError("joint measurability: element dimension differs from POVM dim");
            }
        }
    }
}

/// Max Frobenius deviation of the marginals of `vars` from the inputs.
inline double marginal_residual(const JointPovm &shape, std::span<const ComplexMatrix> vars,
                                std::span<const Povm> povms) {
    double worst = 0.0;
    std::vector<ComplexMatrix> sums;
    for (std::size_t i = 0; i < povms.size(); ++i) {
        sums.assign(povms[i].size(), ComplexMatrix::zero(shape.dim));
        for (std::size_t flat = 0; flat < vars.size(); ++flat) {
            sums[shape.unravel(flat)[i]] += vars[flat];
        }
        for (std::size_t a = 0; a < sums.size(); ++a) {
            worst = std::max(worst, (sums[a] - povms[i].elements[a]).frobenius_norm());
        }
    }
    return worst;
}

} // namespace detail

struct WitnessCheck {
    bool valid = false;
    PovmCheck povm;
    double marginal_residual = 0.0;  ///< max entrywise deviation over all marginals
};

/**
 * The witness must be a POVM (PSD within psd_tol, normalized within
 * feas_tol) whose marginal on component i equals povms[i] entrywise within
 * feas_tol.
 */
inline WitnessCheck check_witness(std::span<const Povm> povms, const JointPovm &witness,
                                  const Tolerance &tol = {}) {
    if (witness.component_count() != povms.size()) {
        throw DimensionError("witness has " + std::to_string(witness.component_count()) +
                             " components, expected " + std::to_string(povms.size()));
    }
    if (witness.elements.size() != witness.product_size()) {
        throw DimensionError("witness element count does not match its outcome product");
    }
    for (std::size_t i = 0; i < povms.size(); ++i) {
        if (povms[i].dim != witness.dim || povms[i].outcomes != witness.components[i]) {
            throw DimensionError("witness component " + std::to_string(i) +
                                 " does not match the corresponding POVM");
        }
    }
    WitnessCheck c;
    c.povm = validate_povm(witness.as_povm(), tol, tol.feas_tol);
    for (std::size_t i = 0; i < povms.size(); ++i) {
        const Povm m = marginalize(witness, i);
        for (std::size_t a = 0; a < m.size(); ++a) {
            c.marginal_residual =
                std::max(c.marginal_residual, max_abs_diff(m.elements[a], povms[i].elements[a]));
        }
    }
    c.valid = c.povm.valid && c.marginal_residual <= tol.feas_tol;
    return c;
}

inline bool verify_witness(std::span<const Povm> povms, const JointPovm &witness,
                           const Tolerance &tol = {}) {
    return check_witness(povms, witness, tol).valid;
}

inline FeasibilityReport decide_joint_measurability(std::span<const Povm> povms,
                                                    const Tolerance &tol = {},
                                                    const FeasibilityOptions &opts = {}) {
    detail::require_common_dim(povms);
    const std::size_t dim = povms.front().dim;
    const std::size_t n = povms.size();

    JointPovm shape;
    shape.dim = dim;
    for (const auto &p : povms) {
        shape.components.push_back(p.outcomes);
    }
    const std::size_t count = shape.product_size();

    // Flat index -> outcome position per component, computed once.
    std::vector<std::vector<std::size_t>> pos(count);
    for (std::size_t flat = 0; flat < count; ++flat) {
        pos[flat] = shape.unravel(flat);
    }

    std::vector<ComplexMatrix> x(count, ComplexMatrix::identity(dim) *
                                            Complex(1.0 / static_cast<double>(count)));
    // Dykstra increments: set 0 is the PSD product, set 1 + i is component i.
    std::vector<std::vector<ComplexMatrix>> inc(n + 1,
                                                std::vector<ComplexMatrix>(count, ComplexMatrix(dim)));
    std::vector<ComplexMatrix> y(count, ComplexMatrix(dim));
    std::vector<ComplexMatrix> sums;

    // Orthogonal projection of y onto component i's affine set, into x.
    auto project_marginal = [&](std::size_t i) {
        const Povm &target = povms[i];
        const double group = static_cast<double>(count / target.size());
        sums.assign(target.size(), ComplexMatrix::zero(dim));
        for (std::size_t flat = 0; flat < count; ++flat) {
            sums[pos[flat][i]] += y[flat];
        }
        for (std::size_t a = 0; a < target.size(); ++a) {
            sums[a] = (target.elements[a] - sums[a]) * Complex(1.0 / group);
        }
        for (std::size_t flat = 0; flat < count; ++flat) {
            x[flat] = y[flat] + sums[pos[flat][i]];
        }
    };

    FeasibilityReport report;
    std::vector<ComplexMatrix> clipped(count, ComplexMatrix(dim));
    for (std::size_t it = 1; it <= opts.max_iter; ++it) {
        for (std::size_t s = 0; s <= n; ++s) {
            for (std::size_t f = 0; f < count; ++f) {
                y[f] = x[f] + inc[s][f];
            }
            if (s == 0) {
                for (std::size_t f = 0; f < count; ++f) {
                    x[f] = project_psd(y[f]);
                }
            } else {
                project_marginal(s - 1);
            }
            for (std::size_t f = 0; f < count; ++f) {
                inc[s][f] = y[f] - x[f];
            }
        }

        for (std::size_t f = 0; f < count; ++f) {
            clipped[f] = project_psd(x[f]);
        }
        const double r = detail::marginal_residual(shape, clipped, povms);
        report.residual_history.push_back(r);
        report.residual = r;
        report.iterations = it;

        if (r <= tol.feas_tol) {
            report.status = FeasibilityStatus::feasible;
            shape.elements = clipped;
            report.witness = shape;
            return report;
        }
        if (it > opts.plateau_window) {
            const double old = report.residual_history[it - 1 - opts.plateau_window];
            if (std::abs(old - r) <= opts.plateau_tol * r) {
                report.status = FeasibilityStatus::presumed_infeasible;
                return report;
            }
        }
    }
    report.status = FeasibilityStatus::iteration_limit;
    return report;
}

} // namespace jmr
