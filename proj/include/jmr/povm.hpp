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
 * POVMs, joint POVMs, and the noisy Clifford observables
 *
 *     E_k(+-) = (I +- eta G_k) / 2
 *
 * together with their canonical joint POVM
 *
 *     E(x_1..x_N) = 2^-N (I + eta sum_k x_k G_k),    x_k in {+1, -1},
 *
 * which is positive exactly when eta <= 1/sqrt(N).
 *
 * Binary observables always list outcome +1 first, then -1. Joint POVMs
 * store elements in row-major order over the product of the component
 * outcome lists (last component fastest).
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "jmr/clifford.hpp"
#include "jmr/error.hpp"
#include "jmr/matrix.hpp"

namespace jmr {

using Outcome = int;

struct Povm {
    std::size_t dim = 1;
    std::vector<Outcome> outcomes;
    std::vector<ComplexMatrix> elements;

    [[nodiscard]] std::size_t size() const { return elements.size(); }

    const ComplexMatrix &element(Outcome x) const {
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            if (outcomes[i] == x) {
                return elements[i];
            }
        }
        throw DomainError("povm has no outcome " + std::to_string(x));
    }

    friend bool operator==(const Povm &, const Povm &) = default;
};

struct PovmCheck {
    bool valid = true;
    double hermiticity_residual = 0.0;
    double min_eigenvalue = 0.0;
    double sum_residual = 0.0;  ///< max |sum_x M(x) - I| entrywise
    std::string problem;        ///< first failure, empty when valid
};

/**
 * Checks shape, hermiticity (eq_tol), positivity (psd_tol) and
 * normalization. sum_tol defaults to eq_tol; callers checking numerically
 * produced POVMs may pass a looser bound.
 */
inline PovmCheck validate_povm(const Povm &p, const Tolerance &tol = {}, double sum_tol = -1.0) {
    if (sum_tol <= 0.0) {
        sum_tol = tol.eq_tol;
    }
    PovmCheck c;
    auto fail = [&](std::string why) {
        if (c.valid) {
            c.problem = std::move(why);
        }
        c.valid = false;
    };
    if (p.elements.empty() || p.elements.size() != p.outcomes.size()) {
        fail("outcome and element counts differ or are zero");
        return c;
    }
    {
        std::unordered_set<Outcome> seen(p.outcomes.begin(), p.outcomes.end());
        if (seen.size() != p.outcomes.size()) {
            fail("duplicate outcome labels");
        }
    }
    ComplexMatrix sum(p.dim);
    c.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const auto &e : p.elements) {
        if (e.dim() != p.dim) {
            fail("element dimension differs from povm dim");
            return c;
        }
        const double h = e.hermiticity_residual();
        c.hermiticity_residual = std::max(c.hermiticity_residual, h);
        if (h > tol.eq_tol) {
            fail("element is not Hermitian");
            continue;
        }
        Tolerance loose = tol;
        loose.eq_tol = std::max(tol.eq_tol, h);
        c.min_eigenvalue = std::min(c.min_eigenvalue, min_eigenvalue(e, loose));
        sum += e;
    }
    if (c.min_eigenvalue < -tol.psd_tol) {
        fail("element is not positive semidefinite");
    }
    c.sum_residual = max_abs_diff(sum, ComplexMatrix::identity(p.dim));
    if (c.sum_residual > sum_tol) {
        fail("elements do not sum to the identity");
    }
    return c;
}

/// Binary observable (I +- eta G_k)/2 built from generator k (0-based).
struct NoisyCliffordObservable {
    double eta = 0.0;
    std::size_t gamma_index = 0;
    Povm povm;
};

inline void require_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("purity parameter must lie in [0, 1], got " + std::to_string(eta));
    }
}

inline NoisyCliffordObservable make_noisy_observable(const CliffordFamily &fam, std::size_t k,
                                                     double eta) {
    require_eta(eta);
    if (k >= fam.n()) {
        throw DomainError("generator index " + std::to_string(k) + " out of range for family of " +
                          std::to_string(fam.n()));
    }
    const ComplexMatrix id = ComplexMatrix::identity(fam.dim);
    const ComplexMatrix g = fam.gammas[k] * Complex(eta);
    NoisyCliffordObservable obs;
    obs.eta = eta;
    obs.gamma_index = k;
    obs.povm.dim = fam.dim;
    obs.povm.outcomes = {+1, -1};
    obs.povm.elements = {(id + g) * Complex(0.5), (id - g) * Complex(0.5)};
    return obs;
}

/// Outcome +1 never occurs: elements (0, I).
inline Povm trivial_povm(std::size_t dim) {
    if (dim == 0) {
        throw DimensionError("trivial_povm: dimension must be positive");
    }
    return Povm{dim, {+1, -1}, {ComplexMatrix::zero(dim), ComplexMatrix::identity(dim)}};
}

struct JointPovm {
    std::size_t dim = 1;
    std::vector<std::vector<Outcome>> components;
    std::vector<ComplexMatrix> elements;

    [[nodiscard]] std::size_t component_count() const { return components.size(); }

    [[nodiscard]] std::size_t product_size() const {
        std::size_t n = 1;
        for (const auto &c : components) {
            n *= c.size();
        }
        return n;
    }

    /// Per-component outcome positions of flat element index `flat`.
    [[nodiscard]] std::vector<std::size_t> unravel(std::size_t flat) const {
        std::vector<std::size_t> pos(components.size());
        for (std::size_t i = components.size(); i-- > 0;) {
            pos[i] = flat % components[i].size();
            flat /= components[i].size();
        }
        return pos;
    }

    [[nodiscard]] std::vector<Outcome> outcome_tuple(std::size_t flat) const {
        const auto pos = unravel(flat);
        std::vector<Outcome> out(pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i) {
            out[i] = components[i][pos[i]];
        }
        return out;
    }

    /// View as an ordinary POVM; outcome labels become flat indices.
    [[nodiscard]] Povm as_povm() const {
        Povm p{dim, {}, elements};
        p.outcomes.resize(elements.size());
        std::iota(p.outcomes.begin(), p.outcomes.end(), 0);
        return p;
    }
};

inline double clifford_compatibility_threshold(std::size_t n) {
    if (n == 0) {
        throw DomainError("compatibility threshold needs n >= 1");
    }
    return 1.0 / std::sqrt(static_cast<double>(n));
}

/// 1/sqrt(n - 1): n observables at this purity are incompatible while any
/// n - 1 of them are compatible.
inline double specker_eta(std::size_t n) {
    if (n < 2) {
        throw DomainError("specker_eta needs n >= 2");
    }
    return 1.0 / std::sqrt(static_cast<double>(n - 1));
}

/// Midpoint of the window (1/sqrt(n), 1/sqrt(n-1)].
inline double midpoint_eta(std::size_t n) {
    return 0.5 * (clifford_compatibility_threshold(n) + specker_eta(n));
}

/**
 * 2^-N (I + sum_k x_k D_k) for each x in {+1,-1}^N, given the noise-scaled
 * directions D_k = E_k(+) - E_k(-). This is the canonical joint of the
 * binary observables (I +- D_k)/2; it need not be positive.
 */
inline JointPovm joint_from_directions(std::size_t dim, std::span<const ComplexMatrix> directions) {
    const std::size_t n = directions.size();
    if (n >= 8 * sizeof(std::size_t)) {
        throw LimitError("too many components for a dense joint POVM");
    }
    JointPovm j;
    j.dim = dim;
    j.components.assign(n, std::vector<Outcome>{+1, -1});
    const std::size_t count = std::size_t{1} << n;
    const Complex weight = 1.0 / static_cast<double>(count);
    const ComplexMatrix id = ComplexMatrix::identity(dim);
    j.elements.reserve(count);
    for (std::size_t flat = 0; flat < count; ++flat) {
        ComplexMatrix e = id;
        for (std::size_t k = 0; k < n; ++k) {
            // bit (n-1-k) set means outcome -1 for component k
            const bool minus = (flat >> (n - 1 - k)) & 1U;
            if (minus) {
                e -= directions[k];
            } else {
                e += directions[k];
            }
        }
        j.elements.push_back(e * weight);
    }
    return j;
}

/**
 * Canonical joint POVM for the noisy observables of generators `indices`
 * (0-based, distinct) at purity eta. Requires eta <= 1/sqrt(N) + eq_tol.
 */
inline JointPovm make_joint_povm(const CliffordFamily &fam, std::span<const std::size_t> indices,
                                 double eta, const Tolerance &tol = {}) {
    require_eta(eta);
    if (indices.empty()) {
        throw DomainError("make_joint_povm: no observables");
    }
    std::unordered_set<std::size_t> distinct;
    for (std::size_t k : indices) {
        if (k >= fam.n()) {
            throw DomainError("generator index " + std::to_string(k) + " out of range");
        }
        if (!distinct.insert(k).second) {
            throw DomainError("make_joint_povm: duplicate generator index " + std::to_string(k));
        }
    }
    const double bound = clifford_compatibility_threshold(indices.size());
    if (eta > bound + tol.eq_tol) {
        throw DomainError("make_joint_povm: eta " + std::to_string(eta) + " exceeds 1/sqrt(" +
                          std::to_string(indices.size()) + ") = " + std::to_string(bound) +
                          "; the joint would not be positive");
    }
    std::vector<ComplexMatrix> dirs;
    dirs.reserve(indices.size());
    for (std::size_t k : indices) {
        dirs.push_back(fam.gammas[k] * Complex(eta));
    }
    return joint_from_directions(fam.dim, dirs);
}

inline JointPovm make_joint_povm(const CliffordFamily &fam, std::initializer_list<std::size_t> indices,
                                 double eta, const Tolerance &tol = {}) {
    return make_joint_povm(fam, std::span<const std::size_t>(indices.begin(), indices.size()), eta, tol);
}

/// Coarse-grain onto the listed components (in the given order).
inline JointPovm marginalize_to(const JointPovm &j, std::span<const std::size_t> keep) {
    for (std::size_t i : keep) {
        if (i >= j.component_count()) {
            throw DomainError("marginalize: component index " + std::to_string(i) + " out of range");
        }
    }
    JointPovm out;
    out.dim = j.dim;
    for (std::size_t i : keep) {
        out.components.push_back(j.components[i]);
    }
    out.elements.assign(out.product_size(), ComplexMatrix::zero(j.dim));
    for (std::size_t flat = 0; flat < j.elements.size(); ++flat) {
        const auto pos = j.unravel(flat);
        std::size_t target = 0;
        for (std::size_t i : keep) {
            target = target * j.components[i].size() + pos[i];
        }
        out.elements[target] += j.elements[flat];
    }
    return out;
}

/// M_i(x_i) = sum over all other outcome indices of M(x).
inline Povm marginalize(const JointPovm &j, std::size_t i) {
    const std::size_t keep[] = {i};
    JointPovm m = marginalize_to(j, keep);
    return Povm{m.dim, m.components[0], std::move(m.elements)};
}

/**
 * eta = 1/(N d) sum_k sum_{x_k} Tr(x_k G_k E_k(x_k)). Only meaningful for
 * observables of the form (I +- eta G_k)/2 built from fam.
 */
inline double recover_purity(std::span<const NoisyCliffordObservable> observables,
                             const CliffordFamily &fam) {
    if (observables.empty()) {
        throw DomainError("recover_purity: no observables");
    }
    Complex acc = 0.0;
    for (const auto &obs : observables) {
        if (obs.gamma_index >= fam.n() || obs.povm.dim != fam.dim) {
            throw DimensionError("recover_purity: observable does not belong to the family");
        }
        const ComplexMatrix &g = fam.gammas[obs.gamma_index];
        for (std::size_t i = 0; i < obs.povm.size(); ++i) {
            acc += static_cast<double>(obs.povm.outcomes[i]) * (g * obs.povm.elements[i]).trace();
        }
    }
    return acc.real() / (static_cast<double>(observables.size()) * static_cast<double>(fam.dim));
}

} // namespace jmr
