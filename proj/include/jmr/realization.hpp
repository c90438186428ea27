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
 * Quantum realization of a joint measurability hypergraph.
 *
 * Every minimal incompatible set S of size N gets its own block: the noisy
 * Clifford observables of build_clifford(N) at a purity inside
 * (1/sqrt(N), 1/sqrt(N-1)], assigned to the members of S in canonical
 * vertex order, with every other vertex measuring the trivial POVM (0, I).
 * Each vertex's final POVM is the direct sum of its per-block POVMs.
 *
 * On a block, any proper subset of S is compatible and S itself is not.
 * An edge never contains a minimal incompatible set, so it is compatible
 * on every block and hence on the sum; a non-edge contains some S and is
 * incompatible on that block, hence on the sum.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jmr/clifford.hpp"
#include "jmr/error.hpp"
#include "jmr/feasibility.hpp"
#include "jmr/hypergraph.hpp"
#include "jmr/matrix.hpp"
#include "jmr/povm.hpp"

namespace jmr {

enum class EtaPolicy { specker, midpoint };

inline const char *to_string(EtaPolicy p) {
    return p == EtaPolicy::specker ? "specker" : "midpoint";
}

inline double block_eta(std::size_t set_size, EtaPolicy policy) {
    return policy == EtaPolicy::specker ? specker_eta(set_size) : midpoint_eta(set_size);
}

struct RealizationBlock {
    VertexSet members;  ///< the minimal incompatible set (empty for the filler block)
    std::size_t dim = 1;
    std::size_t offset = 0;  ///< first row of the block in the assembled space
    double eta = 0.0;
    std::vector<Povm> povms;  ///< one binary POVM per hypergraph vertex
};

struct Realization {
    JmHypergraph hypergraph;
    std::vector<RealizationBlock> blocks;
    std::size_t total_dim = 1;
    std::vector<Povm> assembled;  ///< one binary POVM per hypergraph vertex
};

struct RealizeOptions {
    EtaPolicy eta_policy = EtaPolicy::specker;
    EnumerationOptions enumeration;
};

/// Recomputes offsets, total_dim and the assembled POVMs from the blocks.
inline void assemble(Realization &r) {
    if (r.blocks.empty()) {
        throw DimensionError("realization has no blocks");
    }
    const std::size_t nv = r.hypergraph.vertex_count();
    std::size_t offset = 0;
    for (auto &b : r.blocks) {
        if (b.povms.size() != nv) {
            throw DimensionError("block carries " + std::to_string(b.povms.size()) +
                                 " POVMs for " + std::to_string(nv) + " vertices");
        }
        b.offset = offset;
        offset += b.dim;
    }
    r.total_dim = offset;
    r.assembled.clear();
    for (std::size_t v = 0; v < nv; ++v) {
        std::vector<ComplexMatrix> plus;
        std::vector<ComplexMatrix> minus;
        for (const auto &b : r.blocks) {
            const Povm &p = b.povms[v];
            if (p.size() != 2 || p.dim != b.dim) {
                throw DimensionError("block POVM is not binary on the block dimension");
            }
            plus.push_back(p.element(+1));
            minus.push_back(p.element(-1));
        }
        r.assembled.push_back(Povm{r.total_dim, {+1, -1}, {direct_sum(plus), direct_sum(minus)}});
    }
}

inline RealizationBlock make_block(const JmHypergraph &h, const VertexSet &members, double eta) {
    RealizationBlock b;
    b.members = members;
    b.eta = eta;
    const CliffordFamily fam = build_clifford(members.size());
    b.dim = fam.dim;
    for (std::size_t v = 0; v < h.vertex_count(); ++v) {
        auto it = std::find(members.begin(), members.end(), v);
        if (it == members.end()) {
            b.povms.push_back(trivial_povm(b.dim));
        } else {
            const auto k = static_cast<std::size_t>(it - members.begin());
            b.povms.push_back(make_noisy_observable(fam, k, eta).povm);
        }
    }
    return b;
}

inline Realization realize(const JmHypergraph &h, const RealizeOptions &opts = {}) {
    Realization r;
    r.hypergraph = h;
    for (const auto &s : minimal_incompatible_sets(h, opts.enumeration)) {
        r.blocks.push_back(make_block(h, s.members, block_eta(s.members.size(), opts.eta_policy)));
    }
    if (r.blocks.empty()) {
        // Nothing to encode; a one-dimensional space with trivial POVMs.
        RealizationBlock b;
        b.dim = 1;
        b.povms.assign(h.vertex_count(), trivial_povm(1));
        r.blocks.push_back(std::move(b));
    }
    assemble(r);
    return r;
}

/// E(+1) - E(-1) of a binary POVM.
inline ComplexMatrix direction(const Povm &p) { return p.element(+1) - p.element(-1); }

/**
 * Joint POVM on the assembled space for the vertices of edge e (components
 * in canonical order). On each block the members of e inside the block's
 * set are joined by the canonical Clifford joint at the block's purity; the
 * remaining members of e carry their block POVM as a multiplicative factor,
 * which for the trivial POVM makes outcome -1 deterministic.
 */
inline JointPovm blockwise_joint_witness(const Realization &r, const VertexSet &edge) {
    const JmHypergraph &h = r.hypergraph;
    const VertexSet e = h.canonicalize(edge);
    if (!h.is_edge(e)) {
        throw DomainError("blockwise_joint_witness: not an edge of the hypergraph");
    }
    const std::size_t n = e.size();
    if (n >= 8 * sizeof(std::size_t) - 1) {
        throw LimitError("edge too large for a dense joint POVM");
    }
    JointPovm joint;
    joint.dim = r.total_dim;
    joint.components.assign(n, std::vector<Outcome>{+1, -1});
    const std::size_t count = std::size_t{1} << n;

    // Per block: the dense Clifford joint over e's members in the block set,
    // indexed by the restriction of the outcome tuple to those members.
    struct BlockPlan {
        std::vector<std::size_t> inside;   // positions within e
        std::vector<std::size_t> outside;  // positions within e
        JointPovm local;
    };
    std::vector<BlockPlan> plans;
    for (const auto &b : r.blocks) {
        BlockPlan plan;
        std::vector<ComplexMatrix> dirs;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::binary_search(b.members.begin(), b.members.end(), e[i])) {
                plan.inside.push_back(i);
                dirs.push_back(direction(b.povms[e[i]]));
            } else {
                plan.outside.push_back(i);
            }
        }
        plan.local = joint_from_directions(b.dim, dirs);
        plans.push_back(std::move(plan));
    }

    joint.elements.reserve(count);
    std::vector<ComplexMatrix> parts;
    for (std::size_t flat = 0; flat < count; ++flat) {
        const auto pos = joint.unravel(flat);
        parts.clear();
        for (std::size_t bi = 0; bi < r.blocks.size(); ++bi) {
            const auto &b = r.blocks[bi];
            const auto &plan = plans[bi];
            std::size_t local = 0;
            for (std::size_t i : plan.inside) {
                local = local * 2 + pos[i];
            }
            ComplexMatrix g = plan.local.elements[local];
            for (std::size_t i : plan.outside) {
                g = g * b.povms[e[i]].elements[pos[i]];
            }
            parts.push_back(std::move(g));
        }
        joint.elements.push_back(direct_sum(parts));
    }
    return joint;
}

enum class CheckKind { povm_valid, assembly, edge_witness, incompatibility, oracle };

inline const char *to_string(CheckKind k) {
    switch (k) {
    case CheckKind::povm_valid:
        return "povm_valid";
    case CheckKind::assembly:
        return "assembly";
    case CheckKind::edge_witness:
        return "edge_witness";
    case CheckKind::incompatibility:
        return "incompatibility";
    case CheckKind::oracle:
        return "oracle";
    }
    return "unknown";
}

struct RealizationCheck {
    CheckKind kind;
    std::vector<std::string> target;  ///< vertex names the check is about
    bool passed = false;
    double residual = 0.0;
    std::string detail;
    bool heuristic = false;  ///< oracle checks; excluded from the overall verdict
};

struct RealizationReport {
    bool passed = true;
    std::vector<RealizationCheck> checks;

    [[nodiscard]] std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto &c) {
            return !c.heuristic && !c.passed;
        }));
    }
};

struct VerifyOptions {
    bool cross_check_oracle = false;
    FeasibilityOptions oracle;
    /// Oracle checks are skipped for problems with more joint outcomes or a
    /// larger space than this.
    std::size_t oracle_max_outcomes = 64;
    std::size_t oracle_max_dim = 16;
    /// Required gap between a block purity and the compatibility threshold.
    double certification_margin = 1e-6;
};

/// Outcome of the analytic incompatibility certificate for one block.
struct IncompatibilityCertificate {
    bool certified = false;
    double recovered_eta = 0.0;
    double threshold = 0.0;
    std::string problem;
};

/**
 * The members' block POVMs must be (I +- eta G_k)/2 for one common eta and
 * generators G_k satisfying the Clifford relations; eta is read back from
 * the matrices, compared with the declared purity, and must exceed
 * 1/sqrt(|S|) by the certification margin.
 */
inline IncompatibilityCertificate certify_block(const RealizationBlock &b, const Tolerance &tol,
                                                double margin) {
    IncompatibilityCertificate cert;
    const std::size_t n = b.members.size();
    if (n < 2) {
        cert.problem = "block set has fewer than two members";
        return cert;
    }
    cert.threshold = clifford_compatibility_threshold(n);
    const ComplexMatrix id = ComplexMatrix::identity(b.dim);

    std::vector<ComplexMatrix> dirs;
    double eta_sum = 0.0;
    std::vector<double> etas;
    for (std::size_t v : b.members) {
        const Povm &p = b.povms.at(v);
        if (max_abs_diff(p.element(+1) + p.element(-1), id) > tol.eq_tol) {
            cert.problem = "member POVM does not sum to the identity";
            return cert;
        }
        dirs.push_back(direction(p));
        const double eta_k =
            std::sqrt(std::max(0.0, (dirs.back() * dirs.back()).trace().real() / static_cast<double>(b.dim)));
        etas.push_back(eta_k);
        eta_sum += eta_k;
    }
    const double eta = eta_sum / static_cast<double>(n);
    for (double eta_k : etas) {
        if (std::abs(eta_k - eta) > tol.eq_tol) {
            cert.problem = "member POVMs have different purities";
            return cert;
        }
    }
    if (eta <= tol.eq_tol) {
        cert.problem = "block purity is zero";
        return cert;
    }
    CliffordFamily fam;
    fam.dim = b.dim;
    for (const auto &d : dirs) {
        fam.gammas.push_back(d * Complex(1.0 / eta));
    }
    const CliffordReport rel = check_clifford(fam, tol);
    if (!rel.passed) {
        cert.problem = "member directions violate the Clifford relations";
        return cert;
    }
    std::vector<NoisyCliffordObservable> obs;
    for (std::size_t k = 0; k < n; ++k) {
        obs.push_back({eta, k, b.povms.at(b.members[k])});
    }
    cert.recovered_eta = recover_purity(obs, fam);
    if (std::abs(cert.recovered_eta - b.eta) > tol.eq_tol) {
        cert.problem = "declared purity " + std::to_string(b.eta) + " differs from recovered " +
                       std::to_string(cert.recovered_eta);
        return cert;
    }
    if (cert.recovered_eta <= cert.threshold + margin) {
        cert.problem = "purity " + std::to_string(cert.recovered_eta) +
                       " does not exceed the compatibility threshold " + std::to_string(cert.threshold);
        return cert;
    }
    cert.certified = true;
    return cert;
}

inline RealizationReport verify_realization(const Realization &r, const Tolerance &tol = {},
                                            const VerifyOptions &opts = {}) {
    RealizationReport report;
    const JmHypergraph &h = r.hypergraph;
    const std::size_t nv = h.vertex_count();
    auto add = [&](RealizationCheck c) {
        if (!c.heuristic && !c.passed) {
            report.passed = false;
        }
        report.checks.push_back(std::move(c));
    };

    if (r.assembled.size() != nv) {
        add({CheckKind::assembly, {}, false, 0.0, "assembled POVM count differs from vertex count"});
        return report;
    }

    // (a) every assembled POVM is a POVM
    for (std::size_t v = 0; v < nv; ++v) {
        RealizationCheck c{CheckKind::povm_valid, {h.name(v)}, false, 0.0, {}, false};
        const PovmCheck pc = validate_povm(r.assembled[v], tol);
        c.passed = pc.valid && r.assembled[v].dim == r.total_dim;
        c.residual = std::max({pc.sum_residual, pc.hermiticity_residual, std::max(0.0, -pc.min_eigenvalue)});
        c.detail = pc.problem;
        add(std::move(c));
    }

    // block structure and direct-sum consistency
    for (std::size_t v = 0; v < nv; ++v) {
        RealizationCheck c{CheckKind::assembly, {h.name(v)}, false, 0.0, {}, false};
        c.passed = true;
        std::size_t offset = 0;
        for (const auto &b : r.blocks) {
            const Povm &p = b.povms.at(v);
            const bool member = std::binary_search(b.members.begin(), b.members.end(), v);
            if (!member) {
                const Povm t = trivial_povm(b.dim);
                for (Outcome x : {+1, -1}) {
                    const double d = max_abs_diff(p.element(x), t.element(x));
                    c.residual = std::max(c.residual, d);
                    if (d > tol.eq_tol) {
                        c.passed = false;
                        c.detail = "non-member POVM on a block is not trivial";
                    }
                }
            }
            for (Outcome x : {+1, -1}) {
                if (offset + b.dim > r.total_dim) {
                    c.passed = false;
                    c.detail = "blocks exceed the total dimension";
                    break;
                }
                const double d =
                    max_abs_diff(diagonal_block(r.assembled[v].element(x), offset, b.dim), p.element(x));
                c.residual = std::max(c.residual, d);
                if (d > tol.eq_tol) {
                    c.passed = false;
                    c.detail = "assembled POVM is not the direct sum of its block POVMs";
                }
            }
            offset += b.dim;
        }
        if (offset != r.total_dim) {
            c.passed = false;
            c.detail = "block dimensions do not add up to the total dimension";
        }
        add(std::move(c));
    }
    if (!report.passed) {
        return report;
    }

    // (b) explicit joint POVMs for maximal edges
    for (const auto &e : h.facets()) {
        if (e.empty()) {
            continue;
        }
        RealizationCheck c{CheckKind::edge_witness, h.names_of(e), false, 0.0, {}, false};
        try {
            const JointPovm w = blockwise_joint_witness(r, e);
            std::vector<Povm> marg;
            for (std::size_t v : e) {
                marg.push_back(r.assembled[v]);
            }
            const WitnessCheck wc = check_witness(marg, w, tol);
            c.passed = wc.valid;
            c.residual = std::max({wc.marginal_residual, wc.povm.sum_residual,
                                   std::max(0.0, -wc.povm.min_eigenvalue)});
            c.detail = wc.valid ? "" : (wc.povm.valid ? "witness marginals do not match" : wc.povm.problem);
        } catch (const Error &ex) {
            c.passed = false;
            c.detail = ex.what();
        }
        add(std::move(c));
    }

    // (c) analytic incompatibility certificates
    const auto sets = minimal_incompatible_sets(h);
    for (const auto &s : sets) {
        RealizationCheck c{CheckKind::incompatibility, h.names_of(s.members), false, 0.0, {}, false};
        auto it = std::find_if(r.blocks.begin(), r.blocks.end(),
                               [&](const auto &b) { return b.members == s.members; });
        if (it == r.blocks.end()) {
            c.passed = false;
            c.detail = "no block realizes this minimal incompatible set";
        } else {
            const auto cert = certify_block(*it, tol, opts.certification_margin);
            c.passed = cert.certified;
            c.residual = cert.recovered_eta - cert.threshold;
            c.detail = cert.problem;
        }
        add(std::move(c));
    }

    // (d) optional numerical cross-check, reported but never decisive
    if (opts.cross_check_oracle) {
        for (const auto &s : sets) {
            auto it = std::find_if(r.blocks.begin(), r.blocks.end(),
                                   [&](const auto &b) { return b.members == s.members; });
            if (it == r.blocks.end() || (std::size_t{1} << s.members.size()) > opts.oracle_max_outcomes ||
                it->dim > opts.oracle_max_dim) {
                continue;
            }
            std::vector<Povm> povms;
            for (std::size_t v : s.members) {
                povms.push_back(it->povms[v]);
            }
            const auto rep = decide_joint_measurability(povms, tol, opts.oracle);
            RealizationCheck c{CheckKind::oracle, h.names_of(s.members), false, 0.0, {}, false};
            c.heuristic = true;
            c.passed = rep.status == FeasibilityStatus::presumed_infeasible;
            c.residual = rep.residual;
            c.detail = std::string("expected presumed_infeasible, oracle said ") + to_string(rep.status);
            add(std::move(c));
        }
        for (const auto &e : h.facets()) {
            if (e.size() < 2 || (std::size_t{1} << e.size()) > opts.oracle_max_outcomes ||
                r.total_dim > opts.oracle_max_dim) {
                continue;
            }
            std::vector<Povm> povms;
            for (std::size_t v : e) {
                povms.push_back(r.assembled[v]);
            }
            const auto rep = decide_joint_measurability(povms, tol, opts.oracle);
            RealizationCheck c{CheckKind::oracle, h.names_of(e), false, 0.0, {}, false};
            c.heuristic = true;
            c.passed = rep.status == FeasibilityStatus::feasible &&
                       verify_witness(povms, *rep.witness, tol);
            c.residual = rep.residual;
            c.detail = std::string("expected feasible, oracle said ") + to_string(rep.status);
            add(std::move(c));
        }
    }
    return report;
}

} // namespace jmr
