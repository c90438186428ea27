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
 * Joint measurability hypergraphs (abstract simplicial complexes over a set
 * of named measurements) and enumeration of their minimal non-faces, i.e.
 * the minimal incompatible sets.
 *
 * Vertices are referred to by their index in first-appearance order. An
 * edge is a strictly increasing vector of vertex indices; that ordering is
 * the canonical vertex order used everywhere downstream.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "jmr/error.hpp"

namespace jmr {

using VertexSet = std::vector<std::size_t>;

struct VertexSetHash {
    std::size_t operator()(const VertexSet &s) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (std::size_t v : s) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

/// Size first, then lexicographic by vertex index.
inline bool canonical_less(const VertexSet &a, const VertexSet &b) {
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    return a < b;
}

enum class ClosureMode { facets, explicit_edges };

class JmHypergraph {
  public:
    JmHypergraph() { edges_.insert(VertexSet{}); }

    /**
     * Builds a normalized hypergraph. With ClosureMode::facets the given
     * edges are closed downward; with ClosureMode::explicit_edges they must
     * already be downward closed (up to the empty set and singletons, which
     * are always added).
     */
    JmHypergraph(std::vector<std::string> vertices, const std::vector<VertexSet> &edges,
                 ClosureMode mode)
        : vertices_(std::move(vertices)) {
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (!index_.emplace(vertices_[i], i).second) {
                throw ParseError("duplicate vertex '" + vertices_[i] + "'");
            }
        }
        edges_.insert(VertexSet{});
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            edges_.insert(VertexSet{i});
        }
        std::vector<VertexSet> given;
        given.reserve(edges.size());
        for (const auto &e : edges) {
            given.push_back(canonicalize(e));
        }
        if (mode == ClosureMode::facets) {
            for (const auto &f : given) {
                add_closure(f);
            }
        } else {
            for (const auto &e : given) {
                edges_.insert(e);
            }
            verify_closed();
        }
    }

    [[nodiscard]] std::size_t vertex_count() const { return vertices_.size(); }
    [[nodiscard]] const std::vector<std::string> &vertices() const { return vertices_; }
    [[nodiscard]] const std::string &name(std::size_t v) const { return vertices_.at(v); }

    [[nodiscard]] std::optional<std::size_t> find(const std::string &name) const {
        auto it = index_.find(name);
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    [[nodiscard]] std::size_t index_of(const std::string &name) const {
        auto idx = find(name);
        if (!idx) {
            throw ParseError("unknown vertex '" + name + "'");
        }
        return *idx;
    }

    /// Sorted, duplicate-free copy of s; throws on an out-of-range index.
    [[nodiscard]] VertexSet canonicalize(VertexSet s) const {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (std::size_t v : s) {
            if (v >= vertices_.size()) {
                throw ParseError("edge references unknown vertex index " + std::to_string(v));
            }
        }
        return s;
    }

    [[nodiscard]] VertexSet indices_of(const std::vector<std::string> &names) const {
        VertexSet s;
        s.reserve(names.size());
        for (const auto &n : names) {
            s.push_back(index_of(n));
        }
        return canonicalize(std::move(s));
    }

    [[nodiscard]] bool is_edge(const VertexSet &s) const {
        return edges_.contains(canonicalize(s));
    }

    [[nodiscard]] bool is_edge(const std::vector<std::string> &names) const {
        return is_edge(indices_of(names));
    }

    /// All edges, canonically sorted (the empty set first).
    [[nodiscard]] std::vector<VertexSet> edges() const {
        std::vector<VertexSet> out(edges_.begin(), edges_.end());
        std::sort(out.begin(), out.end(), canonical_less);
        return out;
    }

    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }

    /// Edges not contained in any larger edge, canonically sorted. The empty
    /// set is a facet only when there are no vertices.
    [[nodiscard]] std::vector<VertexSet> facets() const {
        std::vector<VertexSet> out;
        for (const auto &e : edges_) {
            bool maximal = true;
            for (std::size_t v = 0; v < vertices_.size() && maximal; ++v) {
                if (std::binary_search(e.begin(), e.end(), v)) {
                    continue;
                }
                VertexSet bigger = e;
                bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), v), v);
                if (edges_.contains(bigger)) {
                    maximal = false;
                }
            }
            if (maximal) {
                out.push_back(e);
            }
        }
        std::sort(out.begin(), out.end(), canonical_less);
        return out;
    }

    [[nodiscard]] std::size_t max_edge_size() const {
        std::size_t m = 0;
        for (const auto &e : edges_) {
            m = std::max(m, e.size());
        }
        return m;
    }

    [[nodiscard]] std::vector<std::string> names_of(const VertexSet &s) const {
        std::vector<std::string> out;
        out.reserve(s.size());
        for (std::size_t v : s) {
            out.push_back(vertices_.at(v));
        }
        return out;
    }

    friend bool operator==(const JmHypergraph &a, const JmHypergraph &b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

  private:
    static constexpr std::size_t kMaxFacetSize = 24;

    void add_closure(const VertexSet &facet) {
        if (edges_.contains(facet)) {
            return;
        }
        if (facet.size() > kMaxFacetSize) {
            throw LimitError("facet of size " + std::to_string(facet.size()) +
                             " exceeds the closure limit of " + std::to_string(kMaxFacetSize));
        }
        const std::size_t k = facet.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
            VertexSet sub;
            for (std::size_t b = 0; b < k; ++b) {
                if (mask & (std::size_t{1} << b)) {
                    sub.push_back(facet[b]);
                }
            }
            edges_.insert(std::move(sub));
        }
    }

    // Checking codimension-one faces suffices: by induction every subset of
    // an edge is then an edge.
    void verify_closed() const {
        for (const auto &e : edges_) {
            for (std::size_t drop = 0; drop < e.size(); ++drop) {
                VertexSet sub;
                sub.reserve(e.size() - 1);
                for (std::size_t i = 0; i < e.size(); ++i) {
                    if (i != drop) {
                        sub.push_back(e[i]);
                    }
                }
                if (!edges_.contains(sub)) {
                    throw ParseError("edge {" + join(e) + "} is listed but its subset {" +
                                     join(sub) + "} is not (closure violation)");
                }
            }
        }
    }

    [[nodiscard]] std::string join(const VertexSet &s) const {
        std::string out;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) {
                out += ",";
            }
            out += vertices_[s[i]];
        }
        return out;
    }

    std::vector<std::string> vertices_;
    std::unordered_map<std::string, std::size_t> index_;
    std::unordered_set<VertexSet, VertexSetHash> edges_;
};

/// Minimal non-face: a non-edge all of whose proper subsets are edges.
struct MinimalIncompatibleSet {
    VertexSet members;
    friend bool operator==(const MinimalIncompatibleSet &, const MinimalIncompatibleSet &) = default;
};

struct EnumerationOptions {
    /// Abort if candidates larger than this would need to be examined.
    std::size_t max_set_size = std::numeric_limits<std::size_t>::max();
};

/**
 * Level-by-level enumeration of minimal non-faces. Size-k candidates are
 * the (k-1)-edges extended by one vertex; a candidate qualifies iff it is a
 * non-edge whose (k-1)-subsets are all edges. Every minimal non-face of
 * size k arises this way because dropping any member leaves an edge. The
 * result is sorted by size, then lexicographically.
 */
inline std::vector<MinimalIncompatibleSet>
minimal_incompatible_sets(const JmHypergraph &h, const EnumerationOptions &opts = {}) {
    std::vector<MinimalIncompatibleSet> out;
    const std::size_t nv = h.vertex_count();
    const auto all_edges = h.edges();

    std::vector<VertexSet> level;  // edges of size k-1
    for (const auto &e : all_edges) {
        if (e.size() == 1) {
            level.push_back(e);
        }
    }
    for (std::size_t k = 2; k <= nv && !level.empty(); ++k) {
        if (k > opts.max_set_size) {
            throw LimitError("minimal incompatible set enumeration exceeds max set size " +
                             std::to_string(opts.max_set_size));
        }
        std::unordered_set<VertexSet, VertexSetHash> seen;
        std::vector<VertexSet> found;
        for (const auto &base : level) {
            for (std::size_t v = 0; v < nv; ++v) {
                if (std::binary_search(base.begin(), base.end(), v)) {
                    continue;
                }
                VertexSet cand = base;
                cand.insert(std::upper_bound(cand.begin(), cand.end(), v), v);
                if (!seen.insert(cand).second || h.is_edge(cand)) {
                    continue;
                }
                bool all_faces = true;
                for (std::size_t drop = 0; drop < cand.size() && all_faces; ++drop) {
                    VertexSet sub;
                    sub.reserve(cand.size() - 1);
                    for (std::size_t i = 0; i < cand.size(); ++i) {
                        if (i != drop) {
                            sub.push_back(cand[i]);
                        }
                    }
                    all_faces = h.is_edge(sub);
                }
                if (all_faces) {
                    found.push_back(std::move(cand));
                }
            }
        }
        std::sort(found.begin(), found.end());
        for (auto &s : found) {
            out.push_back({std::move(s)});
        }
        level.clear();
        for (const auto &e : all_edges) {
            if (e.size() == k) {
                level.push_back(e);
            }
        }
    }
    return out;
}

/**
 * Calls visit(h) for every downward-closed hypergraph on n vertices named
 * prefix1..prefixn (each containing all singletons). Faces are chosen level
 * by level among the sets whose codimension-one faces were all chosen, so
 * only closed families are ever generated.
 */
inline void enumerate_complexes(std::size_t n, const std::function<void(const JmHypergraph &)> &visit,
                                const std::string &prefix = "M") {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(prefix + std::to_string(i + 1));
    }
    std::vector<VertexSet> chosen;
    std::function<void(std::size_t, const std::vector<VertexSet> &)> level_rec =
        [&](std::size_t k, const std::vector<VertexSet> &prev_level) {
            std::unordered_set<VertexSet, VertexSetHash> prev(prev_level.begin(), prev_level.end());
            std::vector<VertexSet> cands;
            if (k <= n) {
                for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) {
                        continue;
                    }
                    VertexSet s;
                    for (std::size_t v = 0; v < n; ++v) {
                        if (mask & (std::size_t{1} << v)) {
                            s.push_back(v);
                        }
                    }
                    bool ok = true;
                    for (std::size_t drop = 0; drop < s.size() && ok; ++drop) {
                        VertexSet sub;
                        for (std::size_t i = 0; i < s.size(); ++i) {
                            if (i != drop) {
                                sub.push_back(s[i]);
                            }
                        }
                        ok = prev.contains(sub);
                    }
                    if (ok) {
                        cands.push_back(std::move(s));
                    }
                }
            }
            if (cands.empty()) {
                visit(JmHypergraph(names, chosen, ClosureMode::explicit_edges));
                return;
            }
            const std::size_t m = cands.size();
            for (std::size_t pick = 0; pick < (std::size_t{1} << m); ++pick) {
                std::vector<VertexSet> level;
                for (std::size_t i = 0; i < m; ++i) {
                    if (pick & (std::size_t{1} << i)) {
                        level.push_back(cands[i]);
                    }
                }
                const std::size_t before = chosen.size();
                chosen.insert(chosen.end(), level.begin(), level.end());
                if (level.empty()) {
                    visit(JmHypergraph(names, chosen, ClosureMode::explicit_edges));
                } else {
                    level_rec(k + 1, level);
                }
                chosen.resize(before);
            }
        };
    std::vector<VertexSet> singletons;
    for (std::size_t v = 0; v < n; ++v) {
        singletons.push_back({v});
    }
    level_rec(2, singletons);
}

} // namespace jmr
