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
 * JSON encodings. Objects are emitted with sorted keys, and doubles with
 * shortest round-trip precision, so identical values serialize to
 * identical bytes.
 *
 *   matrix      {"dim": d, "entries": [[re, im], ...]}           row-major, d^2 pairs
 *   povm        {"dim": d, "outcomes": [..], "elements": [matrix, ..]}
 *   joint povm  {"dim": d, "components": [[..], ..], "outcomes": [[..], ..],
 *                "elements": [matrix, ..]}
 *   hypergraph  {"vertices": [..], "closure": "facets"|"explicit", "edges": [[..], ..]}
 *   realization {"hypergraph": .., "total_dim": d, "blocks": [..], "povms": {vertex: povm}}
 */

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "jmr/clifford.hpp"
#include "jmr/error.hpp"
#include "jmr/feasibility.hpp"
#include "jmr/hypergraph.hpp"
#include "jmr/matrix.hpp"
#include "jmr/povm.hpp"
#include "jmr/realization.hpp"

namespace jmr::io {

using Json = nlohmann::json;

namespace detail {

inline const Json &field(const Json &j, const char *key, const char *what) {
    if (!j.is_object()) {
        throw ParseError(std::string(what) + ": expected a JSON object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(std::string(what) + ": missing field '" + key + "'");
    }
    return *it;
}

inline std::size_t positive_size(const Json &j, const char *what) {
    if (!j.is_number_integer() || j.get<long long>() <= 0) {
        throw ParseError(std::string(what) + ": expected a positive integer");
    }
    return j.get<std::size_t>();
}

inline double number(const Json &j, const char *what) {
    if (!j.is_number()) {
        throw ParseError(std::string(what) + ": expected a number");
    }
    return j.get<double>();
}

inline std::vector<std::string> string_list(const Json &j, const char *what) {
    if (!j.is_array()) {
        throw ParseError(std::string(what) + ": expected an array of strings");
    }
    std::vector<std::string> out;
    for (const auto &s : j) {
        if (!s.is_string()) {
            throw ParseError(std::string(what) + ": expected an array of strings");
        }
        out.push_back(s.get<std::string>());
    }
    return out;
}

inline Outcome outcome(const Json &j, const char *what) {
    if (!j.is_number_integer()) {
        throw ParseError(std::string(what) + ": outcome labels must be integers");
    }
    return j.get<Outcome>();
}

} // namespace detail

inline Json to_json(const ComplexMatrix &m) {
    Json entries = Json::array();
    for (const auto &z : m.entries()) {
        entries.push_back(Json::array({z.real(), z.imag()}));
    }
    return Json{{"dim", m.dim()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const Json &j) {
    const std::size_t dim = detail::positive_size(detail::field(j, "dim", "matrix"), "matrix dim");
    const Json &entries = detail::field(j, "entries", "matrix");
    if (!entries.is_array() || entries.size() != dim * dim) {
        throw ParseError("matrix: expected " + std::to_string(dim * dim) + " entries");
    }
    std::vector<Complex> data;
    data.reserve(entries.size());
    for (const auto &e : entries) {
        if (!e.is_array() || e.size() != 2) {
            throw ParseError("matrix: each entry must be a [re, im] pair");
        }
        data.emplace_back(detail::number(e[0], "matrix entry"), detail::number(e[1], "matrix entry"));
    }
    try {
        return ComplexMatrix(dim, std::move(data));
    } catch (const Error &ex) {
        throw ParseError(std::string("matrix: ") + ex.what());
    }
}

inline Json to_json(const Povm &p) {
    Json elements = Json::array();
    for (const auto &e : p.elements) {
        elements.push_back(to_json(e));
    }
    return Json{{"dim", p.dim}, {"outcomes", p.outcomes}, {"elements", std::move(elements)}};
}

inline Povm povm_from_json(const Json &j) {
    Povm p;
    p.dim = detail::positive_size(detail::field(j, "dim", "povm"), "povm dim");
    const Json &outcomes = detail::field(j, "outcomes", "povm");
    const Json &elements = detail::field(j, "elements", "povm");
    if (!outcomes.is_array() || !elements.is_array() || outcomes.size() != elements.size() ||
        outcomes.empty()) {
        throw ParseError("povm: 'outcomes' and 'elements' must be non-empty arrays of equal length");
    }
    for (const auto &o : outcomes) {
        p.outcomes.push_back(detail::outcome(o, "povm"));
    }
    for (const auto &e : elements) {
        p.elements.push_back(matrix_from_json(e));
        if (p.elements.back().dim() != p.dim) {
            throw ParseError("povm: element dimension differs from povm dim");
        }
    }
    return p;
}

inline Json to_json(const JointPovm &j) {
    Json outcomes = Json::array();
    Json elements = Json::array();
    for (std::size_t f = 0; f < j.elements.size(); ++f) {
        outcomes.push_back(j.outcome_tuple(f));
        elements.push_back(to_json(j.elements[f]));
    }
    return Json{{"dim", j.dim},
                {"components", j.components},
                {"outcomes", std::move(outcomes)},
                {"elements", std::move(elements)}};
}

inline JointPovm joint_povm_from_json(const Json &j) {
    JointPovm out;
    out.dim = detail::positive_size(detail::field(j, "dim", "joint povm"), "joint povm dim");
    const Json &comps = detail::field(j, "components", "joint povm");
    if (!comps.is_array()) {
        throw ParseError("joint povm: 'components' must be an array");
    }
    for (const auto &c : comps) {
        if (!c.is_array() || c.empty()) {
            throw ParseError("joint povm: each component must be a non-empty outcome array");
        }
        std::vector<Outcome> labels;
        for (const auto &o : c) {
            labels.push_back(detail::outcome(o, "joint povm"));
        }
        out.components.push_back(std::move(labels));
    }
    const Json &elements = detail::field(j, "elements", "joint povm");
    if (!elements.is_array() || elements.size() != out.product_size()) {
        throw ParseError("joint povm: element count must equal the outcome product size");
    }
    for (const auto &e : elements) {
        out.elements.push_back(matrix_from_json(e));
    }
    return out;
}

inline Json to_json(const CliffordFamily &fam) {
    Json arr = Json::array();
    for (const auto &g : fam.gammas) {
        arr.push_back(to_json(g));
    }
    return arr;
}

inline Json to_json(const CliffordReport &r) {
    Json violations = Json::array();
    for (const auto &v : r.violations) {
        violations.push_back(Json{{"relation", to_string(v.kind)},
                                  {"generators", Json::array({v.j + 1, v.k + 1})},
                                  {"residual", v.residual}});
    }
    return Json{{"passed", r.passed},
                {"max_residual", r.max_residual},
                {"trace_checked", r.trace_checked},
                {"violations", std::move(violations)}};
}

inline JmHypergraph hypergraph_from_json(const Json &j) {
    if (!j.is_object()) {
        throw ParseError("hypergraph: expected a JSON object");
    }
    const auto vertices = detail::string_list(detail::field(j, "vertices", "hypergraph"), "hypergraph vertices");
    ClosureMode mode = ClosureMode::facets;
    if (auto it = j.find("closure"); it != j.end()) {
        if (*it == "facets") {
            mode = ClosureMode::facets;
        } else if (*it == "explicit") {
            mode = ClosureMode::explicit_edges;
        } else {
            throw ParseError("hypergraph: 'closure' must be \"facets\" or \"explicit\"");
        }
    }
    std::vector<VertexSet> edges;
    if (auto it = j.find("edges"); it != j.end()) {
        if (!it->is_array()) {
            throw ParseError("hypergraph: 'edges' must be an array");
        }
        std::unordered_map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            index.emplace(vertices[i], i);
        }
        for (const auto &e : *it) {
            VertexSet s;
            for (const auto &name : detail::string_list(e, "hypergraph edge")) {
                auto f = index.find(name);
                if (f == index.end()) {
                    throw ParseError("hypergraph: edge references unknown vertex '" + name + "'");
                }
                s.push_back(f->second);
            }
            edges.push_back(std::move(s));
        }
    }
    return JmHypergraph(vertices, edges, mode);
}

inline JmHypergraph parse_hypergraph(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &ex) {
        throw ParseError(std::string("hypergraph: invalid JSON: ") + ex.what());
    }
    return hypergraph_from_json(j);
}

inline Json sets_to_json(const JmHypergraph &h, const std::vector<VertexSet> &sets) {
    Json arr = Json::array();
    for (const auto &s : sets) {
        arr.push_back(h.names_of(s));
    }
    return arr;
}

/// Facet form: the smallest document that reproduces h.
inline Json to_json(const JmHypergraph &h) {
    std::vector<VertexSet> facets;
    for (const auto &f : h.facets()) {
        if (f.size() >= 2) {
            facets.push_back(f);
        }
    }
    return Json{{"vertices", h.vertices()}, {"closure", "facets"}, {"edges", sets_to_json(h, facets)}};
}

inline Json to_json(const std::vector<MinimalIncompatibleSet> &sets, const JmHypergraph &h) {
    Json arr = Json::array();
    for (const auto &s : sets) {
        arr.push_back(h.names_of(s.members));
    }
    return arr;
}

inline Json to_json(const Realization &r) {
    const JmHypergraph &h = r.hypergraph;
    Json blocks = Json::array();
    for (const auto &b : r.blocks) {
        Json povms = Json::object();
        for (std::size_t v = 0; v < h.vertex_count(); ++v) {
            povms[h.name(v)] = to_json(b.povms[v]);
        }
        blocks.push_back(Json{{"members", h.names_of(b.members)},
                              {"dim", b.dim},
                              {"offset", b.offset},
                              {"eta", b.eta},
                              {"povms", std::move(povms)}});
    }
    Json povms = Json::object();
    for (std::size_t v = 0; v < h.vertex_count(); ++v) {
        povms[h.name(v)] = to_json(r.assembled[v]);
    }
    return Json{{"hypergraph", to_json(h)},
                {"total_dim", r.total_dim},
                {"blocks", std::move(blocks)},
                {"povms", std::move(povms)}};
}

/// Loads a realization as written, without reassembling it, so that
/// verify_realization sees exactly what the file contains.
inline Realization realization_from_json(const Json &j) {
    Realization r;
    r.hypergraph = hypergraph_from_json(detail::field(j, "hypergraph", "realization"));
    const JmHypergraph &h = r.hypergraph;
    r.total_dim = detail::positive_size(detail::field(j, "total_dim", "realization"), "realization total_dim");

    auto per_vertex = [&](const Json &obj, const char *what) {
        if (!obj.is_object()) {
            throw ParseError(std::string(what) + ": 'povms' must be an object keyed by vertex");
        }
        std::vector<Povm> out;
        for (const auto &name : h.vertices()) {
            auto it = obj.find(name);
            if (it == obj.end()) {
                throw ParseError(std::string(what) + ": no POVM for vertex '" + name + "'");
            }
            out.push_back(povm_from_json(*it));
        }
        if (obj.size() != h.vertex_count()) {
            throw ParseError(std::string(what) + ": POVM for a vertex not in the hypergraph");
        }
        return out;
    };

    const Json &blocks = detail::field(j, "blocks", "realization");
    if (!blocks.is_array() || blocks.empty()) {
        throw ParseError("realization: 'blocks' must be a non-empty array");
    }
    for (const auto &bj : blocks) {
        RealizationBlock b;
        b.members = h.indices_of(detail::string_list(detail::field(bj, "members", "block"), "block members"));
        b.dim = detail::positive_size(detail::field(bj, "dim", "block"), "block dim");
        if (auto it = bj.find("offset"); it != bj.end() && it->is_number_integer()) {
            b.offset = it->get<std::size_t>();
        }
        b.eta = detail::number(detail::field(bj, "eta", "block"), "block eta");
        b.povms = per_vertex(detail::field(bj, "povms", "block"), "block");
        r.blocks.push_back(std::move(b));
    }
    r.assembled = per_vertex(detail::field(j, "povms", "realization"), "realization");
    return r;
}

inline Json to_json(const RealizationReport &rep) {
    Json checks = Json::array();
    for (const auto &c : rep.checks) {
        checks.push_back(Json{{"kind", to_string(c.kind)},
                              {"target", c.target},
                              {"passed", c.passed},
                              {"residual", c.residual},
                              {"detail", c.detail},
                              {"heuristic", c.heuristic}});
    }
    return Json{{"passed", rep.passed}, {"failures", rep.failures()}, {"checks", std::move(checks)}};
}

inline Json to_json(const FeasibilityReport &rep) {
    return Json{{"status", to_string(rep.status)},
                {"heuristic", rep.heuristic()},
                {"residual", rep.residual},
                {"iterations", rep.iterations},
                {"residual_history_length", rep.residual_history.size()},
                {"witness", rep.witness ? to_json(*rep.witness) : Json(nullptr)}};
}

inline std::vector<Povm> povm_list_from_json(const Json &j) {
    const Json *arr = &j;
    if (j.is_object()) {
        arr = &detail::field(j, "povms", "povm list");
    }
    if (!arr->is_array() || arr->empty()) {
        throw ParseError("povm list: expected a non-empty array of POVMs");
    }
    std::vector<Povm> out;
    for (const auto &p : *arr) {
        out.push_back(povm_from_json(p));
    }
    return out;
}

} // namespace jmr::io
