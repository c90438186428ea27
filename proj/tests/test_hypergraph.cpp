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

#include <cstdint>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "jmr/hypergraph.hpp"
#include "jmr/io.hpp"
#include "test_util.hpp"

using namespace jmr;
using jmr::testutil::bits_to_set;

namespace {

std::vector<std::vector<std::string>> names(const JmHypergraph &h,
                                            const std::vector<MinimalIncompatibleSet> &sets) {
    std::vector<std::vector<std::string>> out;
    for (const auto &s : sets) {
        out.push_back(h.names_of(s.members));
    }
    return out;
}

TEST(ParseHypergraph, SpeckerFixture) {
    const auto h = testutil::specker();
    EXPECT_EQ(h.vertices(), (std::vector<std::string>{"M1", "M2", "M3"}));
    // empty set, three singletons, three pairs
    EXPECT_EQ(h.edge_count(), 7u);
    EXPECT_TRUE(h.is_edge(std::vector<std::string>{"M1", "M2"}));
    EXPECT_TRUE(h.is_edge(std::vector<std::string>{"M3", "M1"}));
    EXPECT_FALSE(h.is_edge(std::vector<std::string>{"M1", "M2", "M3"}));
}

TEST(ParseHypergraph, SingleVertexNoFacets) {
    const auto h = io::parse_hypergraph(R"({"vertices": ["A"], "closure": "facets", "edges": []})");
    EXPECT_EQ(h.edges(), (std::vector<VertexSet>{{}, {0}}));
}

TEST(ParseHypergraph, ExplicitClosureViolation) {
    EXPECT_THROW(io::parse_hypergraph(
                     R"({"vertices": ["A","B","C"], "closure": "explicit", "edges": [["A","B","C"],["A","B"]]})"),
                 ParseError);
    // Missing singletons are added, so only larger missing faces are violations.
    EXPECT_NO_THROW(io::parse_hypergraph(R"({"vertices": ["A","B"], "closure": "explicit", "edges": [["A","B"]]})"));
}

TEST(ParseHypergraph, Errors) {
    EXPECT_THROW(io::parse_hypergraph(R"({"vertices": ["A"], "edges": [["A","Z"]]})"), ParseError);
    EXPECT_THROW(io::parse_hypergraph(R"({"vertices": ["A","A"]})"), ParseError);
    EXPECT_THROW(io::parse_hypergraph(R"({"vertices": "A"})"), ParseError);
    EXPECT_THROW(io::parse_hypergraph(R"({"edges": []})"), ParseError);
    EXPECT_THROW(io::parse_hypergraph(R"({"vertices": [], "closure": "maybe"})"), ParseError);
    EXPECT_THROW(io::parse_hypergraph("{not json"), ParseError);
    EXPECT_THROW(io::parse_hypergraph("[1,2]"), ParseError);
}

TEST(ParseHypergraph, DuplicateEdgesMerge) {
    const auto h = io::parse_hypergraph(
        R"({"vertices": ["A","B"], "edges": [["A","B"],["B","A"],["A","B","A"]]})");
    EXPECT_EQ(h.edge_count(), 4u);
}

TEST(ParseHypergraph, EmptyVertexSet) {
    const auto h = io::parse_hypergraph(R"({"vertices": []})");
    EXPECT_EQ(h.vertex_count(), 0u);
    EXPECT_TRUE(h.is_edge(VertexSet{}));
    EXPECT_TRUE(minimal_incompatible_sets(h).empty());
}

TEST(ParseHypergraph, NormalizationIdempotent) {
    for (const auto &h : testutil::brute_complexes(4)) {
        const auto again = io::hypergraph_from_json(io::to_json(h));
        EXPECT_EQ(again, h);
        std::vector<VertexSet> edges = h.edges();
        const JmHypergraph explicit_again(h.vertices(), edges, ClosureMode::explicit_edges);
        EXPECT_EQ(explicit_again, h);
    }
}

TEST(IsEdge, Basics) {
    const auto h = testutil::specker();
    EXPECT_TRUE(h.is_edge(VertexSet{}));
    EXPECT_TRUE(h.is_edge(VertexSet{0, 1}));
    EXPECT_FALSE(h.is_edge(VertexSet{0, 1, 2}));
    EXPECT_THROW((void)h.is_edge(VertexSet{7}), ParseError);
    EXPECT_THROW((void)h.is_edge(std::vector<std::string>{"M9"}), ParseError);
}

TEST(MinimalSets, FourVertex) {
    const auto h = testutil::four_vertex();
    const auto sets = minimal_incompatible_sets(h);
    EXPECT_EQ(names(h, sets), (std::vector<std::vector<std::string>>{
                                  {"M1", "M3"}, {"M1", "M2", "M4"}, {"M2", "M3", "M4"}}));
}

TEST(MinimalSets, CompleteSimplexHasNone) {
    EXPECT_TRUE(minimal_incompatible_sets(testutil::load_fixture("simplex3.json")).empty());
    EXPECT_TRUE(minimal_incompatible_sets(testutil::load_fixture("simplex4.json")).empty());
}

TEST(MinimalSets, Specker) {
    const auto h = testutil::specker();
    EXPECT_EQ(names(h, minimal_incompatible_sets(h)),
              (std::vector<std::vector<std::string>>{{"M1", "M2", "M3"}}));
}

TEST(MinimalSets, BoundaryOfSimplex) {
    // every proper subset of 6 vertices compatible, the whole set not
    std::vector<std::string> v{"a", "b", "c", "d", "e", "f"};
    std::vector<VertexSet> facets;
    for (std::size_t drop = 0; drop < 6; ++drop) {
        VertexSet f;
        for (std::size_t i = 0; i < 6; ++i) {
            if (i != drop) {
                f.push_back(i);
            }
        }
        facets.push_back(f);
    }
    const JmHypergraph h(v, facets, ClosureMode::facets);
    const auto sets = minimal_incompatible_sets(h);
    ASSERT_EQ(sets.size(), 1u);
    EXPECT_EQ(sets[0].members, (VertexSet{0, 1, 2, 3, 4, 5}));
    EXPECT_THROW(minimal_incompatible_sets(h, {4}), LimitError);
    EXPECT_NO_THROW(minimal_incompatible_sets(h, {6}));
}

TEST(MinimalSets, VertexOrderFollowsDocument) {
    const auto h = io::parse_hypergraph(R"({"vertices": ["Z", "A"], "edges": []})");
    const auto sets = minimal_incompatible_sets(h);
    ASSERT_EQ(sets.size(), 1u);
    EXPECT_EQ(h.names_of(sets[0].members), (std::vector<std::string>{"Z", "A"}));
}

TEST(EnumerateComplexes, MatchesBruteForceUpToFour) {
    for (std::size_t n = 0; n <= 4; ++n) {
        std::vector<JmHypergraph> gen;
        enumerate_complexes(n, [&](const JmHypergraph &h) { gen.push_back(h); });
        const auto brute = testutil::brute_complexes(n);
        ASSERT_EQ(gen.size(), brute.size()) << "n = " << n;
        for (const auto &b : brute) {
            EXPECT_NE(std::find(gen.begin(), gen.end(), b), gen.end());
        }
    }
}

TEST(EnumerateComplexes, KnownCounts) {
    // Simplicial complexes on n labeled vertices containing every vertex.
    const std::size_t expected[] = {1, 1, 2, 9, 114, 6894};
    for (std::size_t n = 0; n <= 5; ++n) {
        std::size_t count = 0;
        enumerate_complexes(n, [&](const JmHypergraph &) { ++count; });
        EXPECT_EQ(count, expected[n]) << "n = " << n;
    }
}

// Completeness and characterization against 2^|V| brute force, |V| <= 5.
TEST(MinimalSets, BruteForcePropertyUpToFive) {
    for (std::size_t n = 0; n <= 5; ++n) {
        enumerate_complexes(n, [&](const JmHypergraph &h) {
            const auto sets = minimal_incompatible_sets(h);
            std::vector<VertexSet> got;
            for (const auto &s : sets) {
                got.push_back(s.members);
                ASSERT_GE(s.members.size(), 2u);
                ASSERT_FALSE(h.is_edge(s.members));
                for (std::size_t drop = 0; drop < s.members.size(); ++drop) {
                    VertexSet sub = s.members;
                    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
                    ASSERT_TRUE(h.is_edge(sub));
                }
            }
            ASSERT_EQ(got, testutil::brute_minimal_non_faces(h));
            // non-edge iff contains a minimal incompatible set
            for (std::uint32_t m = 0; m < (1U << n); ++m) {
                const auto s = bits_to_set(m);
                bool contains = false;
                for (const auto &mis : got) {
                    contains |= std::includes(s.begin(), s.end(), mis.begin(), mis.end());
                }
                ASSERT_EQ(!h.is_edge(s), contains);
            }
        });
    }
}

TEST(Facets, FourVertex) {
    const auto h = testutil::four_vertex();
    EXPECT_EQ(h.facets(), (std::vector<VertexSet>{{0, 1}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
}

} // namespace
