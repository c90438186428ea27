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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>

#include "jmr/cli.hpp"
#include "jmr/io.hpp"
#include "test_util.hpp"

using namespace jmr;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
  public:
    TempDir() : path_(fs::temp_directory_path() / ("jmr_test_" + std::to_string(::getpid()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string &name) const { return (path_ / name).string(); }
    void write(const std::string &name, const std::string &text) const {
        std::ofstream(file(name), std::ios::binary) << text;
    }

  private:
    fs::path path_;
};

TEST(RealizationJson, RoundTripIsExact) {
    for (const char *name : {"specker.json", "four_vertex.json", "simplex3.json"}) {
        const auto r = realize(testutil::load_fixture(name));
        const auto text = io::to_json(r).dump();
        const auto back = io::realization_from_json(io::Json::parse(text));
        EXPECT_EQ(back.hypergraph, r.hypergraph);
        EXPECT_EQ(back.total_dim, r.total_dim);
        ASSERT_EQ(back.assembled.size(), r.assembled.size());
        for (std::size_t v = 0; v < r.assembled.size(); ++v) {
            EXPECT_EQ(back.assembled[v], r.assembled[v]);
        }
        ASSERT_EQ(back.blocks.size(), r.blocks.size());
        for (std::size_t i = 0; i < r.blocks.size(); ++i) {
            EXPECT_EQ(back.blocks[i].members, r.blocks[i].members);
            EXPECT_EQ(back.blocks[i].eta, r.blocks[i].eta);
            EXPECT_EQ(back.blocks[i].povms, r.blocks[i].povms);
        }
        EXPECT_EQ(io::to_json(back).dump(), text);
    }
}

TEST(PovmJson, RoundTripAndErrors) {
    const auto p = make_noisy_observable(build_clifford(3), 2, 0.4).povm;
    EXPECT_EQ(io::povm_from_json(io::Json::parse(io::to_json(p).dump())), p);
    EXPECT_THROW(io::povm_from_json(io::Json::parse(R"({"outcomes": [1], "elements": []})")), ParseError);
    const auto list = io::povm_list_from_json(io::Json::parse(testutil::read_text(
        testutil::fixture_path("pauli_pair_eta070.json"))));
    EXPECT_EQ(list.size(), 2u);
}

TEST(JointPovmJson, RoundTrip) {
    const auto j = make_joint_povm(build_clifford(3), {0, 1, 2}, 0.5);
    const auto back = io::joint_povm_from_json(io::Json::parse(io::to_json(j).dump()));
    EXPECT_EQ(back.components, j.components);
    EXPECT_EQ(back.elements, j.elements);
}

TEST(Cli, MinimalSetsFourVertex) {
    const auto r = run_cli({"minimal-sets", testutil::fixture_path("four_vertex.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "[[\"M1\",\"M3\"],[\"M1\",\"M2\",\"M4\"],[\"M2\",\"M3\",\"M4\"]]\n");
}

TEST(Cli, MinimalSetsLimit) {
    const auto r = run_cli({"minimal-sets", "--max-set-size", "2", testutil::fixture_path("four_vertex.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, ValidateNormalizes) {
    const auto r = run_cli({"validate", testutil::fixture_path("specker.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = io::Json::parse(r.out);
    EXPECT_TRUE(j.at("valid").get<bool>());
    EXPECT_EQ(j.at("edge_count").get<int>(), 7);
}

TEST(Cli, RealizeThenVerify) {
    TempDir tmp;
    const auto r = run_cli({"realize", testutil::fixture_path("specker.json"), "-o", tmp.file("r.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    const auto v = run_cli({"verify", tmp.file("r.json")});
    EXPECT_EQ(v.code, 0) << v.err;
    EXPECT_TRUE(io::Json::parse(v.out).at("passed").get<bool>());
}

TEST(Cli, VerifyDetectsTampering) {
    TempDir tmp;
    const auto h = testutil::specker();
    auto real = realize(h);
    real.blocks[0] = make_block(h, real.blocks[0].members, 0.5);
    assemble(real);
    tmp.write("bad.json", io::to_json(real).dump());
    const auto v = run_cli({"verify", tmp.file("bad.json")});
    EXPECT_EQ(v.code, 1);
    const auto j = io::Json::parse(v.out);
    EXPECT_FALSE(j.at("passed").get<bool>());
    EXPECT_EQ(j.at("failures").get<int>(), 1);
    EXPECT_NE(v.err.find("verification failed"), std::string::npos);
}

TEST(Cli, VerifyWithOracle) {
    TempDir tmp;
    ASSERT_EQ(run_cli({"realize", testutil::fixture_path("four_vertex.json"), "-o", tmp.file("r.json")}).code, 0);
    const auto v = run_cli({"verify", "--cross-check-oracle", tmp.file("r.json")});
    EXPECT_EQ(v.code, 0) << v.out;
    bool saw_oracle = false;
    const auto report = io::Json::parse(v.out);
    for (const auto &c : report.at("checks")) {
        saw_oracle |= c.at("kind") == "oracle";
    }
    EXPECT_TRUE(saw_oracle);
}

TEST(Cli, InputErrorsExitTwo) {
    TempDir tmp;
    tmp.write("broken.json", "{\"vertices\": [\"A\",");
    tmp.write("unknown.json", R"({"vertices": ["A"], "edges": [["A", "B"]]})");
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"realize", "--no-such-flag", testutil::fixture_path("specker.json")}).code, 2);
    EXPECT_EQ(run_cli({"realize", tmp.file("broken.json")}).code, 2);
    EXPECT_EQ(run_cli({"realize", tmp.file("unknown.json")}).code, 2);
    EXPECT_EQ(run_cli({"realize", tmp.file("missing.json")}).code, 2);
    EXPECT_EQ(run_cli({"verify", testutil::fixture_path("specker.json")}).code, 2);
    EXPECT_EQ(run_cli({"realize", "--eta-policy", "greedy", testutil::fixture_path("specker.json")}).code, 2);
    EXPECT_EQ(run_cli({"realize", "--tol", "0", testutil::fixture_path("specker.json")}).code, 2);
    EXPECT_EQ(run_cli({}).code, 2);
}

TEST(Cli, HelpExitsZero) {
    const auto r = run_cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("realize"), std::string::npos);
}

TEST(Cli, OutputIsByteStable) {
    for (const char *name : {"specker.json", "four_vertex.json"}) {
        const auto a = run_cli({"realize", testutil::fixture_path(name)});
        const auto b = run_cli({"realize", testutil::fixture_path(name)});
        ASSERT_EQ(a.code, 0);
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Cli, CliffordWithAndWithoutCheck) {
    const auto plain = run_cli({"clifford", "--n", "3"});
    ASSERT_EQ(plain.code, 0);
    const auto gammas = io::Json::parse(plain.out);
    ASSERT_TRUE(gammas.is_array());
    EXPECT_EQ(gammas.size(), 3u);
    EXPECT_EQ(io::matrix_from_json(gammas[1]), pauli::x());

    const auto checked = run_cli({"clifford", "--n", "6", "--check"});
    ASSERT_EQ(checked.code, 0);
    const auto j = io::Json::parse(checked.out);
    EXPECT_TRUE(j.at("report").at("passed").get<bool>());
    EXPECT_EQ(j.at("gammas").size(), 6u);

    EXPECT_EQ(run_cli({"clifford", "--n", "0"}).code, 2);
}

TEST(Cli, FeasibilityOnFixtures) {
    const auto ok = run_cli({"feasibility", testutil::fixture_path("pauli_pair_eta070.json")});
    EXPECT_EQ(ok.code, 0);
    const auto j = io::Json::parse(ok.out);
    EXPECT_EQ(j.at("status"), "feasible");
    EXPECT_FALSE(j.at("witness").is_null());
    EXPECT_TRUE(ok.err.empty());

    const auto sharp = run_cli({"feasibility", testutil::fixture_path("pauli_pair_sharp.json")});
    EXPECT_EQ(sharp.code, 0);
    EXPECT_EQ(io::Json::parse(sharp.out).at("status"), "presumed_infeasible");
    EXPECT_NE(sharp.err.find("heuristic"), std::string::npos);
}

TEST(Cli, Enumerate) {
    const auto r = run_cli({"enumerate", "--vertices", "3"});
    ASSERT_EQ(r.code, 0);
    const auto arr = io::Json::parse(r.out);
    ASSERT_EQ(arr.size(), 9u);
    for (const auto &h : arr) {
        EXPECT_NO_THROW(io::hypergraph_from_json(h));
    }
    EXPECT_EQ(run_cli({"enumerate", "--vertices", "6"}).code, 2);
}

TEST(Cli, PrettyFormatParsesToSameDocument) {
    const auto compact = run_cli({"realize", testutil::fixture_path("four_vertex.json")});
    const auto pretty = run_cli({"realize", "--format", "pretty", testutil::fixture_path("four_vertex.json")});
    ASSERT_EQ(pretty.code, 0);
    EXPECT_EQ(io::Json::parse(compact.out), io::Json::parse(pretty.out));
}

TEST(Cli, EveryFixtureRoundTrips) {
    TempDir tmp;
    for (const char *name : {"specker.json", "four_vertex.json", "simplex2.json", "simplex3.json", "simplex4.json",
                             "incompatible_pair.json"}) {
        for (const char *policy : {"specker", "midpoint"}) {
            const auto out = tmp.file("out.json");
            const auto r = run_cli({"realize", "--eta-policy", policy, testutil::fixture_path(name), "-o", out});
            ASSERT_EQ(r.code, 0) << name << ": " << r.err;
            const auto v = run_cli({"verify", out});
            EXPECT_EQ(v.code, 0) << name << " " << policy << ": " << v.out;
        }
    }
}

} // namespace
