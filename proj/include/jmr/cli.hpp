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
 * The `jmr` command line. Lives in a header so tests can drive it with
 * in-memory streams.
 *
 * Exit codes: 0 success, 1 verification failure, 2 input or usage error.
 * Data goes to stdout (or the -o file); diagnostics go to stderr.
 */

#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jmr/clifford.hpp"
#include "jmr/error.hpp"
#include "jmr/feasibility.hpp"
#include "jmr/hypergraph.hpp"
#include "jmr/io.hpp"
#include "jmr/realization.hpp"

namespace jmr::cli {

enum class OutputFormat { json, pretty };

struct RunConfig {
    std::string subcommand;
    std::string input;
    std::string output;  ///< empty: stdout
    Tolerance tol;
    EtaPolicy eta_policy = EtaPolicy::specker;
    bool cross_check_oracle = false;
    bool clifford_check = false;
    std::size_t clifford_n = 0;
    std::size_t enumerate_vertices = 0;
    std::size_t max_iter = FeasibilityOptions{}.max_iter;
    std::size_t max_set_size = 16;
    OutputFormat format = OutputFormat::json;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInputError = 2;

namespace detail {

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline io::Json read_json(const std::string &path) {
    try {
        return io::Json::parse(read_file(path));
    } catch (const io::Json::parse_error &ex) {
        throw ParseError("'" + path + "' is not valid JSON: " + ex.what());
    }
}

inline void emit(const RunConfig &cfg, const io::Json &j, std::ostream &out) {
    const std::string text = (cfg.format == OutputFormat::pretty ? j.dump(2) : j.dump()) + "\n";
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
        throw ParseError("cannot write '" + cfg.output + "'");
    }
    f << text;
}

inline int dispatch(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (!cfg.tol.valid()) {
        err << "error: tolerances must be strictly positive\n";
        return kExitInputError;
    }
    const std::string &cmd = cfg.subcommand;
    if (cmd == "validate") {
        const JmHypergraph h = io::hypergraph_from_json(read_json(cfg.input));
        io::Json j = io::to_json(h);
        j["valid"] = true;
        j["edge_count"] = h.edge_count();
        emit(cfg, j, out);
        return kExitOk;
    }
    if (cmd == "minimal-sets") {
        const JmHypergraph h = io::hypergraph_from_json(read_json(cfg.input));
        const auto sets = minimal_incompatible_sets(h, {cfg.max_set_size});
        emit(cfg, io::to_json(sets, h), out);
        return kExitOk;
    }
    if (cmd == "clifford") {
        const CliffordFamily fam = build_clifford(cfg.clifford_n);
        if (!cfg.clifford_check) {
            emit(cfg, io::to_json(fam), out);
            return kExitOk;
        }
        const CliffordReport rep = check_clifford(fam, cfg.tol);
        emit(cfg, io::Json{{"gammas", io::to_json(fam)}, {"report", io::to_json(rep)}}, out);
        return rep.passed ? kExitOk : kExitVerifyFailed;
    }
    if (cmd == "realize") {
        const JmHypergraph h = io::hypergraph_from_json(read_json(cfg.input));
        RealizeOptions opts;
        opts.eta_policy = cfg.eta_policy;
        opts.enumeration.max_set_size = cfg.max_set_size;
        emit(cfg, io::to_json(realize(h, opts)), out);
        return kExitOk;
    }
    if (cmd == "verify") {
        const Realization r = io::realization_from_json(read_json(cfg.input));
        VerifyOptions opts;
        opts.cross_check_oracle = cfg.cross_check_oracle;
        opts.oracle.max_iter = cfg.max_iter;
        const RealizationReport rep = verify_realization(r, cfg.tol, opts);
        emit(cfg, io::to_json(rep), out);
        if (!rep.passed) {
            err << "verification failed: " << rep.failures() << " check(s)\n";
            return kExitVerifyFailed;
        }
        return kExitOk;
    }
    if (cmd == "feasibility") {
        const auto povms = io::povm_list_from_json(read_json(cfg.input));
        FeasibilityOptions opts;
        opts.max_iter = cfg.max_iter;
        const FeasibilityReport rep = decide_joint_measurability(povms, cfg.tol, opts);
        if (rep.heuristic()) {
            err << "note: '" << to_string(rep.status) << "' is a heuristic verdict\n";
        }
        emit(cfg, io::to_json(rep), out);
        return kExitOk;
    }
    if (cmd == "enumerate") {
        if (cfg.enumerate_vertices > 5) {
            throw LimitError("enumerate supports at most 5 vertices");
        }
        io::Json arr = io::Json::array();
        enumerate_complexes(cfg.enumerate_vertices, [&](const JmHypergraph &h) { arr.push_back(io::to_json(h)); });
        emit(cfg, arr, out);
        return kExitOk;
    }
    err << "error: unknown subcommand '" << cmd << "'\n";
    return kExitInputError;
}

} // namespace detail

/// args excludes the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    CLI::App app{"Quantum realizations of joint measurability hypergraphs"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("-o,--output", cfg.output, "Write data to this file instead of stdout");
        sub->add_option("--format", cfg.format, "Output format (pretty is not byte-stable)")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, OutputFormat>{{"json", OutputFormat::json}, {"pretty", OutputFormat::pretty}}));
        sub->add_option("--tol", cfg.tol.feas_tol, "Feasibility / marginal residual tolerance");
        sub->add_option("--eq-tol", cfg.tol.eq_tol, "Entrywise equality tolerance");
        sub->add_option("--psd-tol", cfg.tol.psd_tol, "Tolerated eigenvalue negativity");
    };
    auto add_input = [&](CLI::App *sub, const char *what) {
        sub->add_option("file", cfg.input, what)->required();
    };

    auto *validate = app.add_subcommand("validate", "Parse and normalize a hypergraph");
    add_input(validate, "Hypergraph JSON");
    add_common(validate);

    auto *minimal = app.add_subcommand("minimal-sets", "List the minimal incompatible sets");
    add_input(minimal, "Hypergraph JSON");
    add_common(minimal);
    minimal->add_option("--max-set-size", cfg.max_set_size, "Abort beyond this set size");

    auto *clifford = app.add_subcommand("clifford", "Emit Clifford generators");
    clifford->add_option("--n", cfg.clifford_n, "Number of generators")->required()->check(CLI::PositiveNumber);
    clifford->add_flag("--check", cfg.clifford_check, "Append the relation report");
    add_common(clifford);

    auto *realize_cmd = app.add_subcommand("realize", "Build a POVM realization of a hypergraph");
    add_input(realize_cmd, "Hypergraph JSON");
    add_common(realize_cmd);
    realize_cmd->add_option("--eta-policy", cfg.eta_policy, "Purity choice inside the allowed window")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, EtaPolicy>{{"specker", EtaPolicy::specker}, {"midpoint", EtaPolicy::midpoint}}));
    realize_cmd->add_option("--max-set-size", cfg.max_set_size, "Abort beyond this set size");

    auto *verify = app.add_subcommand("verify", "Verify a realization file");
    add_input(verify, "Realization JSON");
    add_common(verify);
    verify->add_flag("--cross-check-oracle", cfg.cross_check_oracle, "Also run the numerical oracle (heuristic)");
    verify->add_option("--max-iter", cfg.max_iter, "Oracle iteration budget");

    auto *feas = app.add_subcommand("feasibility", "Numerically decide joint measurability of POVMs");
    add_input(feas, "POVM list JSON");
    add_common(feas);
    feas->add_option("--max-iter", cfg.max_iter, "Iteration budget");

    auto *enumerate = app.add_subcommand("enumerate", "Emit every downward-closed hypergraph on n <= 5 vertices");
    enumerate->add_option("--vertices", cfg.enumerate_vertices, "Vertex count")->required();
    add_common(enumerate);

    std::vector<const char *> argv{"jmr"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &ex) {
        err << "error: " << ex.what() << "\n\n" << app.help();
        return kExitInputError;
    }
    for (auto *sub : app.get_subcommands()) {
        cfg.subcommand = sub->get_name();
    }

    try {
        return detail::dispatch(cfg, out, err);
    } catch (const Error &ex) {
        err << "error: " << ex.what() << "\n";
        return kExitInputError;
    }
}

inline int main(int argc, char **argv) {
    return run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

} // namespace jmr::cli
