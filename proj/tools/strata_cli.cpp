// Copyright 2026 The Strata Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "strata.hpp"

namespace {

using namespace strata;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitComputation = 2;
constexpr int kExitVerification = 3;

struct BetaGrid {
    double start = 0;
    double stop = 0;
    int count = 1;

    static BetaGrid parse(const std::string& s) {
        const auto a = s.find(':');
        const auto b = a == std::string::npos ? std::string::npos : s.find(':', a + 1);
        if (b == std::string::npos) throw ParseError("beta grid must be start:stop:count");
        BetaGrid g;
        try {
            std::size_t used = 0;
            g.start = std::stod(s.substr(0, a), &used);
            g.stop = std::stod(s.substr(a + 1, b - a - 1));
            g.count = std::stoi(s.substr(b + 1));
        } catch (const std::exception&) {
            throw ParseError("beta grid must be start:stop:count, got '" + s + "'");
        }
        if (g.count < 1) throw ParseError("beta grid count must be at least 1");
        if (!(g.start >= 0) || !(g.stop >= 0)) throw ParseError("beta must be non-negative");
        return g;
    }

    std::vector<double> values() const {
        std::vector<double> v;
        for (int i = 0; i < count; ++i) {
            v.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
        }
        return v;
    }
};

struct Common {
    std::string model;
    double beta = 1.0;
    std::string beta_grid;
    std::string witness = "both";
    int restarts = 16;
    std::uint64_t seed = 1;
    std::string out;
    int cap = kDefaultDenseCap;
    std::string trace;
};

OptimizerConfig optimizer_config(const Common& c) {
    OptimizerConfig cfg;
    cfg.restarts = c.restarts;
    cfg.seed = c.seed;
    cfg.eval.dense_cap = c.cap;
    cfg.validate();
    return cfg;
}

StateBackend load_state(const ModelId& id, double beta, int cap) {
    if (!(beta >= 0)) throw ArgumentError("beta must be non-negative");
    if (id.kind == ModelKind::File) return load_model_file(id.path, cap);
    if (id.kind == ModelKind::ClusterLimit) throw ArgumentError("cluster-limit has no finite state; use 'critical'");
    return make_model_state(id, beta);
}

struct Evaluation {
    StrataReport report;
    std::optional<OptimizeResult> wa;
    std::optional<OptimizeResult> wb;
};

/// W_B always; W_A unless only W_B is requested.
Evaluation evaluate(const StateBackend& state, const std::string& witness, const OptimizerConfig& cfg) {
    Evaluation ev;
    if (witness != "wb") ev.wa = maximize_w_a(state, cfg);
    ev.wb = maximize_w_b(state, cfg);
    std::optional<double> wa;
    if (ev.wa && witness != "wb") wa = ev.wa->value;
    ev.report = make_report(wa, ev.wb->value, n_qubits(state));
    return ev;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << text;
    if (!f) throw Error("write failed for " + path);
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
    } else {
        write_file(c.out, text);
    }
}

int cmd_compute(const Common& c, const std::string& table_path) {
    const ModelId id = ModelId::parse(c.model);
    const StateBackend state = load_state(id, c.beta, c.cap);
    const auto ev = evaluate(state, c.witness, optimizer_config(c));
    std::cout << "model=" << id.str() << "\nbeta=" << format_real(c.beta) << '\n' << ev.report.to_text();
    if (ev.wa) std::cout << "frame_wa=" << ev.wa->frame.str() << '\n';
    std::cout << "frame_wb=" << ev.wb->frame.str() << '\n';
    if (!c.out.empty()) {
        write_file(c.out, "model,beta," + StrataReport::csv_header() + "\n" + id.str() + "," + format_real(c.beta) +
                              "," + ev.report.to_csv_row() + "\n");
    }
    if (!c.trace.empty()) {
        std::string t;
        if (ev.wa) t += "# W_A\n" + ev.wa->trace_csv();
        t += "# W_B\n" + ev.wb->trace_csv();
        write_file(c.trace, t);
    }
    if (!table_path.empty()) {
        const auto& frame = ev.wa ? ev.wa->frame : ev.wb->frame;
        write_file(table_path, correlator_table_csv(full_xy_table(state, frame, optimizer_config(c).eval)));
    }
    return kExitOk;
}

int cmd_sweep(const Common& c) {
    const ModelId id = ModelId::parse(c.model);
    const auto grid = c.beta_grid.empty() ? BetaGrid{c.beta, c.beta, 1} : BetaGrid::parse(c.beta_grid);
    const auto cfg = optimizer_config(c);
    std::ostringstream os;
    os << "beta,model," << StrataReport::csv_header() << '\n';
    for (double beta : grid.values()) {
        const auto ev = evaluate(load_state(id, beta, c.cap), c.witness, cfg);
        os << format_real(beta) << ',' << id.str() << ',' << ev.report.to_csv_row() << '\n';
    }
    emit(c, os.str());
    return kExitOk;
}

int cmd_figure1(const Common& c) {
    const auto grid = BetaGrid::parse(c.beta_grid.empty() ? "0:6:61" : c.beta_grid);
    std::ostringstream os;
    os << "# thresholds: 1,2,4,8\n";
    os << "# purification_beta: " << format_real(std::log(std::sqrt(2.0) + 1.0)) << '\n';
    os << "beta,model,W_A,W_B,W_A_prescan,W_B_prescan,min_entangled_qubits,min_partiteness\n";
    for (const ModelId& id : {ModelId{ModelKind::GHZ, 5, {}}, ModelId{ModelKind::Cluster, 7, {}}}) {
        for (double beta : grid.values()) {
            const double wa = closed_form(id, beta, WitnessKind::WA);
            const double wb = closed_form(id, beta, WitnessKind::WB);
            const auto st = std::get<StabilizerThermalState>(make_model_state(id, beta));
            const auto pre_a = clifford_prescan(st, WitnessKind::WA);
            const auto pre_b = clifford_prescan(st, WitnessKind::WB);
            const auto levels = strata::strata(wa, id.n_qubits);
            os << format_real(beta) << ',' << id.str() << ',' << format_real(wa) << ',' << format_real(wb) << ','
               << format_real(pre_a.value_wa) << ',' << format_real(pre_b.value_wb) << ','
               << levels.min_entangled_qubits << ',' << levels.min_partiteness << '\n';
        }
    }
    emit(c, os.str());
    return kExitOk;
}

int cmd_critical(const Common& c, const std::vector<std::string>& models, double threshold) {
    std::vector<std::string> names = models;
    if (names.empty()) names.push_back("cluster-limit");
    std::vector<WitnessKind> kinds;
    if (c.witness != "wb") kinds.push_back(WitnessKind::WA);
    if (c.witness != "wa") kinds.push_back(WitnessKind::WB);
    std::ostringstream os;
    os << "model,kind,threshold,beta_crit\n";
    bool failed = false;
    for (const auto& name : names) {
        const ModelId id = ModelId::parse(name);
        for (WitnessKind k : kinds) {
            os << id.str() << ',' << witness_name(k) << ',' << format_real(threshold) << ',';
            try {
                os << format_fixed(critical_beta(id, k, threshold), 6) << '\n';
            } catch (const NoRootError& e) {
                os << "no-root\n";
                std::cerr << "error: " << id.str() << ' ' << witness_name(k) << ": " << e.what() << '\n';
                failed = true;
            }
        }
    }
    emit(c, os.str());
    return failed ? kExitComputation : kExitOk;
}

int cmd_verify(const Common& c, double tolerance_scale, int trials) {
    oracle::SuiteOptions opt;
    opt.seed = c.seed;
    opt.tolerance_scale = tolerance_scale;
    opt.trials = trials;
    const auto rep = oracle::run_verification_suite(opt);
    const std::string text = rep.to_text() + (rep.passed() ? "overall PASS\n" : "overall FAIL\n");
    emit(c, text);
    if (!c.out.empty()) std::cout << text;
    return rep.passed() ? kExitOk : kExitVerification;
}

int cmd_scan(const Common& c, int m, int n) {
    OptimizerConfig cfg = optimizer_config(c);
    const auto res = oracle::w_state_scan(m, n, c.seed, cfg);
    emit(c, res.to_text());
    return res.low_confidence ? kExitComputation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"strata: GHZ-projector entanglement witnesses on thermal and dense qubit states"};
    app.require_subcommand(1);
    Common c;
    std::string table_path;
    std::vector<std::string> critical_models;
    double threshold = 1.0;
    double tolerance_scale = 1.0;
    int trials = 200;
    int scan_m = 3;
    int scan_n = 5;

    auto add_common = [&](CLI::App* sub, bool needs_model) {
        auto* opt = sub->add_option("--model", c.model, "ghz:N | cluster:N | ring:N | file:<path>");
        if (needs_model) opt->required();
        sub->add_option("--beta", c.beta, "inverse temperature")->check(CLI::NonNegativeNumber);
        sub->add_option("--witness", c.witness, "wa | wb | both")->check(CLI::IsMember({"wa", "wb", "both"}));
        sub->add_option("--restarts", c.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
        sub->add_option("--seed", c.seed, "random seed");
        sub->add_option("--out", c.out, "output path");
        sub->add_option("--cap", c.cap, "largest N for dense and tensor paths")->check(CLI::PositiveNumber);
    };

    auto* compute = app.add_subcommand("compute", "evaluate W_A, W_B, W_C and strata for one model");
    add_common(compute, true);
    compute->add_option("--trace", c.trace, "write the optimizer restart trace (CSV)");
    compute->add_option("--table", table_path, "write the correlator table at the best frame (CSV)");

    auto* sweep = app.add_subcommand("sweep", "evaluate a model over a beta grid (CSV)");
    add_common(sweep, true);
    sweep->add_option("--beta-grid", c.beta_grid, "start:stop:count");

    auto* figure = app.add_subcommand("figure1", "GHZ N=5 and cluster N=7 curves with threshold annotations");
    figure->add_option("--beta-grid", c.beta_grid, "start:stop:count (default 0:6:61)");
    figure->add_option("--out", c.out, "output path");

    auto* critical = app.add_subcommand("critical", "critical beta where a closed form crosses a threshold");
    critical->add_option("--model", critical_models, "ghz:N | cluster:N | cluster-limit (repeatable)");
    critical->add_option("--witness", c.witness, "wa | wb | both")->check(CLI::IsMember({"wa", "wb", "both"}));
    critical->add_option("--threshold", threshold, "witness value to cross")->check(CLI::PositiveNumber);
    critical->add_option("--out", c.out, "output path");

    auto* verify = app.add_subcommand("verify", "run the oracle cross-check suite");
    verify->add_option("--seed", c.seed, "random seed");
    verify->add_option("--trials", trials, "random trials per identity check")->check(CLI::PositiveNumber);
    verify->add_option("--tolerance-scale", tolerance_scale, "multiply every tolerance by this factor");
    verify->add_option("--out", c.out, "also write the report here");

    auto* scan = app.add_subcommand("scan", "W-state size estimate from prefix scans");
    scan->add_option("--m", scan_m, "W-state size")->check(CLI::Range(2, 8));
    scan->add_option("--n", scan_n, "total qubits")->check(CLI::Range(2, 8));
    scan->add_option("--seed", c.seed, "placement and optimizer seed");
    scan->add_option("--restarts", c.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
    scan->add_option("--out", c.out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (compute->parsed()) return cmd_compute(c, table_path);
        if (sweep->parsed()) return cmd_sweep(c);
        if (figure->parsed()) return cmd_figure1(c);
        if (critical->parsed()) return cmd_critical(c, critical_models, threshold);
        if (verify->parsed()) return cmd_verify(c, tolerance_scale, trials);
        if (scan->parsed()) return cmd_scan(c, scan_m, scan_n);
    } catch (const ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ArgumentError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitUsage;
}
