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

// Acceptance checks. One PASS/FAIL line per criterion, followed by indented
// diagnostics. Expected values are computed here from their defining
// formulas (or by the explicit-matrix oracle), never read back from the
// library under test. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "strata.hpp"

namespace {

using namespace strata;
using Clock = std::chrono::steady_clock;

// Pinned tolerances and budgets.
constexpr double kCriticalTol = 0.01;
constexpr double kCriticalSeconds = 1.0;
constexpr double kClosedFormTol = 1e-10;
constexpr double kDenseOracleTol = 1e-8;
constexpr double kGhzSeconds = 30.0;
constexpr double kThresholdEps = 1e-9;
constexpr double kParsevalTol = 1e-12;
constexpr double kLambdaBoundTol = 1e-10;
constexpr int kParsevalTables = 1000;
constexpr int kPhysicalStates = 200;
constexpr double kSeparableMatchTol = 1e-5;
constexpr double kSeparableExcessTol = 1e-9;
constexpr int kSeparableVectors = 100;
constexpr int kProductRestarts = 16;
constexpr double kRingZTol = 1e-12;
constexpr double kFidelityLimitTol = 1e-6;
constexpr double kGhzCriticalCeiling = 0.3;
constexpr double kOptimizerTol = 1e-5;
constexpr int kOptimizerRestarts = 64;
constexpr double kBetas[] = {0.2, 0.5, 1.0, 2.0, 5.0};

int g_failed = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void verdict(int id, bool ok, const std::string& title, const std::string& summary) {
    std::printf("CRITERION %d %s  %s  (%s)\n", id, ok ? "PASS" : "FAIL", title.c_str(), summary.c_str());
    if (!ok) ++g_failed;
}

template <typename... A>
void note(const char* fmt, A... args) {
    std::printf("    ");
    if constexpr (sizeof...(A) == 0) {
        std::fputs(fmt, stdout);
    } else {
        std::printf(fmt, args...);
    }
    std::printf("\n");
}

double tanh_half(double beta) { return std::tanh(beta / 2); }

// t (1 + t)^{N-1}, u = t or t^2.
double ghz_formula(int n, double beta, WitnessKind kind) {
    const double t = tanh_half(beta);
    const double u = kind == WitnessKind::WA ? t : t * t;
    return u * std::pow(1 + u, n - 1);
}

// N = 3m + 2r: u^{m+r} (1+u^2)^{m+r-1} (1+u)^{2-r}.
double cluster_formula(int n, double beta, WitnessKind kind) {
    const int r = (2 * n) % 3;
    const int m = (n - 2 * r) / 3;
    const double t = tanh_half(beta);
    const double u = kind == WitnessKind::WA ? t : t * t;
    return std::pow(u, m + r) * std::pow(1 + u * u, m + r - 1) * std::pow(1 + u, 2 - r);
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ---------------------------------------------------------------------------

void criterion_1() {
    const auto t0 = Clock::now();
    const ModelId lim = ModelId::parse("cluster-limit");
    const double a = critical_beta(lim, WitnessKind::WA, 1.0);
    const double b = critical_beta(lim, WitnessKind::WB, 1.0);
    const double dt = seconds_since(t0);
    const bool ok = std::abs(a - 1.67) <= kCriticalTol && std::abs(b - 2.35) <= kCriticalTol && dt < kCriticalSeconds;
    // Independent residual: u (1 + u^2) = 1 at u = tanh(beta_A/2) = tanh(beta_B/2)^2.
    const double ua = tanh_half(a);
    const double ub = tanh_half(b) * tanh_half(b);
    verdict(1, ok, "cluster critical temperatures",
            "beta_A=" + fmt("%.6f", a) + " beta_B=" + fmt("%.6f", b) + " time=" + fmt("%.4fs", dt));
    note("targets 1.67 and 2.35 within %.2g; residuals u(1+u^2)-1: %.2e, %.2e", kCriticalTol,
         ua * (1 + ua * ua) - 1, ub * (1 + ub * ub) - 1);
}

struct FormulaStats {
    int rows = 0;
    int failed_rows = 0;
    double max_dev = 0;
    double max_dense_dev = 0;
    double max_pipeline_vs_oracle = 0;
    int dense_failures = 0;
    std::vector<std::string> failures;
};

// Pipeline: stabilizer backend -> clifford_prescan -> witness value, compared
// with the formula; dense oracle at the returned frame for N <= 6.
FormulaStats closed_form_protocol(const std::vector<PauliString>& gens, int n,
                                  const std::function<double(int, double, WitnessKind)>& formula,
                                  FormulaStats stats) {
    for (double beta : kBetas) {
        const StabilizerThermalState st(gens, beta);
        const auto pa = clifford_prescan(st, WitnessKind::WA);
        const auto pb = clifford_prescan(st, WitnessKind::WB);
        const double fa = formula(n, beta, WitnessKind::WA);
        const double fb = formula(n, beta, WitnessKind::WB);
        const double da = std::abs(pa.value_wa - fa);
        const double db = std::abs(pb.value_wb - fb);
        ++stats.rows;
        stats.max_dev = std::max({stats.max_dev, da, db});
        if (!(da <= kClosedFormTol && db <= kClosedFormTol)) {
            ++stats.failed_rows;
            char line[256];
            std::snprintf(line, sizeof line,
                          "N=%d beta=%g: W_A pipeline %.10f vs formula %.10f, W_B pipeline %.10f vs formula %.10f", n,
                          beta, pa.value_wa, fa, pb.value_wb, fb);
            stats.failures.emplace_back(line);
        }
        if (n <= 6) {
            const MatX rho = oracle::thermal_matrix(gens, beta);
            const double oa = oracle::explicit_w_a(rho, pa.frame);
            const double ob = oracle::explicit_w_b(rho, pb.frame);
            const double ea = std::abs(oa - fa);
            const double eb = std::abs(ob - fb);
            stats.max_pipeline_vs_oracle =
                std::max({stats.max_pipeline_vs_oracle, std::abs(oa - pa.value_wa), std::abs(ob - pb.value_wb)});
            stats.max_dense_dev = std::max({stats.max_dense_dev, ea, eb});
            if (!(ea <= kDenseOracleTol && eb <= kDenseOracleTol)) ++stats.dense_failures;
        }
    }
    return stats;
}

void criterion_2() {
    const auto t0 = Clock::now();
    FormulaStats s;
    for (int n = 2; n <= 8; ++n) s = closed_form_protocol(ghz_generators(n), n, ghz_formula, s);
    const double dt = seconds_since(t0);
    const bool ok = s.failed_rows == 0 && s.dense_failures == 0 && dt < kGhzSeconds;
    verdict(2, ok, "GHZ closed forms N=2..8",
            std::to_string(s.rows - s.failed_rows) + "/" + std::to_string(s.rows) + " rows within " +
                fmt("%.0e", kClosedFormTol) + ", dense-oracle rows off=" + std::to_string(s.dense_failures) +
                " time=" + fmt("%.2fs", dt));
    note("max |pipeline - formula| = %.3e; max |oracle at frame - formula| (N<=6) = %.3e", s.max_dev,
         s.max_dense_dev);
    note("max |pipeline - oracle at frame| (N<=6) = %.3e", s.max_pipeline_vs_oracle);
    for (const auto& f : s.failures) note("%s", f.c_str());
    if (s.failed_rows > 0) {
        note("N=2: the (z,x) plane sees XX and ZZ with weight t each, so the maximum is 2t > t(1+t);");
        note("the pipeline maximizes and the dense oracle confirms the larger value at the returned frame.");
    }
}

void criterion_3() {
    const auto t0 = Clock::now();
    FormulaStats s;
    for (int n = 4; n <= 10; ++n) s = closed_form_protocol(cluster_generators(n), n, cluster_formula, s);
    int subset_failures = 0;
    std::string subset_line;
    for (int n = 4; n <= 14; ++n) {
        const StabilizerThermalState st(cluster_generators(n), 1.0);
        int best = n + 1;
        st.for_each_group_element([&](const PauliString& g, int size) {
            if (g.support() == low_mask(n)) best = std::min(best, size);
        });
        const int r = (2 * n) % 3;
        const int m = (n - 2 * r) / 3;
        subset_line += " N" + std::to_string(n) + ":" + std::to_string(best) + "/" + std::to_string(m + r);
        if (best != m + r) ++subset_failures;
    }
    const double dt = seconds_since(t0);
    const bool ok = s.failed_rows == 0 && s.dense_failures == 0 && subset_failures == 0;
    verdict(3, ok, "cluster closed forms N=4..10",
            std::to_string(s.rows - s.failed_rows) + "/" + std::to_string(s.rows) + " rows within " +
                fmt("%.0e", kClosedFormTol) + ", dense-oracle rows off=" + std::to_string(s.dense_failures) +
                ", subset-size mismatches=" + std::to_string(subset_failures) + " time=" + fmt("%.2fs", dt));
    note("minimal full-support subset (found/m+r):%s", subset_line.c_str());
    note("max |pipeline - formula| = %.3e; max |oracle at frame - formula| (N<=6) = %.3e", s.max_dev,
         s.max_dense_dev);
    note("max |pipeline - oracle at frame| (N<=6) = %.3e", s.max_pipeline_vs_oracle);
    for (const auto& f : s.failures) note("%s", f.c_str());
    if (s.failed_rows > 0) {
        note("failing sizes have r != 0; there the prescan finds Clifford frames that beat the product");
        note("formula, and the explicit-trace oracle reproduces the larger values at those frames.");
    }
}

void criterion_4() {
    int bad = 0;
    const double ent[] = {1, 2, 4, 8};
    const int ent_level[] = {2, 3, 4, 5};
    for (int i = 0; i < 4; ++i) {
        const auto above = strata::strata(ent[i] + kThresholdEps, 5);
        const auto at = strata::strata(ent[i], 5);
        if (above.min_entangled_qubits != ent_level[i]) ++bad;
        if (at.min_entangled_qubits >= ent_level[i]) ++bad;
        note("value %g+: min_entangled_qubits=%d (want %d); at %g: %d", ent[i], above.min_entangled_qubits,
             ent_level[i], ent[i], at.min_entangled_qubits);
    }
    const double part[] = {1, 4, 8};
    const int part_level[] = {2, 3, 5};
    for (int i = 0; i < 3; ++i) {
        const auto above = strata::strata(part[i] + kThresholdEps, 5);
        const auto at = strata::strata(part[i], 5);
        if (above.min_partiteness != part_level[i]) ++bad;
        if (at.min_partiteness >= part_level[i]) ++bad;
        note("value %g+: min_partiteness=%d (want %d); at %g: %d", part[i], above.min_partiteness, part_level[i],
             part[i], at.min_partiteness);
    }
    verdict(4, bad == 0, "strata thresholds at N=5", std::to_string(bad) + " mismatches");
}

void criterion_5() {
    oracle::CheckReport rep;
    oracle::IdentityOptions opt;
    opt.parseval_tables = kParsevalTables;
    opt.physical_states = kPhysicalStates;
    for (int n = 1; n <= 6; ++n) rep.append(oracle::verify_appendix_identities(n, 200, 1000 + n, opt));

    // Library transform on the same kind of tables.
    oracle::CheckRow lib{"parseval (library transform)", 0, 0, 0, 0, kParsevalTol};
    oracle::Rng rng(77);
    for (int i = 0; i < kParsevalTables; ++i) {
        const int n = 1 + static_cast<int>(rng.below(6));
        CorrelatorTable table(n);
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
            if (!parity(y)) table.set(y, rng.uniform(-1, 1));
        }
        lib.record(std::abs(lambda_from_table(table).sum_sq() - std::ldexp(table.sum_sq(), n)));
    }
    rep.rows.push_back(lib);

    bool tol_ok = true;
    for (const auto& r : rep.rows) {
        if (r.name == "parseval" || r.name == "parseval (library transform)") tol_ok = tol_ok && r.tolerance == kParsevalTol;
        if (r.name == "sum |lambda| <= 2^N") tol_ok = tol_ok && r.tolerance == kLambdaBoundTol;
    }
    long checks = 0;
    for (const auto& r : rep.rows) checks += r.checks;
    verdict(5, rep.passed() && tol_ok, "appendix identities",
            std::to_string(checks) + " checks, " + std::to_string(kParsevalTables) + " tables and " +
                std::to_string(kPhysicalStates) + " states per N");
    std::string text = rep.to_text();
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        note("%s", text.substr(pos, nl - pos).c_str());
        pos = nl + 1;
    }
}

void criterion_6() {
    // Coefficients are paired (b_k = b_k'), since W only depends on b_k + b_k'.
    oracle::Rng rng(606);
    int exceed = 0;
    int mismatch = 0;
    double worst_gap[5] = {0, 0, 0, 0, 0};
    double worst_excess = 0;
    for (int i = 0; i < kSeparableVectors; ++i) {
        const int n = 1 + i % 4;
        std::vector<double> b(std::size_t{1} << n);
        for (std::uint64_t k = 0; k < b.size(); ++k) {
            const std::uint64_t kp = low_mask(n) ^ k;
            b[k] = k < kp ? rng.uniform(-1, 1) : b[kp];
        }
        const WitnessCoefficients w(n, b);
        const double bound = separable_bound(w);
        const double found = oracle::max_over_product_states(w, kProductRestarts, 9000 + static_cast<std::uint64_t>(i));
        const double gap = bound - found;
        worst_excess = std::max(worst_excess, -gap);
        worst_gap[n] = std::max(worst_gap[n], gap);
        if (-gap > kSeparableExcessTol) ++exceed;
        if (std::abs(gap) > kSeparableMatchTol) ++mismatch;
    }
    verdict(6, exceed == 0 && mismatch == 0, "separability bound",
            std::to_string(kSeparableVectors) + " vectors, exceed=" + std::to_string(exceed) +
                " mismatch=" + std::to_string(mismatch));
    note("largest excess over the bound: %.3e (tolerance %.0e)", worst_excess, kSeparableExcessTol);
    for (int n = 1; n <= 4; ++n) note("N=%d: largest bound - product maximum = %.3e", n, worst_gap[n]);
    if (mismatch > 0) {
        note("the bound is sound but not attained for N >= 3: product states cannot align all GHZ pairs");
        note("at once when the pair signs are mixed, so the maximum sits strictly below 2^-N sum|b|.");
    }
}

void criterion_7() {
    int z_fail = 0;
    double z_dev = 0;
    for (int n = 3; n <= 8; ++n) {
        const LocalFrame frame = oracle::ring_z_frame(n);
        for (double beta : {0.0, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0}) {
            const double lib = correlator(RingExcitationState(n, beta), XYString(n, 0), frame);
            const double ref = oracle::explicit_correlator(oracle::ring_matrix(n, beta), frame, 0);
            const double d = std::max(std::abs(lib + 1), std::abs(ref + 1));
            z_dev = std::max(z_dev, d);
            if (d > kRingZTol) ++z_fail;
        }
    }
    int wb_fail = 0;
    std::string wb_line;
    OptimizerConfig cfg;
    cfg.restarts = 1;
    for (int n = 3; n <= 8; ++n) {
        for (double beta : {0.1, 1.0, 10.0}) {
            const auto c = oracle::ring_wb_exceeds_one(n, beta, cfg);
            if (!c.exceeds_one) ++wb_fail;
            if (n == 4) wb_line += " beta=" + fmt("%g", beta) + ":" + fmt("%.5f", c.value);
        }
    }
    int fid_fail = 0;
    std::string fid_line;
    for (double beta : {0.01, 0.1, 1.0, 5.0, 20.0, 50.0}) {
        const double f = singlet_fidelity(RingExcitationState(4, beta));
        // Four sites: energies {2, 0, -2, 0} give F = (1 + tanh beta) / 2.
        const double ref = (1 + std::tanh(beta)) / 2;
        if (!(f > 0.5) || std::abs(f - ref) > 1e-12) ++fid_fail;
        fid_line += " " + fmt("%g", beta) + ":" + fmt("%.9f", f);
    }
    const double f50 = singlet_fidelity(RingExcitationState(4, 50.0));
    if (std::abs(f50 - 1) > kFidelityLimitTol) ++fid_fail;
    verdict(7, z_fail == 0 && wb_fail == 0 && fid_fail == 0, "hopping ring",
            "T_z..z off=" + std::to_string(z_fail) + " W_B<=1 cases=" + std::to_string(wb_fail) +
                " fidelity off=" + std::to_string(fid_fail));
    note("max |T_z..z + 1| over N=3..8 (library and oracle) = %.2e", z_dev);
    note("W_B at N=4:%s", wb_line.c_str());
    note("singlet fidelity at N=4:%s", fid_line.c_str());
}

void criterion_8() {
    std::vector<int> sizes;
    for (int n = 3; n <= 64; ++n) sizes.push_back(n);
    const auto res = ghz_critical_scaling(sizes);
    int not_decreasing = 0;
    double worst_residual = 0;
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        const auto& p = res.points[i];
        if (i > 0 && !(p.beta < res.points[i - 1].beta)) ++not_decreasing;
        const double t = tanh_half(p.beta);
        worst_residual = std::max(worst_residual, std::abs(t * std::pow(1 + t, p.n_qubits - 1) - 1));
    }
    const double last = res.points.back().beta;
    verdict(8, not_decreasing == 0 && last < kGhzCriticalCeiling && worst_residual < 1e-9, "GHZ persistence",
            "beta_crit(64)=" + fmt("%.6f", last) + " non-decreasing steps=" + std::to_string(not_decreasing));
    note("beta_crit: N=3 %.6f, N=8 %.6f, N=16 %.6f, N=32 %.6f, N=64 %.6f", res.points[0].beta, res.points[5].beta,
         res.points[13].beta, res.points[29].beta, last);
    note("fitted exponent of tanh(beta_crit/2) vs N: %.4f (reported only)", res.exponent);
    note("largest residual |t(1+t)^(N-1) - 1| = %.2e", worst_residual);
}

void criterion_9() {
    const auto t0 = Clock::now();
    struct Case {
        const char* name;
        int n;
        std::function<std::vector<PauliString>(int)> gens;
        std::function<double(int, double, WitnessKind)> formula;
    };
    std::vector<Case> cases;
    for (int n = 2; n <= 6; ++n) cases.push_back({"ghz", n, ghz_generators, ghz_formula});
    for (int n = 3; n <= 6; ++n) cases.push_back({"cluster", n, cluster_generators, cluster_formula});

    int rows = 0;
    int fails = 0;
    double max_dev = 0;
    double oracle_dev = 0;
    std::vector<std::string> failures;
    for (const auto& c : cases) {
        for (double beta : {0.5, 1.0, 2.0}) {
            const StateBackend st = StabilizerThermalState(c.gens(c.n), beta);
            const MatX rho = oracle::thermal_matrix(c.gens(c.n), beta);
            for (bool prescan : {true, false}) {
                OptimizerConfig cfg;
                cfg.clifford_prescan = prescan;
                cfg.restarts = prescan ? 16 : 24;
                static_assert(kOptimizerRestarts >= 24);
                for (auto kind : {WitnessKind::WA, WitnessKind::WB}) {
                    const auto res = maximize(st, kind, cfg);
                    const double got = res.value;
                    const double check = kind == WitnessKind::WA ? oracle::explicit_w_a(rho, res.frame)
                                                                 : oracle::explicit_w_b(rho, res.frame);
                    oracle_dev = std::max(oracle_dev, std::abs(check - got));
                    const double want = c.formula(c.n, beta, kind);
                    const double d = std::abs(got - want);
                    ++rows;
                    max_dev = std::max(max_dev, d);
                    if (d > kOptimizerTol) {
                        ++fails;
                        char line[200];
                        std::snprintf(line, sizeof line, "%s:%d beta=%g %s %s: optimizer %.8f vs formula %.8f",
                                      c.name, c.n, beta, witness_name(kind), prescan ? "prescan+simplex" : "simplex only",
                                      got, want);
                        failures.emplace_back(line);
                    }
                }
            }
        }
    }

    int scan_fail = 0;
    std::string scan_line;
    OptimizerConfig scfg;
    scfg.restarts = 16;
    for (int n = 2; n <= 6; ++n) {
        for (int m = 2; m <= n; ++m) {
            const auto s = oracle::w_state_scan(m, n, 100 + static_cast<std::uint64_t>(10 * n + m), scfg);
            if (s.estimated_m != m || s.low_confidence) ++scan_fail;
            scan_line += " " + std::to_string(m) + "/" + std::to_string(n) + "->" + std::to_string(s.estimated_m);
        }
    }
    const double dt = seconds_since(t0);
    verdict(9, fails == 0 && scan_fail == 0 && oracle_dev < 1e-9, "optimizer adequacy",
            std::to_string(rows - fails) + "/" + std::to_string(rows) + " optimizer rows within " +
                fmt("%.0e", kOptimizerTol) + ", W-scan misses=" + std::to_string(scan_fail) + " time=" +
                fmt("%.1fs", dt));
    note("max |optimizer - formula| = %.3e; max |optimizer - oracle at returned frame| = %.3e", max_dev, oracle_dev);
    for (const auto& f : failures) note("%s", f.c_str());
    note("W-state scan (M/N->estimate):%s", scan_line.c_str());
    if (fails > 0) {
        note("misses are GHZ N=2 and cluster sizes with r != 0, where the formula is below the true");
        note("maximum (see criteria 2 and 3); the optimizer values agree with the explicit-trace oracle.");
    }
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    std::printf("SUMMARY %d/9 criteria pass (%.1fs)\n", 9 - g_failed, seconds_since(t0));
    return g_failed == 0 ? 0 : 1;
}
