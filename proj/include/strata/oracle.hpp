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

// Brute-force reference computations. Everything here builds explicit
// matrices with Kronecker products and takes explicit traces; none of it goes
// through the stabilizer, tensor or Walsh-Hadamard paths of the library, so
// agreement between the two is evidence rather than tautology.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "strata/errors.hpp"
#include "strata/format.hpp"
#include "strata/frame.hpp"
#include "strata/models.hpp"
#include "strata/nelder_mead.hpp"
#include "strata/optimize.hpp"
#include "strata/pauli.hpp"
#include "strata/states.hpp"
#include "strata/witness.hpp"

namespace strata::oracle {

inline constexpr int kMaxOracleQubits = 8;

// ---------------------------------------------------------------------------
// Random numbers with platform-stable output

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Box-Muller; avoids the implementation-defined std::normal_distribution.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
    }
    std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)); }

  private:
    std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// Explicit matrices

inline Mat2 letter(char c) {
    Mat2 m;
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw ArgumentError(std::string("unknown Pauli letter ") + c);
    }
    return m;
}

/// op_{N-1} (x) ... (x) op_0, so qubit j is bit j of the row index.
inline MatX kron_all(const std::vector<MatX>& ops) {
    MatX out = MatX::Identity(1, 1);
    for (const auto& op : ops) {
        MatX next(op.rows() * out.rows(), op.cols() * out.cols());
        for (Eigen::Index a = 0; a < op.rows(); ++a) {
            for (Eigen::Index b = 0; b < op.cols(); ++b) {
                next.block(a * out.rows(), b * out.cols(), out.rows(), out.cols()) = op(a, b) * out;
            }
        }
        out = std::move(next);
    }
    return out;
}

/// letters[j] acts on qubit j.
inline MatX letters_matrix(const std::string& letters) {
    std::vector<MatX> ops;
    for (char c : letters) ops.push_back(letter(c));
    return kron_all(ops);
}

inline MatX pauli_string_matrix(const PauliString& p) {
    if (p.n_qubits() > kMaxOracleQubits) throw CapExceededError("oracle limited to 8 qubits");
    std::string letters;
    for (int j = 0; j < p.n_qubits(); ++j) letters.push_back(axis_char(p.at(j)));
    return p.phase().value() * letters_matrix(letters);
}

/// exp(-beta H) / Z for H = -1/2 sum_n K_n, by diagonalizing H.
inline MatX thermal_matrix(const std::vector<PauliString>& generators, double beta) {
    if (generators.empty()) throw ModelError("no generators");
    const Eigen::Index dim = Eigen::Index{1} << generators.front().n_qubits();
    MatX h = MatX::Zero(dim, dim);
    for (const auto& g : generators) h -= 0.5 * pauli_string_matrix(g);
    const Eigen::SelfAdjointEigenSolver<MatX> es(h);
    const Eigen::VectorXd e = es.eigenvalues();
    const double e0 = e.minCoeff();
    Eigen::VectorXd w(dim);
    for (Eigen::Index i = 0; i < dim; ++i) w(i) = std::exp(-beta * (e(i) - e0));
    MatX rho = es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    return rho / rho.trace().real();
}

/// Ground-state projector of H = -1/2 sum_n K_n (lowest eigenvector).
inline Eigen::VectorXcd ground_state(const std::vector<PauliString>& generators) {
    const Eigen::Index dim = Eigen::Index{1} << generators.front().n_qubits();
    MatX h = MatX::Zero(dim, dim);
    for (const auto& g : generators) h -= 0.5 * pauli_string_matrix(g);
    const Eigen::SelfAdjointEigenSolver<MatX> es(h);
    return es.eigenvectors().col(0);
}

/// Single excitation hopping on a ring: H = 1/2 sum_r (X_r X_{r+1} + Y_r Y_{r+1}),
/// thermal state projected onto the one-excitation sector.
inline MatX ring_matrix(int n, double beta) {
    if (n < 2 || n > kMaxOracleQubits) throw CapExceededError("oracle ring limited to 2..8 sites");
    const Eigen::Index dim = Eigen::Index{1} << n;
    MatX h = MatX::Zero(dim, dim);
    for (int r = 0; r < n; ++r) {
        const int s = (r + 1) % n;
        std::string xx(static_cast<std::size_t>(n), 'I');
        std::string yy = xx;
        xx[static_cast<std::size_t>(r)] = xx[static_cast<std::size_t>(s)] = 'X';
        yy[static_cast<std::size_t>(r)] = yy[static_cast<std::size_t>(s)] = 'Y';
        h += 0.5 * (letters_matrix(xx) + letters_matrix(yy));
    }
    // Restrict to the one-excitation sector |1 << r> before diagonalizing, so
    // degenerate levels outside the sector cannot mix in.
    MatX hs(n, n);
    for (int r = 0; r < n; ++r) {
        for (int q = 0; q < n; ++q) hs(r, q) = h(Eigen::Index{1} << r, Eigen::Index{1} << q);
    }
    const Eigen::SelfAdjointEigenSolver<MatX> es(hs);
    const Eigen::VectorXd e = es.eigenvalues();
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w(i) = std::exp(-beta * (e(i) - e.minCoeff()));
    const MatX sector = es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    MatX rho = MatX::Zero(dim, dim);
    for (int r = 0; r < n; ++r) {
        for (int q = 0; q < n; ++q) rho(Eigen::Index{1} << r, Eigen::Index{1} << q) = sector(r, q);
    }
    return rho / rho.trace().real();
}

/// U_hat = (x)_j U_j.
inline MatX frame_unitary(const LocalFrame& frame) {
    std::vector<MatX> ops;
    for (int j = 0; j < frame.n_qubits(); ++j) ops.emplace_back(frame.unitary(j));
    return kron_all(ops);
}

/// Tr(rho (x)_j U_j sigma_{l_j} U_j^dag).
inline double explicit_correlator(const MatX& rho, const LocalFrame& frame, std::uint64_t y_mask) {
    std::vector<MatX> ops;
    for (int j = 0; j < frame.n_qubits(); ++j) {
        const Mat2 s = letter(((y_mask >> j) & 1) ? 'Y' : 'X');
        ops.emplace_back(frame.unitary(j) * s * frame.unitary(j).adjoint());
    }
    return (rho * kron_all(ops)).trace().real();
}

/// All 2^N correlators (odd ones included), indexed by y mask.
inline std::vector<double> explicit_all_correlators(const MatX& rho, const LocalFrame& frame) {
    const std::uint64_t count = std::uint64_t{1} << frame.n_qubits();
    std::vector<double> t(count);
    for (std::uint64_t y = 0; y < count; ++y) t[y] = explicit_correlator(rho, frame, y);
    return t;
}

/// lambda_k = sum_l (-1)^{k.l} cos(pi |l| / 2) T_l by the double sum.
inline std::vector<double> brute_force_lambda(const std::vector<double>& all_t, int n) {
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<double> lam(count, 0.0);
    for (std::uint64_t k = 0; k < count; ++k) {
        double s = 0;
        for (std::uint64_t l = 0; l < count; ++l) {
            const double c = std::cos(std::numbers::pi * std::popcount(l) / 2.0);
            const double sign = (std::popcount(k & l) % 2) ? -1.0 : 1.0;
            s += sign * std::round(c) * all_t[l];
        }
        lam[k] = s;
    }
    return lam;
}

/// 2^N max_k |Re <k| U^dag rho U |k'>| with explicit matrix products.
inline double explicit_w_a(const MatX& rho, const LocalFrame& frame) {
    const MatX u = frame_unitary(frame);
    const MatX r = u.adjoint() * rho * u;
    const auto dim = static_cast<std::uint64_t>(r.rows());
    double best = 0;
    for (std::uint64_t k = 0; k < dim; ++k) {
        const std::uint64_t kp = (dim - 1) ^ k;
        best = std::max(best, std::abs(r(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(kp)).real()));
    }
    return best * static_cast<double>(dim);
}

inline double explicit_w_b(const MatX& rho, const LocalFrame& frame) {
    const auto t = explicit_all_correlators(rho, frame);
    double s = 0;
    for (std::uint64_t l = 0; l < t.size(); ++l) {
        if (std::popcount(l) % 2 == 0) s += t[l] * t[l];
    }
    return s;
}

/// Reduced state on qubits 0..keep-1.
inline MatX partial_trace_prefix(const MatX& rho, int keep) {
    const Eigen::Index dim = rho.rows();
    const Eigen::Index kd = Eigen::Index{1} << keep;
    const Eigen::Index rest = dim / kd;
    MatX out = MatX::Zero(kd, kd);
    for (Eigen::Index c = 0; c < rest; ++c) out += rho.block(c * kd, c * kd, kd, kd);
    return out;
}

/// Normalized Wishart-type random state A A^dag / Tr.
inline MatX random_density_matrix(int n, Rng& rng) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    MatX a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = cplx(rng.normal(), rng.normal());
    }
    MatX rho = a * a.adjoint();
    return rho / rho.trace().real();
}

inline LocalFrame random_frame(int n, Rng& rng) {
    std::vector<double> angles(static_cast<std::size_t>(3 * n));
    for (auto& a : angles) a = rng.uniform(0, 2 * std::numbers::pi);
    return LocalFrame::euler(angles);
}

// ---------------------------------------------------------------------------
// Product-state maximization

/// Per-qubit Bloch angles of |psi_j> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct ProductStateParams {
    std::vector<double> theta;
    std::vector<double> phi;

    Eigen::VectorXcd state() const {
        const auto n = static_cast<int>(theta.size());
        Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(Eigen::Index{1} << n);
        for (Eigen::Index k = 0; k < psi.size(); ++k) {
            for (int j = 0; j < n; ++j) {
                const auto sj = static_cast<std::size_t>(j);
                psi(k) *= ((k >> j) & 1) ? std::polar(std::sin(theta[sj] / 2), phi[sj]) : cplx(std::cos(theta[sj] / 2));
            }
        }
        return psi;
    }
};

/// <psi|W|psi> = sum_k b_k Re(conj(psi_k) psi_{k'}).
inline double product_state_value(const WitnessCoefficients& b, const ProductStateParams& p) {
    const Eigen::VectorXcd psi = p.state();
    const std::uint64_t full = static_cast<std::uint64_t>(psi.size()) - 1;
    double s = 0;
    for (std::uint64_t k = 0; k <= full; ++k) {
        s += b[k] * (std::conj(psi(static_cast<Eigen::Index>(k))) * psi(static_cast<Eigen::Index>(full ^ k))).real();
    }
    return s;
}

/// Multi-start local maximization of <psi_sep|W|psi_sep> over product states.
inline double max_over_product_states(const WitnessCoefficients& b, int restarts, std::uint64_t seed) {
    const int n = b.n_qubits();
    if (n > kMaxOracleQubits) throw CapExceededError("product-state search limited to 8 qubits");
    if (restarts < 1) throw ArgumentError("restarts must be at least 1");
    auto f = [&](const std::vector<double>& x) {
        ProductStateParams p;
        p.theta.assign(x.begin(), x.begin() + n);
        p.phi.assign(x.begin() + n, x.end());
        return -product_state_value(b, p);
    };
    double best = -1e300;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(seed + static_cast<std::uint64_t>(r));
        std::vector<double> x0(static_cast<std::size_t>(2 * n));
        for (int j = 0; j < n; ++j) {
            x0[static_cast<std::size_t>(j)] = rng.uniform(0, std::numbers::pi);
            x0[static_cast<std::size_t>(n + j)] = rng.uniform(0, 2 * std::numbers::pi);
        }
        const auto res = nelder_mead_polished(f, x0);
        best = std::max(best, -res.f);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Frame grid search

/// Exhaustive grid over the 3N Euler angles (points per angle), each grid
/// point evaluated by explicit trace, best point polished by simplex descent.
inline double grid_search_frame(const MatX& rho, WitnessKind kind, int points) {
    const int n = static_cast<int>(std::countr_zero(static_cast<std::uint64_t>(rho.rows())));
    const int dims = 3 * n;
    auto value = [&](const std::vector<double>& x) {
        const LocalFrame f = LocalFrame::euler(x);
        return kind == WitnessKind::WA ? explicit_w_a(rho, f) : explicit_w_b(rho, f);
    };
    std::vector<int> idx(static_cast<std::size_t>(dims), 0);
    std::vector<double> x(static_cast<std::size_t>(dims)), best_x;
    double best = -1;
    const double step = 2 * std::numbers::pi / points;
    while (true) {
        for (int d = 0; d < dims; ++d) x[static_cast<std::size_t>(d)] = step * idx[static_cast<std::size_t>(d)];
        const double v = value(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
        int d = 0;
        while (d < dims && ++idx[static_cast<std::size_t>(d)] == points) idx[static_cast<std::size_t>(d++)] = 0;
        if (d == dims) break;
    }
    const auto res = nelder_mead_polished([&](const std::vector<double>& y) { return -value(y); }, best_x);
    return std::max(best, -res.f);
}

// ---------------------------------------------------------------------------
// W-state scan

struct WStateScan {
    int m = 0;
    int n = 0;
    std::vector<int> placement;  // qubits carrying the W state, ascending
    std::vector<double> values;  // W_A of the prefix {0..n-1}, n = 1..N
    int estimated_m = 0;
    int plateau_start = 0;  // smallest prefix already at the final value
    bool low_confidence = false;

    std::string to_text() const {
        std::ostringstream os;
        os << "m=" << m << "\nn=" << n << "\nplacement=";
        for (std::size_t i = 0; i < placement.size(); ++i) os << (i ? "," : "") << placement[i];
        os << '\n';
        for (std::size_t i = 0; i < values.size(); ++i) os << "prefix_" << i + 1 << '=' << format_real(values[i]) << '\n';
        os << "plateau_start=" << plateau_start << "\nestimated_m=" << estimated_m
           << "\nlow_confidence=" << (low_confidence ? "true" : "false") << '\n';
        return os.str();
    }
};

/// M-qubit W state on seeded random positions among N qubits (the rest |0>).
inline Eigen::VectorXcd embedded_w_state(int m, int n, std::uint64_t seed, std::vector<int>* placement = nullptr) {
    std::vector<int> q(static_cast<std::size_t>(n));
    std::iota(q.begin(), q.end(), 0);
    Rng rng(seed);
    for (std::size_t i = q.size(); i > 1; --i) std::swap(q[i - 1], q[rng.below(i)]);
    q.resize(static_cast<std::size_t>(m));
    std::sort(q.begin(), q.end());
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    for (int j : q) psi(Eigen::Index{1} << j) = 1 / std::sqrt(static_cast<double>(m));
    if (placement) *placement = q;
    return psi;
}

/// Scans W_A over growing qubit prefixes. The full-cover value of an M-qubit
/// W state is M, and adding |0> qubits leaves it unchanged, so the last
/// prefix gives the estimate; consistency requires the plateau to start no
/// earlier than M qubits and the value to sit on an integer.
inline WStateScan w_state_scan(int m, int n, std::uint64_t seed, const OptimizerConfig& config = {}) {
    if (m < 2 || m > n || n > kMaxOracleQubits) throw ArgumentError("w_state_scan needs 2 <= M <= N <= 8");
    WStateScan out;
    out.m = m;
    out.n = n;
    const Eigen::VectorXcd psi = embedded_w_state(m, n, seed, &out.placement);
    const MatX rho = psi * psi.adjoint();
    OptimizerConfig cfg = config;
    cfg.seed = seed;
    for (int k = 1; k <= n; ++k) {
        const DenseState reduced(partial_trace_prefix(rho, k), std::max(k, cfg.eval.dense_cap));
        out.values.push_back(maximize_w_a(reduced, cfg).value);
    }
    const double final_value = out.values.back();
    out.estimated_m = static_cast<int>(std::lround(final_value));
    const double tol = 1e-3;
    out.plateau_start = n;
    for (int k = n; k >= 1; --k) {
        if (std::abs(out.values[static_cast<std::size_t>(k - 1)] - final_value) <= tol) {
            out.plateau_start = k;
        } else {
            break;
        }
    }
    out.low_confidence = std::abs(final_value - out.estimated_m) > tol || out.estimated_m < 2 ||
                         out.estimated_m > n || out.estimated_m > out.plateau_start;
    return out;
}

// ---------------------------------------------------------------------------
// Appendix identities

struct CheckRow {
    std::string name;
    int n_qubits = 0;
    long checks = 0;
    long failures = 0;
    double max_deviation = 0;
    double tolerance = 0;
    bool passed() const { return failures == 0; }
    void record(double deviation) {
        ++checks;
        max_deviation = std::max(max_deviation, deviation);
        if (!(deviation <= tolerance)) ++failures;
    }
};

/// Plain-text pass/fail table with the largest observed deviation per check.
struct CheckReport {
    std::vector<CheckRow> rows;

    bool passed() const {
        return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.passed(); });
    }
    std::string to_text() const {
        std::ostringstream os;
        for (const auto& r : rows) {
            char line[256];
            std::snprintf(line, sizeof line, "%-30s N=%-2d checks=%-7ld failures=%-5ld max_dev=%-11.4e tol=%-9.2e %s\n",
                          r.name.c_str(), r.n_qubits, r.checks, r.failures, r.max_deviation, r.tolerance,
                          r.passed() ? "PASS" : "FAIL");
            os << line;
        }
        return os.str();
    }
    void append(const CheckReport& other) { rows.insert(rows.end(), other.rows.begin(), other.rows.end()); }
};

struct IdentityOptions {
    int parseval_tables = 0;  // 0: use `trials`
    int physical_states = 0;  // 0: use `trials`
    double tolerance_scale = 1.0;
};

/// Checks sigma_l|k> = (-1)^{k.l} i^{|l|}|k'> (exhaustively for N <= 4,
/// sampled otherwise), Parseval sum lambda^2 = 2^N sum_even T^2 on random
/// tables, and sum |lambda| <= 2^N on tables of random physical states.
inline CheckReport verify_appendix_identities(int n, int trials, std::uint64_t seed, IdentityOptions opt = {}) {
    if (n < 1 || n > 6) throw ArgumentError("appendix identities checked for 1 <= N <= 6");
    CheckReport rep;
    Rng rng(seed);
    const std::uint64_t count = std::uint64_t{1} << n;

    CheckRow phase{"basis phase relation", n, 0, 0, 0, 1e-12 * opt.tolerance_scale};
    auto check_phase = [&](std::uint64_t l, std::uint64_t k) {
        std::string letters;
        for (int j = 0; j < n; ++j) letters.push_back(((l >> j) & 1) ? 'Y' : 'X');
        const MatX s = letters_matrix(letters);
        const BasisAction act = apply_to_basis_state(XYString(n, l), k, n);
        Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(count));
        expect(static_cast<Eigen::Index>(act.k_prime)) = act.phase.value();
        const double dev = (s.col(static_cast<Eigen::Index>(k)) - expect).cwiseAbs().maxCoeff();
        phase.record(dev);
    };
    if (n <= 4) {
        for (std::uint64_t l = 0; l < count; ++l) {
            for (std::uint64_t k = 0; k < count; ++k) check_phase(l, k);
        }
    } else {
        for (int i = 0; i < trials; ++i) check_phase(rng.below(count), rng.below(count));
    }
    rep.rows.push_back(phase);

    CheckRow parseval{"parseval", n, 0, 0, 0, 1e-12 * opt.tolerance_scale};
    const int tables = opt.parseval_tables > 0 ? opt.parseval_tables : trials;
    for (int i = 0; i < tables; ++i) {
        std::vector<double> t(count, 0.0);
        double even_sq = 0;
        for (std::uint64_t l = 0; l < count; ++l) {
            if (std::popcount(l) % 2) continue;
            t[l] = rng.uniform(-1, 1);
            even_sq += t[l] * t[l];
        }
        const auto lam = brute_force_lambda(t, n);
        double lam_sq = 0;
        for (double v : lam) lam_sq += v * v;
        const double dev = std::abs(lam_sq - static_cast<double>(count) * even_sq);
        parseval.record(dev);
    }
    rep.rows.push_back(parseval);

    // Deviation is the excess over 2^N (zero when the bound holds).
    CheckRow bound{"sum |lambda| <= 2^N", n, 0, 0, 0, 1e-10 * opt.tolerance_scale};
    const int states = opt.physical_states > 0 ? opt.physical_states : trials;
    for (int i = 0; i < states; ++i) {
        const MatX rho = random_density_matrix(n, rng);
        const LocalFrame frame = random_frame(n, rng);
        const auto lam = brute_force_lambda(explicit_all_correlators(rho, frame), n);
        double s = 0;
        for (double v : lam) s += std::abs(v);
        const double dev = std::max(0.0, s - static_cast<double>(count));
        bound.record(dev);
    }
    rep.rows.push_back(bound);
    return rep;
}

// ---------------------------------------------------------------------------
// Ring

struct RingCheck {
    double value = 0;
    double z_frame_value = 0;
    bool exceeds_one = false;
};

/// Frame measuring z in the x slot and x in the y slot on every site.
inline LocalFrame ring_z_frame(int n) {
    const CliffordTag tag = CliffordTag::from_axes({Axis::Z, false}, {Axis::X, false});
    return LocalFrame::clifford(std::vector<CliffordTag>(static_cast<std::size_t>(n), tag));
}

/// W_B of the ring state: explicit evaluation at the z frame (where the all-z
/// string alone contributes 1), then optimizer refinement from that frame.
inline RingCheck ring_wb_exceeds_one(int n, double beta, const OptimizerConfig& config = {}) {
    if (n < 3 || n > kMaxOracleQubits) throw ArgumentError("ring check needs 3 <= N <= 8");
    RingCheck out;
    const LocalFrame frame = ring_z_frame(n);
    out.z_frame_value = explicit_w_b(ring_matrix(n, beta), frame);
    OptimizerConfig cfg = config;
    cfg.eval.dense_cap = std::max(cfg.eval.dense_cap, n);
    const auto res = maximize_w_b(RingExcitationState(n, beta), cfg, frame);
    out.value = std::max(out.z_frame_value, res.value);
    out.exceeds_one = out.value > 1;
    return out;
}

// ---------------------------------------------------------------------------
// Verification suite

struct SuiteOptions {
    std::uint64_t seed = 1;
    double tolerance_scale = 1.0;
    int trials = 200;
};

/// Library paths against the explicit oracles at small sizes.
inline CheckReport run_verification_suite(const SuiteOptions& opt = {}) {
    CheckReport rep;
    IdentityOptions id;
    id.tolerance_scale = opt.tolerance_scale;
    for (int n = 1; n <= 6; ++n) {
        rep.append(verify_appendix_identities(n, n <= 4 ? opt.trials : std::max(1, opt.trials / 4),
                                              opt.seed + static_cast<std::uint64_t>(n), id));
    }

    const double betas[] = {0.2, 0.5, 1.0, 2.0, 5.0};
    for (int n = 3; n <= 6; ++n) {
        CheckRow table{"stabilizer vs explicit T", n, 0, 0, 0, 1e-10 * opt.tolerance_scale};
        CheckRow ghz{"GHZ closed forms vs explicit", n, 0, 0, 0, 1e-8 * opt.tolerance_scale};
        for (double beta : betas) {
            for (const auto& gens : {ghz_generators(n), cluster_generators(n)}) {
                const StabilizerThermalState st(gens, beta);
                const LocalFrame frame = clifford_prescan(st).frame;
                const MatX rho = thermal_matrix(gens, beta);
                const auto lib = full_xy_table(StateBackend(st), frame);
                const auto ref = explicit_all_correlators(rho, frame);
                for (std::uint64_t l = 0; l < ref.size(); ++l) {
                    if (std::popcount(l) % 2) continue;
                    table.record(std::abs(lib.get(XYString(n, l)) - ref[l]));
                }
            }
            const auto gens = ghz_generators(n);
            const LocalFrame frame = clifford_prescan(StabilizerThermalState(gens, beta)).frame;
            const MatX rho = thermal_matrix(gens, beta);
            ghz.record(std::abs(explicit_w_a(rho, frame) - ghz_closed_form(n, beta, WitnessKind::WA)));
            ghz.record(std::abs(explicit_w_b(rho, frame) - ghz_closed_form(n, beta, WitnessKind::WB)));
        }
        rep.rows.push_back(table);
        rep.rows.push_back(ghz);
    }
    for (int n : {3, 6}) {
        CheckRow cl{"cluster closed forms (3 | N)", n, 0, 0, 0, 1e-8 * opt.tolerance_scale};
        for (double beta : betas) {
            const auto gens = cluster_generators(n);
            const LocalFrame frame = clifford_prescan(StabilizerThermalState(gens, beta)).frame;
            const MatX rho = thermal_matrix(gens, beta);
            cl.record(std::abs(explicit_w_a(rho, frame) - cluster_closed_form(n, beta, WitnessKind::WA)));
            cl.record(std::abs(explicit_w_b(rho, frame) - cluster_closed_form(n, beta, WitnessKind::WB)));
        }
        rep.rows.push_back(cl);
    }

    Rng rng(opt.seed ^ 0x5eedULL);
    for (int n = 1; n <= 3; ++n) {
        // Deviation is the excess over the bound.
        CheckRow sep{"product states within bound", n, 0, 0, 0, 1e-9 * opt.tolerance_scale};
        for (int i = 0; i < 5; ++i) {
            std::vector<double> b(std::size_t{1} << n);
            for (auto& v : b) v = rng.uniform(-1, 1);
            const WitnessCoefficients w(n, b);
            const double found = max_over_product_states(w, 8, opt.seed + static_cast<std::uint64_t>(i));
            sep.record(std::max(0.0, found - separable_bound(w)));
        }
        rep.rows.push_back(sep);

        CheckRow prod{"product-state W_A <= 1", n, 0, 0, 0, 1e-9 * opt.tolerance_scale};
        for (int i = 0; i < 20; ++i) {
            ProductStateParams p;
            for (int j = 0; j < n; ++j) {
                p.theta.push_back(rng.uniform(0, std::numbers::pi));
                p.phi.push_back(rng.uniform(0, 2 * std::numbers::pi));
            }
            const Eigen::VectorXcd psi = p.state();
            const StateBackend st = DenseState::pure(psi);
            prod.record(std::max(0.0, w_a_fixed_frame(st, random_frame(n, rng)) - 1.0));
        }
        rep.rows.push_back(prod);
    }

    for (int n = 3; n <= 8; ++n) {
        CheckRow ring{"ring all-z correlator = -1", n, 0, 0, 0, 1e-12 * opt.tolerance_scale};
        const LocalFrame frame = ring_z_frame(n);
        for (double beta : {0.1, 1.0, 10.0}) {
            const StateBackend st = RingExcitationState(n, beta);
            ring.record(std::abs(correlator(st, XYString(n, 0), frame) + 1.0));
            ring.record(std::abs(explicit_correlator(ring_matrix(n, beta), frame, 0) + 1.0));
        }
        rep.rows.push_back(ring);
    }
    return rep;
}

}  // namespace strata::oracle
