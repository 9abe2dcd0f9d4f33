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

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "strata/bits.hpp"
#include "strata/errors.hpp"
#include "strata/frame.hpp"
#include "strata/pauli.hpp"

namespace strata {

using MatX = Eigen::MatrixXcd;

/// Largest register for which 2^N x 2^N matrices or 3^N correlation tensors
/// are built. Configurable per call.
inline constexpr int kDefaultDenseCap = 10;

struct EvalOptions {
    int dense_cap = kDefaultDenseCap;
};

/// tanh(beta/2); std::tanh saturates to exactly 1 for large arguments.
inline double thermal_weight(double beta) {
    if (!(beta >= 0)) throw ArgumentError("inverse temperature must be non-negative");
    return std::tanh(beta / 2);
}

// ---------------------------------------------------------------------------
// CorrelatorTable

/// Correlators T_l for even-|l| x/y strings, keyed by y mask.
class CorrelatorTable {
  public:
    CorrelatorTable() = default;
    explicit CorrelatorTable(int n_qubits) : n_(n_qubits) { require_qubits(n_qubits); }

    int n_qubits() const { return n_; }
    std::size_t size() const { return entries_.size(); }
    const std::map<std::uint64_t, double>& entries() const { return entries_; }

    void set(const XYString& l, double value) {
        if (l.n_qubits() != n_) throw DimensionError("XY string size differs from table");
        set(l.y_mask(), value);
    }
    void set(std::uint64_t y_mask, double value) {
        if (parity(y_mask)) throw ArgumentError("correlator table keys must have an even y-count");
        if ((y_mask & ~low_mask(n_)) != 0) throw DimensionError("y mask beyond qubit count");
        if (!(std::abs(value) <= 1 + 1e-12)) {
            throw ArgumentError("correlator magnitude exceeds 1: " + std::to_string(value));
        }
        entries_[y_mask] = value;
    }
    double get(const XYString& l) const {
        const auto it = entries_.find(l.y_mask());
        return it == entries_.end() ? 0.0 : it->second;
    }

    /// Dense 2^N vector indexed by y mask; odd entries are zero.
    std::vector<double> to_vector() const {
        require_qubits(n_, kMaxEnumerationQubits);
        std::vector<double> v(std::size_t{1} << n_, 0.0);
        for (const auto& [y, t] : entries_) v[y] = t;
        return v;
    }

    double sum_abs() const {
        double s = 0;
        for (const auto& [y, t] : entries_) s += std::abs(t);
        return s;
    }
    double sum_sq() const {
        double s = 0;
        for (const auto& [y, t] : entries_) s += t * t;
        return s;
    }

  private:
    int n_ = 0;
    std::map<std::uint64_t, double> entries_;
};

// ---------------------------------------------------------------------------
// GF(2) span of stabilizer generators

/// Row-reduced basis over the binary symplectic space, remembering which
/// generators combine into each reduced row.
class SymplecticBasis {
  public:
    explicit SymplecticBasis(std::span<const PauliString> generators) {
        for (std::size_t g = 0; g < generators.size(); ++g) {
            Row r{generators[g].x_mask(), generators[g].z_mask(), std::uint64_t{1} << g};
            reduce(r);
            if (r.x == 0 && r.z == 0) continue;
            const int pivot = r.x ? std::countr_zero(r.x) : 64 + std::countr_zero(r.z);
            r.pivot = pivot;
            for (auto& other : rows_) {
                if (has_bit(other, pivot)) xor_into(other, r);
            }
            rows_.push_back(r);
        }
    }

    int rank() const { return static_cast<int>(rows_.size()); }

    /// Generator subset whose product has the given masks, if one exists.
    std::optional<std::uint64_t> solve(std::uint64_t x, std::uint64_t z) const {
        Row r{x, z, 0};
        reduce(r);
        if (r.x != 0 || r.z != 0) return std::nullopt;
        return r.combo;
    }

  private:
    struct Row {
        std::uint64_t x = 0;
        std::uint64_t z = 0;
        std::uint64_t combo = 0;
        int pivot = -1;
    };

    static bool has_bit(const Row& r, int bit) {
        return bit < 64 ? ((r.x >> bit) & 1) != 0 : ((r.z >> (bit - 64)) & 1) != 0;
    }
    static void xor_into(Row& dst, const Row& src) {
        dst.x ^= src.x;
        dst.z ^= src.z;
        dst.combo ^= src.combo;
    }
    void reduce(Row& r) const {
        for (const auto& row : rows_) {
            if (has_bit(r, row.pivot)) xor_into(r, row);
        }
    }

    std::vector<Row> rows_;
};

// ---------------------------------------------------------------------------
// Backends

/// Thermal state of H = -1/2 sum_n K_n for N independent commuting generators:
/// rho = 2^{-N} prod_n (1 + tanh(beta/2) K_n).
class StabilizerThermalState {
  public:
    StabilizerThermalState(std::vector<PauliString> generators, double beta)
        : generators_(std::move(generators)), beta_(beta), t_(thermal_weight(beta)) {
        if (generators_.empty()) throw ModelError("stabilizer model needs generators");
        const int n = generators_.front().n_qubits();
        if (static_cast<int>(generators_.size()) != n) {
            throw ModelError("need exactly " + std::to_string(n) + " generators on " + std::to_string(n) +
                             " qubits, got " + std::to_string(generators_.size()));
        }
        for (const auto& g : generators_) {
            if (g.n_qubits() != n) throw DimensionError("generators act on different qubit counts");
            if (!g.is_hermitian()) throw ModelError("generator " + g.str() + " is not Hermitian");
            if (g.is_identity_mask()) throw ModelError("generator " + g.str() + " is not traceless");
        }
        require_pairwise_commuting(generators_);
        SymplecticBasis basis(generators_);
        if (basis.rank() != n) throw ModelError("generators are not independent (degenerate ground state)");
    }

    int n_qubits() const { return generators_.front().n_qubits(); }
    double beta() const { return beta_; }
    double t() const { return t_; }
    const std::vector<PauliString>& generators() const { return generators_; }

    /// t^k with t^0 = 1.
    double weight(int k) const {
        double w = 1;
        for (int i = 0; i < k; ++i) w *= t_;
        return w;
    }

    /// <p> for a Hermitian Pauli string. Zero unless +-p lies in the stabilizer group.
    double expectation(const PauliString& p) const {
        if (p.n_qubits() != n_qubits()) throw DimensionError("Pauli string size differs from state");
        if (!p.is_hermitian()) throw ArgumentError("expectation of a non-Hermitian Pauli string");
        SymplecticBasis basis(generators_);
        const auto subset = basis.solve(p.x_mask(), p.z_mask());
        if (!subset) return 0.0;
        const PauliString k = subset_product(generators_, *subset);
        // p = (phase_p / phase_k) K_S, both phases real.
        const int sign = p.phase().sign() * k.phase().sign();
        return sign * weight(popcount(*subset));
    }

    /// Visits every element of the stabilizer group as (product, subset size),
    /// in Gray-code order. A nonzero `limit` stops after that many elements and
    /// lifts the qubit cap.
    template <typename F>
    void for_each_group_element(F&& visit, std::uint64_t limit = 0) const {
        const int n = n_qubits();
        if (limit == 0) require_qubits(n, kMaxEnumerationQubits);
        PauliString acc = PauliString::identity(n);
        std::uint64_t subset = 0;
        visit(acc, 0);
        std::uint64_t count = n >= 64 ? ~std::uint64_t{0} : std::uint64_t{1} << n;
        if (limit != 0) count = std::min(count, limit);
        for (std::uint64_t i = 1; i < count; ++i) {
            const int g = std::countr_zero(i);
            subset ^= std::uint64_t{1} << g;
            // Generators commute, so multiplying on either side keeps the
            // ordered-product phase.
            acc = multiply(acc, generators_[static_cast<std::size_t>(g)]);
            visit(acc, popcount(subset));
        }
    }

  private:
    std::vector<PauliString> generators_;
    double beta_;
    double t_;
};

/// Explicit 2^N x 2^N density matrix. Basis index bit j is qubit j.
class DenseState {
  public:
    explicit DenseState(MatX rho, int cap = kDefaultDenseCap) {
        const auto dim = rho.rows();
        if (dim != rho.cols() || dim < 2 || (dim & (dim - 1)) != 0) {
            throw DimensionError("density matrix must be square with power-of-two size");
        }
        n_ = std::countr_zero(static_cast<std::uint64_t>(dim));
        if (n_ > cap) throw CapExceededError("dense state exceeds cap of " + std::to_string(cap) + " qubits");
        if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
            throw ModelError("density matrix is not Hermitian");
        }
        rho_ = (rho + rho.adjoint()) / 2.0;
        const cplx tr = rho_.trace();
        if (std::abs(tr - 1.0) > 1e-12) throw ModelError("density matrix trace is not 1");
        const Eigen::SelfAdjointEigenSolver<MatX> es(rho_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-10) throw ModelError("density matrix is not positive semidefinite");
    }

    static DenseState pure(const Eigen::VectorXcd& psi, int cap = kDefaultDenseCap) {
        const Eigen::VectorXcd v = psi / psi.norm();
        return DenseState(v * v.adjoint(), cap);
    }

    int n_qubits() const { return n_; }
    const MatX& matrix() const { return rho_; }

    /// U^dag rho U for the frame's product unitary U.
    MatX rotated(const LocalFrame& frame) const {
        if (frame.n_qubits() != n_) throw DimensionError("frame size differs from state");
        MatX r = rho_;
        const Eigen::Index dim = r.rows();
        for (int j = 0; j < n_; ++j) {
            const Mat2& u = frame.unitary(j);
            const Eigen::Index bit = Eigen::Index{1} << j;
            for (Eigen::Index a = 0; a < dim; ++a) {
                if (a & bit) continue;
                const Eigen::Index b = a | bit;
                // rows: U^dag acting from the left
                for (Eigen::Index c = 0; c < dim; ++c) {
                    const cplx ra = r(a, c);
                    const cplx rb = r(b, c);
                    r(a, c) = std::conj(u(0, 0)) * ra + std::conj(u(1, 0)) * rb;
                    r(b, c) = std::conj(u(0, 1)) * ra + std::conj(u(1, 1)) * rb;
                }
            }
            for (Eigen::Index a = 0; a < dim; ++a) {
                if (a & bit) continue;
                const Eigen::Index b = a | bit;
                // columns: U acting from the right
                for (Eigen::Index c = 0; c < dim; ++c) {
                    const cplx ca = r(c, a);
                    const cplx cb = r(c, b);
                    r(c, a) = ca * u(0, 0) + cb * u(1, 0);
                    r(c, b) = ca * u(0, 1) + cb * u(1, 1);
                }
            }
        }
        return r;
    }

    /// Anti-diagonal <k| U^dag rho U |k'> of the rotated state.
    std::vector<cplx> anti_diagonal(const LocalFrame& frame) const {
        const MatX r = rotated(frame);
        const std::uint64_t full = low_mask(n_);
        std::vector<cplx> c(static_cast<std::size_t>(r.rows()));
        for (std::uint64_t k = 0; k < c.size(); ++k) {
            c[k] = r(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(~k & full));
        }
        return c;
    }

  private:
    int n_ = 0;
    MatX rho_;
};

/// Single particle hopping on an N-site ring at inverse temperature beta,
/// stored in the one-excitation position basis |r> (qubit r excited).
class RingExcitationState {
  public:
    RingExcitationState(int n_sites, double beta) : n_(n_sites), beta_(beta) {
        if (n_sites < 2 || n_sites > kMaxQubits) throw DimensionError("ring needs 2..64 sites");
        if (!(beta >= 0)) throw ArgumentError("inverse temperature must be non-negative");
        const auto w = boltzmann_weights();
        double z = 0;
        for (double wm : w) z += wm;
        rho_ = MatX::Zero(n_, n_);
        for (int r = 0; r < n_; ++r) {
            for (int s = 0; s < n_; ++s) {
                cplx acc = 0;
                for (int m = 0; m < n_; ++m) {
                    acc += w[static_cast<std::size_t>(m)] *
                           std::polar(1.0, 2 * std::numbers::pi * (r - s) * m / n_);
                }
                rho_(r, s) = acc / (z * n_);
            }
        }
    }

    int n_qubits() const { return n_; }
    double beta() const { return beta_; }
    const MatX& positional() const { return rho_; }

    /// E_m = 2 cos(2 pi m / N), m = 0..N-1.
    double energy(int m) const { return 2 * std::cos(2 * std::numbers::pi * m / n_); }

    /// e^{-beta (E_m - E_min)}; the shift cancels in every normalized quantity.
    std::vector<double> boltzmann_weights() const {
        double e_min = energy(0);
        for (int m = 1; m < n_; ++m) e_min = std::min(e_min, energy(m));
        std::vector<double> w(static_cast<std::size_t>(n_));
        for (int m = 0; m < n_; ++m) w[static_cast<std::size_t>(m)] = std::exp(-beta_ * (energy(m) - e_min));
        return w;
    }

    /// Tr(rho (x)_j A_j) for arbitrary single-site operators, O(N^2).
    cplx expectation(std::span<const Mat2> ops) const {
        if (static_cast<int>(ops.size()) != n_) throw DimensionError("operator count differs from ring size");
        const auto n = static_cast<std::size_t>(n_);
        // prefix[i] = prod_{j<i} A_j(0,0), suffix[i] = prod_{j>=i} A_j(0,0)
        std::vector<cplx> prefix(n + 1, 1.0), suffix(n + 1, 1.0);
        for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] * ops[j](0, 0);
        for (std::size_t j = n; j-- > 0;) suffix[j] = suffix[j + 1] * ops[j](0, 0);
        cplx total = 0;
        for (std::size_t r = 0; r < n; ++r) {
            const cplx others = prefix[r] * suffix[r + 1];
            total += rho_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) * ops[r](1, 1) * others;
            cplx mid = 1.0;  // prod over r < j < s
            for (std::size_t s = r + 1; s < n; ++s) {
                const cplx rest = prefix[r] * mid * suffix[s + 1];
                const auto ri = static_cast<Eigen::Index>(r);
                const auto si = static_cast<Eigen::Index>(s);
                // <e_s|A|e_r> = A_r(0,1) A_s(1,0) rest, weighted by rho_{rs}
                total += rho_(ri, si) * ops[r](0, 1) * ops[s](1, 0) * rest;
                total += rho_(si, ri) * ops[s](0, 1) * ops[r](1, 0) * rest;
                mid *= ops[s](0, 0);
            }
        }
        return total;
    }

    /// Embedding into the full 2^N qubit space.
    MatX to_dense(int cap = kDefaultDenseCap) const {
        if (n_ > cap) throw CapExceededError("ring exceeds dense cap");
        const Eigen::Index dim = Eigen::Index{1} << n_;
        MatX m = MatX::Zero(dim, dim);
        for (int r = 0; r < n_; ++r) {
            for (int s = 0; s < n_; ++s) m(Eigen::Index{1} << r, Eigen::Index{1} << s) = rho_(r, s);
        }
        return m;
    }

  private:
    int n_;
    double beta_;
    MatX rho_;
};

using StateBackend = std::variant<StabilizerThermalState, DenseState, RingExcitationState>;

inline int n_qubits(const StateBackend& s) {
    return std::visit([](const auto& b) { return b.n_qubits(); }, s);
}

// ---------------------------------------------------------------------------
// Dense conversions

/// Matrix of a Pauli string in the computational basis (bit j = qubit j).
inline MatX pauli_matrix(const PauliString& p, int cap = kDefaultDenseCap) {
    require_qubits(p.n_qubits(), cap);
    const Eigen::Index dim = Eigen::Index{1} << p.n_qubits();
    MatX m = MatX::Zero(dim, dim);
    const cplx base = p.phase().value() * Phase(popcount(p.x_mask() & p.z_mask())).value();
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(dim); ++k) {
        // X^x Z^z |k> = (-1)^{k.z} |k ^ x>
        const double sign = parity(k & p.z_mask()) ? -1.0 : 1.0;
        m(static_cast<Eigen::Index>(k ^ p.x_mask()), static_cast<Eigen::Index>(k)) = base * sign;
    }
    return m;
}

inline MatX to_dense_matrix(const StabilizerThermalState& s, int cap = kDefaultDenseCap) {
    const int n = s.n_qubits();
    require_qubits(n, cap);
    const Eigen::Index dim = Eigen::Index{1} << n;
    MatX rho = MatX::Identity(dim, dim) / static_cast<double>(dim);
    for (const auto& g : s.generators()) {
        rho = rho * (MatX::Identity(dim, dim) + s.t() * pauli_matrix(g, cap));
    }
    return rho;
}

inline MatX to_dense_matrix(const DenseState& s, int = kDefaultDenseCap) { return s.matrix(); }

inline MatX to_dense_matrix(const RingExcitationState& s, int cap = kDefaultDenseCap) {
    return s.to_dense(cap);
}

inline DenseState to_dense(const StateBackend& s, int cap = kDefaultDenseCap) {
    return std::visit([cap](const auto& b) { return DenseState(to_dense_matrix(b, cap), cap); }, s);
}

// ---------------------------------------------------------------------------
// Full N-point correlation tensor

/// C[a] = Tr(rho sigma_{a_0} (x) ... (x) sigma_{a_{N-1}}) for a_j in {x,y,z},
/// index sum_j a_j 3^j. Every x/y correlator in every frame is a contraction
/// of this tensor with the measured directions.
class CorrelationTensor {
  public:
    CorrelationTensor(int n_qubits, std::vector<double> values) : n_(n_qubits), c_(std::move(values)) {
        if (c_.size() != pow3(n_qubits)) throw DimensionError("correlation tensor size mismatch");
    }

    static std::size_t pow3(int n) {
        std::size_t p = 1;
        for (int i = 0; i < n; ++i) p *= 3;
        return p;
    }

    int n_qubits() const { return n_; }
    const std::vector<double>& values() const { return c_; }

    /// T_l for all 2^N strings l (odd ones included), indexed by y mask.
    std::vector<double> xy_correlators(const LocalFrame& frame) const {
        if (frame.n_qubits() != n_) throw DimensionError("frame size differs from tensor");
        return contract([&frame](int j) { return frame.measured_axes(j); });
    }

    /// Same contraction with the measured directions supplied per qubit as
    /// (x-slot axis, y-slot axis).
    template <typename AxesFn>
    std::vector<double> contract(AxesFn&& axes) const {
        std::vector<double> cur = c_;
        std::vector<double> next;
        std::size_t inner = 1;
        std::size_t outer = cur.size() / 3;
        for (int j = 0; j < n_; ++j) {
            const auto [ax, ay] = axes(j);
            next.assign(inner * 2 * outer, 0.0);
            for (std::size_t o = 0; o < outer; ++o) {
                const std::size_t src = inner * 3 * o;
                const std::size_t dst = inner * 2 * o;
                for (std::size_t i = 0; i < inner; ++i) {
                    const double v0 = cur[src + i];
                    const double v1 = cur[src + inner + i];
                    const double v2 = cur[src + 2 * inner + i];
                    next[dst + i] = ax[0] * v0 + ax[1] * v1 + ax[2] * v2;
                    next[dst + inner + i] = ay[0] * v0 + ay[1] * v1 + ay[2] * v2;
                }
            }
            cur.swap(next);
            inner *= 2;
            outer /= 3;
        }
        return cur;
    }

  private:
    int n_;
    std::vector<double> c_;
};

namespace detail {

/// Full-support Pauli string for tensor digit vector a (0=x, 1=y, 2=z).
inline PauliString pauli_from_digits(int n, std::size_t index) {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    for (int j = 0; j < n; ++j) {
        const std::size_t d = index % 3;
        index /= 3;
        const std::uint64_t bit = std::uint64_t{1} << j;
        if (d == 0 || d == 1) x |= bit;
        if (d == 1 || d == 2) z |= bit;
    }
    return PauliString(n, x, z);
}

inline std::size_t digits_from_pauli(const PauliString& p) {
    std::size_t index = 0;
    for (int j = p.n_qubits(); j-- > 0;) {
        index = index * 3 + static_cast<std::size_t>(static_cast<int>(p.at(j)) - 1);
    }
    return index;
}

inline double dense_pauli_expectation(const MatX& rho, const PauliString& p) {
    const cplx base = p.phase().value() * Phase(popcount(p.x_mask() & p.z_mask())).value();
    cplx acc = 0;
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(rho.rows()); ++k) {
        const double sign = parity(k & p.z_mask()) ? -1.0 : 1.0;
        acc += sign * rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k ^ p.x_mask()));
    }
    return (base * acc).real();
}

}  // namespace detail

inline CorrelationTensor correlation_tensor(const StateBackend& state, const EvalOptions& opts = {}) {
    const int n = n_qubits(state);
    if (n > opts.dense_cap) {
        throw CapExceededError("correlation tensor for " + std::to_string(n) + " qubits exceeds cap of " +
                               std::to_string(opts.dense_cap));
    }
    std::vector<double> c(CorrelationTensor::pow3(n), 0.0);
    if (const auto* stab = std::get_if<StabilizerThermalState>(&state)) {
        const std::uint64_t full = low_mask(n);
        stab->for_each_group_element([&](const PauliString& g, int size) {
            if (g.support() != full) return;
            c[detail::digits_from_pauli(g)] = g.phase().sign() * stab->weight(size);
        });
    } else if (const auto* dense = std::get_if<DenseState>(&state)) {
        for (std::size_t a = 0; a < c.size(); ++a) {
            c[a] = detail::dense_pauli_expectation(dense->matrix(), detail::pauli_from_digits(n, a));
        }
    } else {
        const auto& ring = std::get<RingExcitationState>(state);
        const auto& s = detail::pauli_xyz();
        std::vector<Mat2> ops(static_cast<std::size_t>(n));
        for (std::size_t a = 0; a < c.size(); ++a) {
            std::size_t idx = a;
            for (int j = 0; j < n; ++j) {
                ops[static_cast<std::size_t>(j)] = s[idx % 3];
                idx /= 3;
            }
            c[a] = ring.expectation(ops).real();
        }
    }
    return CorrelationTensor(n, std::move(c));
}

// ---------------------------------------------------------------------------
// Correlators

namespace detail {

inline void check_sizes(const StateBackend& s, const XYString& l, const LocalFrame& f) {
    const int n = n_qubits(s);
    if (l.n_qubits() != n || f.n_qubits() != n) throw DimensionError("state, string and frame sizes differ");
}

inline std::vector<Mat2> measured_ops(const XYString& l, const LocalFrame& f) {
    const auto& s = pauli_xyz();
    std::vector<Mat2> ops;
    for (int j = 0; j < l.n_qubits(); ++j) {
        const auto [ax, ay] = f.measured_axes(j);
        const Vec3& m = ((l.y_mask() >> j) & 1) ? ay : ax;
        ops.push_back(m[0] * s[0] + m[1] * s[1] + m[2] * s[2]);
    }
    return ops;
}

/// All 2^N correlators from the rotated anti-diagonal:
/// T_l = i^{|l|} sum_k (-1)^{k.l} <k|rho'|k'>.
inline std::vector<double> dense_xy_correlators(const DenseState& s, const LocalFrame& f) {
    auto c = s.anti_diagonal(f);
    walsh_hadamard(std::span<cplx>(c));
    std::vector<double> t(c.size());
    for (std::uint64_t l = 0; l < c.size(); ++l) t[l] = (Phase(popcount(l)).value() * c[l]).real();
    return t;
}

inline CorrelatorTable even_table(int n, const std::vector<double>& all) {
    CorrelatorTable table(n);
    for (std::uint64_t l = 0; l < all.size(); ++l) {
        if (!parity(l)) table.set(l, std::clamp(all[l], -1.0, 1.0));
    }
    return table;
}

}  // namespace detail

/// T_l = Tr(U sigma_l U^dag rho) at the given frame.
inline double correlator(const StateBackend& state, const XYString& l, const LocalFrame& frame,
                         const EvalOptions& opts = {}) {
    detail::check_sizes(state, l, frame);
    if (const auto* stab = std::get_if<StabilizerThermalState>(&state)) {
        if (frame.is_clifford()) return stab->expectation(rotate_xy_string(l, frame));
        if (stab->n_qubits() > opts.dense_cap) {
            throw UnsupportedError("non-Clifford frame on a stabilizer state beyond the dense cap");
        }
        return correlation_tensor(state, opts).xy_correlators(frame)[l.y_mask()];
    }
    if (const auto* dense = std::get_if<DenseState>(&state)) {
        return detail::dense_xy_correlators(*dense, frame)[l.y_mask()];
    }
    const auto& ring = std::get<RingExcitationState>(state);
    const auto ops = detail::measured_ops(l, frame);
    return ring.expectation(ops).real();
}

/// Table over all 2^{N-1} even x/y strings.
inline CorrelatorTable full_xy_table(const StateBackend& state, const LocalFrame& frame,
                                     const EvalOptions& opts = {}) {
    const int n = n_qubits(state);
    if (frame.n_qubits() != n) throw DimensionError("frame size differs from state");
    if (const auto* stab = std::get_if<StabilizerThermalState>(&state)) {
        if (!frame.is_clifford()) {
            if (n > opts.dense_cap) {
                throw UnsupportedError("non-Clifford frame on a stabilizer state beyond the dense cap");
            }
            return detail::even_table(n, correlation_tensor(state, opts).xy_correlators(frame));
        }
        // Bin every full-support group element that lies in the measured planes.
        CorrelatorTable table(n);
        const std::uint64_t full = low_mask(n);
        const auto& tags = frame.tags();
        stab->for_each_group_element([&](const PauliString& g, int size) {
            if (g.support() != full) return;
            std::uint64_t y = 0;
            int sign = g.phase().sign();
            for (int j = 0; j < n; ++j) {
                const Axis a = g.at(j);
                const auto& tag = tags[static_cast<std::size_t>(j)];
                if (a == tag.x_slot().axis) {
                    sign *= tag.x_slot().negative ? -1 : 1;
                } else if (a == tag.y_slot().axis) {
                    sign *= tag.y_slot().negative ? -1 : 1;
                    y |= std::uint64_t{1} << j;
                } else {
                    return;
                }
            }
            if (!parity(y)) table.set(y, sign * stab->weight(size));
        });
        return table;
    }
    require_qubits(n, kMaxEnumerationQubits);
    if (const auto* dense = std::get_if<DenseState>(&state)) {
        return detail::even_table(n, detail::dense_xy_correlators(*dense, frame));
    }
    const auto& ring = std::get<RingExcitationState>(state);
    CorrelatorTable table(n);
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
        if (parity(y)) continue;
        const auto ops = detail::measured_ops(XYString(n, y), frame);
        table.set(y, std::clamp(ring.expectation(ops).real(), -1.0, 1.0));
    }
    return table;
}

// ---------------------------------------------------------------------------
// Ring post-selection

/// Two-site state left on sites (r, r+1) after Z-measuring every other site
/// and post-selecting all of them on |0>. Basis (particle at r, at r+1).
inline Mat2 postselect_pair(const RingExcitationState& ring, int r) {
    const int n = ring.n_qubits();
    if (n < 3) throw DimensionError("post-selection needs at least 3 sites");
    r = ((r % n) + n) % n;
    const int s = (r + 1) % n;
    const MatX& p = ring.positional();
    Mat2 m;
    m << p(r, r), p(r, s), p(s, r), p(s, s);
    return m / (p(r, r) + p(s, s));
}

/// <psi| rho_{r,r+1} |psi> for psi = (|r> - |r+1>)/sqrt(2).
inline double singlet_fidelity(const RingExcitationState& ring) {
    const Mat2 m = postselect_pair(ring, 0);
    return 0.5 * (m(0, 0) + m(1, 1) - m(0, 1) - m(1, 0)).real();
}

}  // namespace strata
