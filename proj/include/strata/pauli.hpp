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

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "strata/bits.hpp"
#include "strata/errors.hpp"

namespace strata {

/// A quartic root of unity, i^log_i. Exact; never stored as floating point.
class Phase {
  public:
    constexpr Phase() = default;
    constexpr explicit Phase(int log_i) : log_i_(static_cast<std::uint8_t>(((log_i % 4) + 4) % 4)) {}

    static constexpr Phase one() { return Phase(0); }
    static constexpr Phase i() { return Phase(1); }
    static constexpr Phase minus_one() { return Phase(2); }
    static constexpr Phase minus_i() { return Phase(3); }

    constexpr int log_i() const { return log_i_; }
    constexpr bool is_real() const { return (log_i_ & 1) == 0; }
    /// +1 or -1; only meaningful when is_real().
    constexpr int sign() const { return log_i_ == 0 ? 1 : -1; }

    constexpr Phase operator*(Phase o) const { return Phase(log_i_ + o.log_i_); }
    constexpr Phase operator-() const { return Phase(log_i_ + 2); }
    constexpr bool operator==(const Phase&) const = default;

    std::complex<double> value() const {
        constexpr double re[4] = {1, 0, -1, 0};
        constexpr double im[4] = {0, 1, 0, -1};
        return {re[log_i_], im[log_i_]};
    }

    std::string str() const {
        constexpr const char* names[4] = {"+", "+i", "-", "-i"};
        return names[log_i_];
    }

  private:
    std::uint8_t log_i_ = 0;
};

/// Single-qubit Pauli letter as encoded by an (x, z) bit pair.
enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char axis_char(Axis a) { return "IXYZ"[static_cast<int>(a)]; }

/// N-qubit Pauli operator i^phase * P_0 (x) P_1 (x) ... (x) P_{N-1}, where every
/// P_j is one of the Hermitian letters I, X, Y, Z. Qubit j lives at bit j of
/// both masks; Y sets both.
class PauliString {
  public:
    PauliString() = default;

    PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask, Phase phase = {})
        : n_(n_qubits), x_(x_mask), z_(z_mask), phase_(phase) {
        require_qubits(n_qubits);
        const auto m = low_mask(n_qubits);
        if ((x_mask & ~m) != 0 || (z_mask & ~m) != 0) {
            throw DimensionError("Pauli mask has bits beyond qubit count");
        }
    }

    static PauliString identity(int n_qubits) { return PauliString(n_qubits, 0, 0); }

    /// Parses "+XZY", "-IYX", "+iXX", "-i_Z" or an unsigned "XYZ". '_' is I.
    static PauliString parse(std::string_view text);

    int n_qubits() const { return n_; }
    std::uint64_t x_mask() const { return x_; }
    std::uint64_t z_mask() const { return z_; }
    Phase phase() const { return phase_; }
    std::uint64_t support() const { return x_ | z_; }
    int weight() const { return popcount(x_ | z_); }
    bool is_hermitian() const { return phase_.is_real(); }
    bool is_identity_mask() const { return (x_ | z_) == 0; }

    Axis at(int qubit) const {
        const int xb = static_cast<int>((x_ >> qubit) & 1);
        const int zb = static_cast<int>((z_ >> qubit) & 1);
        if (xb && zb) return Axis::Y;
        if (xb) return Axis::X;
        if (zb) return Axis::Z;
        return Axis::I;
    }

    PauliString with_phase(Phase p) const {
        PauliString r = *this;
        r.phase_ = p;
        return r;
    }

    /// Same masks; phase compared exactly.
    bool operator==(const PauliString&) const = default;

    std::string str() const {
        std::string s = phase_.str();
        for (int j = 0; j < n_; ++j) s.push_back(axis_char(at(j)));
        return s;
    }

  private:
    int n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    Phase phase_;
};

inline PauliString PauliString::parse(std::string_view text) {
    Phase phase;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') phase = Phase::minus_one();
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase = phase * Phase::i();
        ++pos;
    }
    const auto letters = text.substr(pos);
    if (letters.empty()) throw ParseError("empty Pauli string '" + std::string(text) + "'");
    if (letters.size() > static_cast<std::size_t>(kMaxQubits)) {
        throw ParseError("Pauli string longer than " + std::to_string(kMaxQubits) + " qubits");
    }
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    for (std::size_t j = 0; j < letters.size(); ++j) {
        const std::uint64_t bit = std::uint64_t{1} << j;
        switch (letters[j]) {
            case 'I':
            case '_':
                break;
            case 'X':
                x |= bit;
                break;
            case 'Y':
                x |= bit;
                z |= bit;
                break;
            case 'Z':
                z |= bit;
                break;
            default:
                throw ParseError("bad Pauli letter '" + std::string(1, letters[j]) + "' in '" +
                                 std::string(text) + "'");
        }
    }
    return PauliString(static_cast<int>(letters.size()), x, z, phase);
}

inline void require_same_size(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw DimensionError("Pauli strings act on " + std::to_string(a.n_qubits()) + " and " +
                             std::to_string(b.n_qubits()) + " qubits");
    }
}

/// Operator product a*b with exact phase.
///
/// Works in the X^x Z^z form where Y = i X Z: moving Z^{z_a} past X^{x_b}
/// costs (-1)^{|z_a & x_b|}, and the Y counts convert between the two forms.
inline PauliString multiply(const PauliString& a, const PauliString& b) {
    require_same_size(a, b);
    const std::uint64_t x = a.x_mask() ^ b.x_mask();
    const std::uint64_t z = a.z_mask() ^ b.z_mask();
    const int log_i = a.phase().log_i() + b.phase().log_i() + popcount(a.x_mask() & a.z_mask()) +
                      popcount(b.x_mask() & b.z_mask()) + 2 * popcount(a.z_mask() & b.x_mask()) -
                      popcount(x & z);
    return PauliString(a.n_qubits(), x, z, Phase(log_i));
}

inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

/// True iff the symplectic product of the masks is even.
inline bool commutes(const PauliString& a, const PauliString& b) {
    require_same_size(a, b);
    return !parity((a.x_mask() & b.z_mask()) ^ (a.z_mask() & b.x_mask()));
}

/// N-qubit string of sigma_x / sigma_y letters; bit j of y_mask selects sigma_y.
class XYString {
  public:
    XYString() = default;
    XYString(int n_qubits, std::uint64_t y_mask) : n_(n_qubits), y_(y_mask) {
        require_qubits(n_qubits);
        if ((y_mask & ~low_mask(n_qubits)) != 0) {
            throw DimensionError("XY mask has bits beyond qubit count");
        }
    }

    /// Parses a string of 'x'/'y' letters (case-insensitive), qubit 0 first.
    static XYString parse(std::string_view text) {
        if (text.empty() || text.size() > static_cast<std::size_t>(kMaxQubits)) {
            throw ParseError("bad XY string length");
        }
        std::uint64_t y = 0;
        for (std::size_t j = 0; j < text.size(); ++j) {
            const char c = text[j];
            if (c == 'y' || c == 'Y') {
                y |= std::uint64_t{1} << j;
            } else if (c != 'x' && c != 'X') {
                throw ParseError("bad XY letter '" + std::string(1, c) + "'");
            }
        }
        return XYString(static_cast<int>(text.size()), y);
    }

    int n_qubits() const { return n_; }
    std::uint64_t y_mask() const { return y_; }
    int y_count() const { return popcount(y_); }
    bool is_even() const { return (y_count() & 1) == 0; }

    /// cos(pi |l| / 2) as an exact integer in {+1, 0, -1}.
    int cos_weight() const {
        switch (y_count() & 3) {
            case 0:
                return 1;
            case 2:
                return -1;
            default:
                return 0;
        }
    }

    PauliString to_pauli() const { return PauliString(n_, low_mask(n_), y_); }

    std::string str() const {
        std::string s;
        for (int j = 0; j < n_; ++j) s.push_back(((y_ >> j) & 1) ? 'y' : 'x');
        return s;
    }

    auto operator<=>(const XYString&) const = default;

  private:
    int n_ = 0;
    std::uint64_t y_ = 0;
};

struct BasisAction {
    Phase phase;
    std::uint64_t k_prime = 0;
};

/// sigma_l |k> = (-1)^{k.l} i^{|l|} |k'>, with k' the bitwise complement of k.
inline BasisAction apply_to_basis_state(const XYString& l, std::uint64_t k, int n_qubits) {
    if (l.n_qubits() != n_qubits) throw DimensionError("XY string and basis state sizes differ");
    const auto m = low_mask(n_qubits);
    if ((k & ~m) != 0) throw DimensionError("basis state has bits beyond qubit count");
    Phase p(l.y_count());
    if (parity(k & l.y_mask())) p = -p;
    return {p, ~k & m};
}

inline void require_pairwise_commuting(std::span<const PauliString> generators) {
    for (std::size_t a = 0; a < generators.size(); ++a) {
        for (std::size_t b = a + 1; b < generators.size(); ++b) {
            if (!commutes(generators[a], generators[b])) {
                throw ModelError("generators " + generators[a].str() + " and " + generators[b].str() +
                                 " do not commute");
            }
        }
    }
}

/// Ordered product of the generators whose index bit is set in `subset`.
inline PauliString subset_product(std::span<const PauliString> generators, std::uint64_t subset) {
    if (generators.empty()) throw DimensionError("empty generator list");
    if (generators.size() < 64 && (subset >> generators.size()) != 0) {
        throw DimensionError("subset selects a generator past the end of the list");
    }
    require_pairwise_commuting(generators);
    PauliString acc = PauliString::identity(generators.front().n_qubits());
    for (std::size_t g = 0; g < generators.size(); ++g) {
        if ((subset >> g) & 1) acc = multiply(acc, generators[g]);
    }
    return acc;
}

}  // namespace strata
