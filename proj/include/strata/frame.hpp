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
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "strata/bits.hpp"
#include "strata/errors.hpp"
#include "strata/pauli.hpp"

namespace strata {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

namespace detail {

inline const std::array<Mat2, 3>& pauli_xyz() {
    static const std::array<Mat2, 3> s = [] {
        std::array<Mat2, 3> m;
        m[0] << 0, 1, 1, 0;
        m[1] << 0, cplx(0, -1), cplx(0, 1), 0;
        m[2] << 1, 0, 0, -1;
        return m;
    }();
    return s;
}

}  // namespace detail

/// A signed Cartesian axis: +x, -x, +y, -y, +z, -z as indices 0..5.
struct SignedAxis {
    Axis axis = Axis::X;  // X, Y or Z
    bool negative = false;

    int index() const { return 2 * (static_cast<int>(axis) - 1) + (negative ? 1 : 0); }
    static SignedAxis from_index(int i) { return {static_cast<Axis>(i / 2 + 1), (i & 1) != 0}; }
    Vec3 vector() const {
        Vec3 v = Vec3::Zero();
        v[static_cast<int>(axis) - 1] = negative ? -1.0 : 1.0;
        return v;
    }
    bool operator==(const SignedAxis&) const = default;
};

/// One of the 24 single-qubit Clifford frames: the ordered pair of signed axes
/// measured in the x and y slots. The unmeasured third axis is their cross
/// product, so every tag is a proper rotation.
class CliffordTag {
  public:
    static constexpr int kCount = 24;

    constexpr CliffordTag() = default;
    explicit CliffordTag(int index) : index_(static_cast<std::uint8_t>(index)) {
        if (index < 0 || index >= kCount) throw ArgumentError("Clifford tag out of range");
    }

    static CliffordTag from_axes(SignedAxis x_slot, SignedAxis y_slot) {
        if (x_slot.axis == y_slot.axis) throw ArgumentError("Clifford tag axes must differ");
        int slot = 0;
        for (int b = 0; b < 6; ++b) {
            if (b / 2 == x_slot.index() / 2) continue;
            if (b == y_slot.index()) return CliffordTag(4 * x_slot.index() + slot);
            ++slot;
        }
        throw ArgumentError("unreachable Clifford tag");
    }

    int index() const { return index_; }
    SignedAxis x_slot() const { return SignedAxis::from_index(index_ / 4); }
    SignedAxis y_slot() const {
        const int a = index_ / 4;
        int slot = index_ % 4;
        for (int b = 0; b < 6; ++b) {
            if (b / 2 == a / 2) continue;
            if (slot-- == 0) return SignedAxis::from_index(b);
        }
        return {};
    }
    Mat3 rotation() const {
        Mat3 o;
        const Vec3 a = x_slot().vector();
        const Vec3 b = y_slot().vector();
        o.col(0) = a;
        o.col(1) = b;
        o.col(2) = a.cross(b);
        return o;
    }

    std::string str() const {
        auto name = [](SignedAxis s) {
            return std::string(s.negative ? "-" : "+") +
                   static_cast<char>(axis_char(s.axis) - 'A' + 'a');
        };
        return name(x_slot()) + name(y_slot());
    }

    auto operator<=>(const CliffordTag&) const = default;

  private:
    std::uint8_t index_ = 0;
};

/// U = Rz(a) Ry(b) Rz(c), with Rz(p) = diag(e^{-ip/2}, e^{ip/2}).
inline Mat2 su2_from_euler(double a, double b, double c) {
    const cplx e_plus = std::polar(1.0, -(a + c) / 2);
    const cplx e_minus = std::polar(1.0, -(a - c) / 2);
    const double cb = std::cos(b / 2);
    const double sb = std::sin(b / 2);
    Mat2 u;
    u << e_plus * cb, -e_minus * sb, std::conj(e_minus) * sb, std::conj(e_plus) * cb;
    return u;
}

/// ZYZ angles reproducing U up to a global sign.
inline std::array<double, 3> euler_from_su2(const Mat2& u) {
    const double b = 2 * std::atan2(std::abs(u(1, 0)), std::abs(u(0, 0)));
    const double sum = std::abs(u(1, 1)) > 1e-12 ? 2 * std::arg(u(1, 1)) : 0.0;
    const double diff = std::abs(u(1, 0)) > 1e-12 ? 2 * std::arg(u(1, 0)) : 0.0;
    // When one of the two is undetermined, a and c enter only through the other.
    if (std::abs(u(1, 1)) <= 1e-12) return {diff, b, 0.0};
    if (std::abs(u(1, 0)) <= 1e-12) return {sum, b, 0.0};
    return {(sum + diff) / 2, b, (sum - diff) / 2};
}

/// Orthogonal image O of U: U (v.sigma) U^dag = (O v).sigma.
inline Mat3 rotation_from_su2(const Mat2& u) {
    const auto& s = detail::pauli_xyz();
    Mat3 o;
    for (int a = 0; a < 3; ++a) {
        const Mat2 conj = u * s[a] * u.adjoint();
        for (int b = 0; b < 3; ++b) o(b, a) = 0.5 * (s[b] * conj).trace().real();
    }
    return o;
}

/// SU(2) lift of a proper rotation (via its unit quaternion).
inline Mat2 su2_from_rotation(const Mat3& o) {
    Eigen::Quaterniond q(o);
    q.normalize();
    const auto& s = detail::pauli_xyz();
    const cplx mi(0, -1);
    Mat2 u = q.w() * Mat2::Identity() + mi * (q.x() * s[0] + q.y() * s[1] + q.z() * s[2]);
    return u;
}

/// Product of per-qubit SU(2) rotations defining the measured spin directions.
/// Qubit n measures O_n x-hat in the "x" slot and O_n y-hat in the "y" slot.
class LocalFrame {
  public:
    LocalFrame() = default;

    static LocalFrame identity(int n_qubits) {
        require_qubits(n_qubits);
        return clifford(std::vector<CliffordTag>(static_cast<std::size_t>(n_qubits)));
    }

    static LocalFrame clifford(std::vector<CliffordTag> tags) {
        if (tags.empty()) throw DimensionError("frame needs at least one qubit");
        LocalFrame f;
        f.unitaries_.reserve(tags.size());
        for (const auto& t : tags) f.unitaries_.push_back(su2_from_rotation(t.rotation()));
        f.tags_ = std::move(tags);
        return f;
    }

    /// Three ZYZ Euler angles per qubit, qubit-major.
    static LocalFrame euler(std::span<const double> angles) {
        if (angles.empty() || angles.size() % 3 != 0) {
            throw DimensionError("Euler frame needs 3 angles per qubit");
        }
        LocalFrame f;
        for (std::size_t j = 0; j < angles.size(); j += 3) {
            f.unitaries_.push_back(su2_from_euler(angles[j], angles[j + 1], angles[j + 2]));
        }
        return f;
    }

    static LocalFrame from_unitaries(std::vector<Mat2> us) {
        if (us.empty()) throw DimensionError("frame needs at least one qubit");
        for (const auto& u : us) {
            if (!(u * u.adjoint()).isApprox(Mat2::Identity(), 1e-10) ||
                std::abs(u.determinant() - 1.0) > 1e-10) {
                throw ArgumentError("frame unitary is not in SU(2)");
            }
        }
        LocalFrame f;
        f.unitaries_ = std::move(us);
        return f;
    }

    int n_qubits() const { return static_cast<int>(unitaries_.size()); }
    bool is_clifford() const { return tags_.has_value(); }
    const Mat2& unitary(int qubit) const { return unitaries_.at(static_cast<std::size_t>(qubit)); }
    Mat3 rotation(int qubit) const { return rotation_from_su2(unitary(qubit)); }
    CliffordTag tag(int qubit) const {
        if (!tags_) throw UnsupportedError("frame is not a Clifford frame");
        return tags_->at(static_cast<std::size_t>(qubit));
    }
    const std::vector<CliffordTag>& tags() const {
        if (!tags_) throw UnsupportedError("frame is not a Clifford frame");
        return *tags_;
    }

    /// Measured directions (x slot, y slot) on `qubit`.
    std::pair<Vec3, Vec3> measured_axes(int qubit) const {
        if (tags_) {
            const auto& t = (*tags_)[static_cast<std::size_t>(qubit)];
            return {t.x_slot().vector(), t.y_slot().vector()};
        }
        const Mat3 o = rotation(qubit);
        return {o.col(0), o.col(1)};
    }

    /// 3N ZYZ angles reproducing this frame (up to per-qubit sign).
    std::vector<double> euler_angles() const {
        std::vector<double> out;
        out.reserve(3 * unitaries_.size());
        for (const auto& u : unitaries_) {
            const auto e = euler_from_su2(u);
            out.insert(out.end(), e.begin(), e.end());
        }
        return out;
    }

    std::string str() const {
        std::string s;
        if (tags_) {
            for (std::size_t j = 0; j < tags_->size(); ++j) {
                if (j) s.push_back(' ');
                s += (*tags_)[j].str();
            }
            return s;
        }
        const auto e = euler_angles();
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (j) s.push_back(j % 3 == 0 ? ' ' : ',');
            s += std::to_string(e[j]);
        }
        return s;
    }

  private:
    std::vector<Mat2> unitaries_;
    std::optional<std::vector<CliffordTag>> tags_;
};

/// Rotates sigma_l into the frame: returns the signed Pauli string
/// (x) (axis selected by l_j). Clifford frames only.
inline PauliString rotate_xy_string(const XYString& l, const LocalFrame& frame) {
    if (l.n_qubits() != frame.n_qubits()) throw DimensionError("XY string and frame sizes differ");
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    bool negative = false;
    for (int j = 0; j < l.n_qubits(); ++j) {
        const auto tag = frame.tag(j);
        const SignedAxis s = ((l.y_mask() >> j) & 1) ? tag.y_slot() : tag.x_slot();
        negative ^= s.negative;
        const std::uint64_t bit = std::uint64_t{1} << j;
        if (s.axis == Axis::X || s.axis == Axis::Y) x |= bit;
        if (s.axis == Axis::Z || s.axis == Axis::Y) z |= bit;
    }
    return PauliString(l.n_qubits(), x, z, negative ? Phase::minus_one() : Phase::one());
}

}  // namespace strata
