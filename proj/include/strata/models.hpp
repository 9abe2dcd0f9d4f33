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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strata/errors.hpp"
#include "strata/optimize.hpp"
#include "strata/pauli.hpp"
#include "strata/states.hpp"

namespace strata {

// ---------------------------------------------------------------------------
// Generators

/// X...X and Z_1 Z_n for n = 2..N. Ground state is the N-qubit GHZ state.
inline std::vector<PauliString> ghz_generators(int n) {
    if (n < 2) throw ArgumentError("GHZ model needs N >= 2");
    require_qubits(n);
    std::vector<PauliString> g;
    g.reserve(static_cast<std::size_t>(n));
    g.emplace_back(n, low_mask(n), 0);
    for (int j = 1; j < n; ++j) g.emplace_back(n, 0, (std::uint64_t{1} << j) | 1u);
    return g;
}

/// Open chain: X_1 Z_2, Z_{n-1} X_n Z_{n+1}, Z_{N-1} X_N.
inline std::vector<PauliString> cluster_generators(int n) {
    if (n < 2) throw ArgumentError("cluster model needs N >= 2");
    require_qubits(n);
    std::vector<PauliString> g;
    g.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::uint64_t z = 0;
        if (j > 0) z |= std::uint64_t{1} << (j - 1);
        if (j + 1 < n) z |= std::uint64_t{1} << (j + 1);
        g.emplace_back(n, std::uint64_t{1} << j, z);
    }
    return g;
}

inline StabilizerThermalState ghz_state(int n, double beta) { return {ghz_generators(n), beta}; }
inline StabilizerThermalState cluster_state(int n, double beta) { return {cluster_generators(n), beta}; }

// ---------------------------------------------------------------------------
// Closed forms

/// N = 3m + 2r with r in {0,1,2}.
struct ClusterShape {
    int n_qubits = 0;
    int m = 0;
    int r = 0;

    static ClusterShape of(int n) {
        if (n < 2) throw ArgumentError("cluster chain needs N >= 2");
        const int r = (2 * n) % 3;
        const int m = (n - 2 * r) / 3;
        if (m == 0 && r == 1) {
            throw UnsupportedError("two-qubit cluster chain (m = 0, r = 1) has no closed form");
        }
        return {n, m, r};
    }
};

inline double ghz_closed_form(int n, double beta, WitnessKind kind) {
    if (n < 2) throw ArgumentError("GHZ model needs N >= 2");
    const double t = thermal_weight(beta);
    const double u = kind == WitnessKind::WA ? t : t * t;
    return u * std::pow(1 + u, n - 1);
}

namespace detail {

inline double cluster_poly(const ClusterShape& s, double u) {
    const int k = s.m + s.r;
    return std::pow(u, k) * std::pow(1 + u * u, k - 1) * std::pow(1 + u, 2 - s.r);
}

}  // namespace detail

/// u^{m+r} (1+u^2)^{m+r-1} (1+u)^{2-r}, u = tanh(beta/2) (W_A) or its square (W_B).
inline double cluster_closed_form(int n, double beta, WitnessKind kind) {
    const ClusterShape s = ClusterShape::of(n);
    const double t = thermal_weight(beta);
    return detail::cluster_poly(s, kind == WitnessKind::WA ? t : t * t);
}

// ---------------------------------------------------------------------------
// Critical temperatures

enum class ModelKind { GHZ, Cluster, Ring, ClusterLimit, File };

/// Parsed model identifier: ghz:N, cluster:N, ring:N, cluster-limit, file:<path>.
struct ModelId {
    ModelKind kind = ModelKind::GHZ;
    int n_qubits = 0;
    std::string path;

    static ModelId parse(std::string_view s) {
        if (s == "cluster-limit") return {ModelKind::ClusterLimit, 0, {}};
        const auto colon = s.find(':');
        if (colon == std::string_view::npos) throw ParseError("unknown model '" + std::string(s) + "'");
        const std::string_view head = s.substr(0, colon);
        const std::string_view tail = s.substr(colon + 1);
        if (head == "file") {
            if (tail.empty()) throw ParseError("file model needs a path");
            return {ModelKind::File, 0, std::string(tail)};
        }
        ModelKind kind;
        if (head == "ghz") {
            kind = ModelKind::GHZ;
        } else if (head == "cluster") {
            kind = ModelKind::Cluster;
        } else if (head == "ring") {
            kind = ModelKind::Ring;
        } else {
            throw ParseError("unknown model '" + std::string(s) + "'");
        }
        int n = 0;
        const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), n);
        if (ec != std::errc() || ptr != tail.data() + tail.size() || n < 2 || n > kMaxQubits) {
            throw ParseError("bad qubit count in model '" + std::string(s) + "'");
        }
        return {kind, n, {}};
    }

    std::string str() const {
        switch (kind) {
            case ModelKind::GHZ: return "ghz:" + std::to_string(n_qubits);
            case ModelKind::Cluster: return "cluster:" + std::to_string(n_qubits);
            case ModelKind::Ring: return "ring:" + std::to_string(n_qubits);
            case ModelKind::ClusterLimit: return "cluster-limit";
            case ModelKind::File: return "file:" + path;
        }
        return {};
    }
};

/// Closed form of a GHZ or cluster model.
inline double closed_form(const ModelId& model, double beta, WitnessKind kind) {
    switch (model.kind) {
        case ModelKind::GHZ: return ghz_closed_form(model.n_qubits, beta, kind);
        case ModelKind::Cluster: return cluster_closed_form(model.n_qubits, beta, kind);
        default: throw UnsupportedError("model " + model.str() + " has no closed form");
    }
}

namespace detail {

/// Smallest u in [0,1] with f(u) = target for f strictly increasing on [0,1].
template <typename F>
double bisect_unit(F&& f, double target) {
    double lo = 0;
    double hi = 1;
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (!(f_lo < f_hi)) throw Error("closed form is not increasing in beta");
    if (target <= f_lo || target >= f_hi) {
        throw NoRootError("threshold " + format_real(target) + " is outside the attainable range (" +
                          format_real(f_lo) + ", " + format_real(f_hi) + ")");
    }
    for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (!(fm >= f_lo && fm <= f_hi)) throw Error("closed form is not increasing in beta");
        if (fm < target) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// beta at which the model's closed form reaches `threshold`. For the
/// infinite cluster chain the answer is the root of u (1 + u^2) = 1 for
/// every positive threshold, since the per-cell factor dominates as m grows.
inline double critical_beta(const ModelId& model, WitnessKind kind, double threshold) {
    if (!(threshold > 0)) throw ArgumentError("threshold must be positive");
    double u = 0;
    switch (model.kind) {
        case ModelKind::GHZ: {
            const int n = model.n_qubits;
            if (n < 2) throw ArgumentError("GHZ model needs N >= 2");
            u = detail::bisect_unit([n](double x) { return x * std::pow(1 + x, n - 1); }, threshold);
            break;
        }
        case ModelKind::Cluster: {
            const ClusterShape s = ClusterShape::of(model.n_qubits);
            u = detail::bisect_unit([&s](double x) { return detail::cluster_poly(s, x); }, threshold);
            break;
        }
        case ModelKind::ClusterLimit:
            u = detail::bisect_unit([](double x) { return x * (1 + x * x); }, 1.0);
            break;
        default: throw UnsupportedError("model " + model.str() + " has no critical-temperature solver");
    }
    const double t = kind == WitnessKind::WA ? u : std::sqrt(u);
    return 2 * std::atanh(t);
}

struct ScalingPoint {
    int n_qubits = 0;
    double beta = 0;
};

struct ScalingResult {
    std::vector<ScalingPoint> points;
    /// Least-squares slope of log tanh(beta/2) against log N.
    double exponent = 0;
};

/// Critical beta of the GHZ model at W_A threshold 1 for each N.
inline ScalingResult ghz_critical_scaling(const std::vector<int>& sizes) {
    ScalingResult out;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n : sizes) {
        const double b = critical_beta({ModelKind::GHZ, n, {}}, WitnessKind::WA, 1.0);
        out.points.push_back({n, b});
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(std::tanh(b / 2));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(sizes.size());
    const double den = k * sxx - sx * sx;
    out.exponent = sizes.size() >= 2 && den != 0 ? (k * sxy - sx * sy) / den : 0.0;
    return out;
}

/// Builds the state backend of a built-in model (file models go through io.hpp).
inline StateBackend make_model_state(const ModelId& model, double beta) {
    switch (model.kind) {
        case ModelKind::GHZ: return ghz_state(model.n_qubits, beta);
        case ModelKind::Cluster: return cluster_state(model.n_qubits, beta);
        case ModelKind::Ring: return RingExcitationState(model.n_qubits, beta);
        default: throw UnsupportedError("model " + model.str() + " has no state backend");
    }
}

}  // namespace strata
