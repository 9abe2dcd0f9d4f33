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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "strata/bits.hpp"
#include "strata/errors.hpp"
#include "strata/format.hpp"
#include "strata/frame.hpp"
#include "strata/states.hpp"

namespace strata {

/// lambda_k = sum_l (-1)^{k.l} cos(pi |l| / 2) T_l for all 2^N k.
struct LambdaVector {
    int n_qubits = 0;
    std::vector<double> values;

    double sum_abs() const {
        double s = 0;
        for (double v : values) s += std::abs(v);
        return s;
    }
    double sum_sq() const {
        double s = 0;
        for (double v : values) s += v * v;
        return s;
    }
    double max_abs() const {
        double m = 0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

/// Coefficients b_k over all 2^N strings. k and its complement index the
/// same GHZ pair, so W only sees b_k + b_k'.
class WitnessCoefficients {
  public:
    WitnessCoefficients(int n_qubits, std::vector<double> b) : n_(n_qubits), b_(std::move(b)) {
        require_qubits(n_qubits, kMaxEnumerationQubits);
        if (b_.size() != (std::size_t{1} << n_qubits)) throw DimensionError("need 2^N coefficients");
    }

    /// b_{k0} = value, all others zero.
    static WitnessCoefficients single(int n_qubits, std::uint64_t k0, double value) {
        std::vector<double> b(std::size_t{1} << n_qubits, 0.0);
        b.at(k0) = value;
        return {n_qubits, std::move(b)};
    }

    int n_qubits() const { return n_; }
    const std::vector<double>& values() const { return b_; }
    double operator[](std::uint64_t k) const { return b_[k]; }

    double sum_abs() const {
        double s = 0;
        for (double v : b_) s += std::abs(v);
        return s;
    }
    /// sum |b_k| <= 2^N
    bool is_witness(double tol = 0) const { return sum_abs() <= static_cast<double>(b_.size()) + tol; }

  private:
    int n_;
    std::vector<double> b_;
};

inline LambdaVector lambda_from_table(const CorrelatorTable& table) {
    const int n = table.n_qubits();
    require_qubits(n, kMaxEnumerationQubits);
    std::vector<double> v(std::size_t{1} << n, 0.0);
    for (const auto& [y, t] : table.entries()) {
        v[y] = (popcount(y) & 3) == 0 ? t : -t;
    }
    walsh_hadamard(std::span<double>(v));
    return {n, std::move(v)};
}

/// Operational W_B at a fixed frame: sum over even l of T_l^2.
inline double w_b_value(const CorrelatorTable& table) { return table.sum_sq(); }

/// Trace of the W_B operator built from b_k = 2^N lambda_k / sum|lambda|:
/// sum lambda^2 / sum |lambda|. Never below w_b_value.
inline double w_b_exact_trace(const LambdaVector& lambda) {
    const double norm = lambda.sum_abs();
    return norm > 0 ? lambda.sum_sq() / norm : 0.0;
}

/// W_C = sqrt(W_B).
inline double w_c_value(double w_b) { return std::sqrt(std::max(w_b, 0.0)); }

/// Tr(W rho) = 2^{-N} sum_k b_k lambda_k.
inline double witness_trace(const WitnessCoefficients& b, const LambdaVector& lambda) {
    if (b.n_qubits() != lambda.n_qubits) throw DimensionError("coefficient and lambda sizes differ");
    double s = 0;
    for (std::size_t k = 0; k < lambda.values.size(); ++k) s += b[k] * lambda.values[k];
    return s / static_cast<double>(lambda.values.size());
}

/// W_A at a fixed frame: 2^N max_k |Re <k|U^dag rho U|k'>| = max_k |lambda_k|.
inline double w_a_fixed_frame(const StateBackend& state, const LocalFrame& frame, const EvalOptions& opts = {}) {
    if (const auto* dense = std::get_if<DenseState>(&state)) {
        const auto c = dense->anti_diagonal(frame);
        const std::uint64_t full = low_mask(dense->n_qubits());
        double best = 0;
        for (std::uint64_t k = 0; k < c.size(); ++k) {
            if (k > (~k & full)) continue;  // one representative per {k, k'}
            best = std::max(best, std::abs(c[k].real()));
        }
        return best * static_cast<double>(c.size());
    }
    return lambda_from_table(full_xy_table(state, frame, opts)).max_abs();
}

/// max over separable states of <W> is bounded by 2^{-N} sum |b_k|.
inline double separable_bound(const WitnessCoefficients& b) {
    return b.sum_abs() / static_cast<double>(b.values().size());
}

/// W = 1/2 sum_k b_k (|k><k'| + |k'><k|).
inline MatX build_witness_matrix(const WitnessCoefficients& b, int cap = kDefaultDenseCap) {
    const int n = b.n_qubits();
    if (n > cap) throw CapExceededError("witness matrix exceeds dense cap");
    const Eigen::Index dim = Eigen::Index{1} << n;
    const std::uint64_t full = low_mask(n);
    MatX w = MatX::Zero(dim, dim);
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(dim); ++k) {
        const auto ki = static_cast<Eigen::Index>(k);
        const auto kp = static_cast<Eigen::Index>(~k & full);
        w(ki, kp) += 0.5 * b[k];
        w(kp, ki) += 0.5 * b[k];
    }
    return w;
}

// ---------------------------------------------------------------------------
// Strata

/// Violation needed to certify at least M+1 entangled qubits: 2^{M-1}.
inline double entanglement_threshold(int m) { return std::ldexp(1.0, m - 1); }

/// Violation needed to certify (M+1)-partite entanglement on N qubits.
inline double partiteness_threshold(int m, int n) {
    if (m < 1 || m > n) throw ArgumentError("partiteness threshold needs 1 <= M <= N");
    if (n % m == 0) return std::ldexp(1.0, n - n / m);
    return std::ldexp(1.0, n - 1 - n / m);
}

struct StrataLevels {
    int min_entangled_qubits = 0;
    int min_partiteness = 0;
};

/// Strict thresholds: a value equal to a threshold stays in the lower stratum.
inline StrataLevels strata(double value, int n_qubits) {
    if (!(value >= 0)) throw ArgumentError("witness value must be non-negative");
    require_qubits(n_qubits);
    StrataLevels s;
    for (int m = 1; m <= n_qubits - 1; ++m) {
        if (value > entanglement_threshold(m)) s.min_entangled_qubits = m + 1;
        if (value > partiteness_threshold(m, n_qubits)) s.min_partiteness = std::max(s.min_partiteness, m + 1);
    }
    return s;
}

struct StrataReport {
    int n_qubits = 0;
    std::optional<double> value_wa;
    double value_wb = 0;
    double value_wc = 0;
    int min_entangled_qubits = 0;
    int min_partiteness = 0;
    bool two_setting_wwzb_excluded = true;
    bool multi_setting_wwzb_violated = false;

    /// "key=value" lines in a fixed order.
    std::string to_text() const {
        std::ostringstream os;
        os << "n_qubits=" << n_qubits << '\n';
        os << "W_A=" << (value_wa ? format_real(*value_wa) : std::string("NA")) << '\n';
        os << "W_B=" << format_real(value_wb) << '\n';
        os << "W_C=" << format_real(value_wc) << '\n';
        os << "min_entangled_qubits=" << min_entangled_qubits << '\n';
        os << "min_partiteness=" << min_partiteness << '\n';
        os << "two_setting_wwzb_excluded=" << (two_setting_wwzb_excluded ? "true" : "false") << '\n';
        os << "multi_setting_wwzb_violated=" << (multi_setting_wwzb_violated ? "true" : "false") << '\n';
        return os.str();
    }

    static std::string csv_header() {
        return "n_qubits,W_A,W_B,W_C,min_entangled_qubits,min_partiteness,two_setting_wwzb_excluded,"
               "multi_setting_wwzb_violated";
    }
    std::string to_csv_row() const {
        std::ostringstream os;
        os << n_qubits << ',' << (value_wa ? format_real(*value_wa) : std::string("NA")) << ','
           << format_real(value_wb) << ',' << format_real(value_wc) << ',' << min_entangled_qubits << ','
           << min_partiteness << ',' << (two_setting_wwzb_excluded ? 1 : 0) << ','
           << (multi_setting_wwzb_violated ? 1 : 0);
        return os.str();
    }
};

/// Builds the report; strata are driven by W_A when present, else by W_B.
inline StrataReport make_report(std::optional<double> w_a, double w_b, int n_qubits) {
    if (!(w_b >= 0) || (w_a && !(*w_a >= 0))) throw ArgumentError("witness values must be non-negative");
    StrataReport r;
    r.n_qubits = n_qubits;
    r.value_wa = w_a;
    r.value_wb = w_b;
    r.value_wc = w_c_value(w_b);
    const auto levels = strata(w_a ? *w_a : w_b, n_qubits);
    r.min_entangled_qubits = levels.min_entangled_qubits;
    r.min_partiteness = levels.min_partiteness;
    r.two_setting_wwzb_excluded = r.value_wc <= 1;
    r.multi_setting_wwzb_violated = w_b > 1;
    return r;
}

}  // namespace strata
