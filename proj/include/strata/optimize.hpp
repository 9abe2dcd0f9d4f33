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

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "strata/bits.hpp"
#include "strata/errors.hpp"
#include "strata/format.hpp"
#include "strata/frame.hpp"
#include "strata/nelder_mead.hpp"
#include "strata/states.hpp"
#include "strata/witness.hpp"

namespace strata {

enum class WitnessKind { WA, WB };

inline const char* witness_name(WitnessKind k) { return k == WitnessKind::WA ? "W_A" : "W_B"; }

struct OptimizerConfig {
    int restarts = 16;
    int max_iterations = 20000;  // objective evaluations per restart
    double tolerance = 1e-13;
    std::uint64_t seed = 1;
    bool clifford_prescan = true;
    EvalOptions eval{};
    /// Group elements visited by the prescan before it gives up on exactness.
    std::uint64_t prescan_element_budget = std::uint64_t{1} << kMaxEnumerationQubits;
    /// Search-tree nodes visited by the prescan.
    std::uint64_t prescan_node_budget = 50'000'000;

    void validate() const {
        if (restarts < 1) throw ArgumentError("restarts must be at least 1");
        if (max_iterations < 1) throw ArgumentError("max_iterations must be positive");
        if (!(tolerance > 0)) throw ArgumentError("tolerance must be positive");
    }
};

struct RestartTrace {
    int restart = 0;
    int iterations = 0;
    double value = 0;
};

struct PrescanResult {
    LocalFrame frame;
    double value_wa = 0;  // exact max_k |lambda_k| at the frame
    double value_wb = 0;  // exact sum of T_l^2 at the frame
    double aligned_sum_abs = 0;  // sum |T_l| of the winning parity class
    bool truncated = false;
};

struct OptimizeResult {
    LocalFrame frame;
    WitnessKind kind = WitnessKind::WB;
    double value = 0;
    double value_wa = 0;
    double value_wb = 0;
    bool from_prescan = false;
    bool prescan_truncated = false;
    std::vector<RestartTrace> trace;

    std::string trace_csv() const {
        std::ostringstream os;
        os << "restart,iterations,value\n";
        for (const auto& t : trace) os << t.restart << ',' << t.iterations << ',' << format_real(t.value) << '\n';
        return os.str();
    }
};

namespace detail {

/// Third axis index (0=x, 1=y, 2=z) left unmeasured, and the two measured
/// axes in slot order. Orders are right-handed so every choice is a rotation.
struct PlaneChoice {
    Axis unmeasured;
    Axis x_slot;
    Axis y_slot;
};
inline constexpr PlaneChoice kPlanes[3] = {
    {Axis::Z, Axis::X, Axis::Y},
    {Axis::Y, Axis::Z, Axis::X},
    {Axis::X, Axis::Z, Axis::Y},
};

inline CliffordTag plane_tag(const PlaneChoice& p, bool swapped) {
    // Swapping the slots of a right-handed pair needs one sign flip to stay proper.
    if (!swapped) return CliffordTag::from_axes({p.x_slot, false}, {p.y_slot, false});
    return CliffordTag::from_axes({p.y_slot, false}, {p.x_slot, true});
}

inline Axis axis_at(std::uint64_t x, std::uint64_t z, int j) {
    const bool xb = (x >> j) & 1;
    const bool zb = (z >> j) & 1;
    if (xb && zb) return Axis::Y;
    if (xb) return Axis::X;
    if (zb) return Axis::Z;
    return Axis::I;
}

inline double w_b_from_all(const std::vector<double>& all) {
    double s = 0;
    for (std::uint64_t l = 0; l < all.size(); ++l) {
        if (parity(l) == 0) s += all[l] * all[l];
    }
    return s;
}

inline double w_a_from_all(const std::vector<double>& all, std::vector<double>& scratch) {
    scratch.assign(all.size(), 0.0);
    for (std::uint64_t l = 0; l < all.size(); ++l) {
        if (parity(l) != 0) continue;
        scratch[l] = (popcount(l) & 3) == 0 ? all[l] : -all[l];
    }
    walsh_hadamard(std::span<double>(scratch));
    double m = 0;
    for (double v : scratch) m = std::max(m, std::abs(v));
    return m;
}

inline std::pair<Vec3, Vec3> euler_axes(double a, double b, double c) {
    const Mat3 o = (Eigen::AngleAxisd(a, Vec3::UnitZ()) * Eigen::AngleAxisd(b, Vec3::UnitY()) *
                    Eigen::AngleAxisd(c, Vec3::UnitZ()))
                       .toRotationMatrix();
    return {o.col(0), o.col(1)};
}

inline double wrap_angle(double a) {
    const double two_pi = 2 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a < 0) a += two_pi;
    return a;
}

/// Uniform double in [0,1) from the top 53 bits; stable across standard libraries.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool nearly_equal(double a, double b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)); }

}  // namespace detail

/// Best Clifford-aligned frame for a stabilizer thermal state. Each qubit picks
/// the measured plane (xy, zx or zy); a full-support group element is seen iff
/// its letter on every qubit lies in that plane, with parity of y-slot letters
/// deciding which of the two sign-coherent classes it joins. Depth-first
/// search with the remaining-mass bound; the better class is selected by
/// swapping the slots on qubit 0.
inline PrescanResult clifford_prescan(const StabilizerThermalState& state, WitnessKind kind = WitnessKind::WA,
                                      const OptimizerConfig& config = {}) {
    const int n = state.n_qubits();
    PrescanResult out;
    out.truncated = n > kMaxEnumerationQubits;

    struct Element {
        std::uint64_t x;
        std::uint64_t z;
        double value;  // signed expectation
    };
    std::vector<Element> elems;
    const std::uint64_t full = low_mask(n);
    state.for_each_group_element(
        [&](const PauliString& g, int size) {
            if ((g.x_mask() | g.z_mask()) != full) return;
            const double w = state.weight(size);
            if (w == 0) return;
            elems.push_back({g.x_mask(), g.z_mask(), g.phase().sign() * w});
        },
        out.truncated ? config.prescan_element_budget : 0);

    auto score = [kind](double v) { return kind == WitnessKind::WA ? std::abs(v) : v * v; };

    std::vector<int> choice(static_cast<std::size_t>(n), 0);
    std::vector<int> best_choice(static_cast<std::size_t>(n), 0);
    bool best_swapped = false;
    double best = -1;
    std::uint64_t nodes = 0;

    auto lex_less = [&](const std::vector<int>& c, bool swapped) {
        // Compare as tag vectors: qubit 0 carries the swap.
        const int t0 = detail::plane_tag(detail::kPlanes[c[0]], swapped).index();
        const int b0 = detail::plane_tag(detail::kPlanes[best_choice[0]], best_swapped).index();
        if (t0 != b0) return t0 < b0;
        for (std::size_t j = 1; j < c.size(); ++j) {
            const int t = detail::plane_tag(detail::kPlanes[c[j]], false).index();
            const int b = detail::plane_tag(detail::kPlanes[best_choice[j]], false).index();
            if (t != b) return t < b;
        }
        return false;
    };

    // Two planes at qubit j > 0 that keep the same live elements, with parities
    // equal or all flipped, root identical subtrees (a global flip only swaps
    // the classes). Only the first is searched. A skipped flipped twin still
    // names a tied frame: the base frame with that qubit switched and the
    // qubit-0 slots swapped. twin[j] records the smallest such plane.
    std::vector<int> twin(static_cast<std::size_t>(n), -1);
    std::vector<int> alt_choice;

    struct Live {
        std::uint32_t index;
        std::uint8_t parity;
    };
    auto consider = [&](const std::vector<int>& c, bool swapped, double v) {
        if (best < 0 || (v > best && !detail::nearly_equal(v, best)) ||
            (detail::nearly_equal(v, best) && lex_less(c, swapped))) {
            best = v;
            best_choice = c;
            best_swapped = swapped;
        }
    };
    std::function<void(int, const std::vector<Live>&)> dfs = [&](int j, const std::vector<Live>& live) {
        if (++nodes > config.prescan_node_budget) {
            out.truncated = true;
            return;
        }
        double bound = 0;
        for (const auto& e : live) bound += score(elems[e.index].value);
        if (best >= 0 && bound < best && !detail::nearly_equal(bound, best)) return;
        if (j == n) {
            double cls[2] = {0, 0};
            for (const auto& e : live) cls[e.parity] += score(elems[e.index].value);
            int last_twin = -1;
            for (int q = n - 1; q > 0 && last_twin < 0; --q) {
                if (twin[static_cast<std::size_t>(q)] >= 0) last_twin = q;
            }
            // Class 0 is read with slots as chosen; class 1 needs the qubit-0 swap.
            for (int c = 0; c < 2; ++c) {
                const bool swapped = c == 1;
                consider(choice, swapped, cls[c]);
                if (last_twin >= 0) {
                    alt_choice = choice;
                    alt_choice[static_cast<std::size_t>(last_twin)] = twin[static_cast<std::size_t>(last_twin)];
                    consider(alt_choice, !swapped, cls[c]);
                }
            }
            return;
        }

        // same[p][q]: 0 = different, 1 = identical, 2 = identical up to a global flip.
        int same[3][3] = {};
        if (j > 0) {
            for (int p = 0; p < 3; ++p) {
                for (int q = p + 1; q < 3; ++q) {
                    const auto& a = detail::kPlanes[p];
                    const auto& b = detail::kPlanes[q];
                    int flip = -1;
                    bool ok = true;
                    for (const auto& e : live) {
                        const Axis ax = detail::axis_at(elems[e.index].x, elems[e.index].z, j);
                        const bool ka = ax != a.unmeasured;
                        if (ka != (ax != b.unmeasured)) {
                            ok = false;
                            break;
                        }
                        if (!ka) continue;
                        const int d = (ax == a.y_slot) != (ax == b.y_slot) ? 1 : 0;
                        if (flip < 0) flip = d;
                        if (flip != d) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) same[p][q] = flip == 1 ? 2 : 1;
                }
            }
        }

        std::vector<Live> next;
        next.reserve(live.size());
        for (int p = 0; p < 3; ++p) {
            bool skip = false;
            for (int q = 0; q < p; ++q) skip = skip || same[q][p] != 0;
            if (skip) continue;
            int tw = -1;
            for (int q = p + 1; q < 3 && tw < 0; ++q) {
                if (same[p][q] == 2) tw = q;
            }
            const auto& plane = detail::kPlanes[p];
            next.clear();
            for (const auto& e : live) {
                const Axis a = detail::axis_at(elems[e.index].x, elems[e.index].z, j);
                if (a == plane.unmeasured) continue;
                next.push_back({e.index, static_cast<std::uint8_t>(e.parity ^ (a == plane.y_slot ? 1 : 0))});
            }
            choice[static_cast<std::size_t>(j)] = p;
            twin[static_cast<std::size_t>(j)] = tw;
            dfs(j + 1, next);
            twin[static_cast<std::size_t>(j)] = -1;
            if (out.truncated && nodes > config.prescan_node_budget) return;
        }
    };

    if (elems.empty()) {
        // Nothing survives in any frame (beta = 0, or no full-support element).
        out.frame = LocalFrame::identity(n);
        return out;
    }
    std::vector<Live> root(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) root[i] = {static_cast<std::uint32_t>(i), 0};
    dfs(0, root);

    std::vector<CliffordTag> tags;
    tags.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        tags.push_back(detail::plane_tag(detail::kPlanes[best_choice[static_cast<std::size_t>(j)]],
                                         j == 0 && best_swapped));
    }
    out.frame = LocalFrame::clifford(std::move(tags));

    if (out.truncated && n > kMaxEnumerationQubits) {
        // Partial enumeration: sum of squares over the visited elements is a
        // lower bound on W_B, and W_A >= W_B.
        double s = 0;
        double a = 0;
        for (const auto& e : elems) {
            bool seen = true;
            for (int j = 0; j < n && seen; ++j) {
                const auto& plane = detail::kPlanes[best_choice[static_cast<std::size_t>(j)]];
                seen = detail::axis_at(e.x, e.z, j) != plane.unmeasured;
            }
            if (seen) {
                s += e.value * e.value;
                a += std::abs(e.value);
            }
        }
        out.value_wb = s;
        out.value_wa = s;
        out.aligned_sum_abs = a;
        return out;
    }
    const StateBackend backend = state;
    const CorrelatorTable table = full_xy_table(backend, out.frame, config.eval);
    out.value_wb = w_b_value(table);
    out.value_wa = lambda_from_table(table).max_abs();
    out.aligned_sum_abs = kind == WitnessKind::WA ? best : table.sum_abs();
    return out;
}

/// Maximizes W_A or W_B over local frames: Clifford prescan (stabilizer
/// backends), then multi-start simplex descent on the 3N Euler angles. The
/// returned value is re-evaluated exactly at the returned frame.
inline OptimizeResult maximize(const StateBackend& state, WitnessKind kind, const OptimizerConfig& config,
                               const std::optional<LocalFrame>& start = std::nullopt) {
    config.validate();
    const int n = n_qubits(state);
    if (start && start->n_qubits() != n) throw DimensionError("start frame size differs from state");

    OptimizeResult res;
    res.kind = kind;

    struct Best {
        LocalFrame frame;
        double value;
        std::vector<double> angles;  // empty for the Clifford candidate
    };
    std::optional<Best> best;

    const auto* stab = std::get_if<StabilizerThermalState>(&state);
    std::optional<PrescanResult> pre;
    if (stab && config.clifford_prescan) {
        pre = clifford_prescan(*stab, kind, config);
        res.prescan_truncated = pre->truncated;
        best = Best{pre->frame, kind == WitnessKind::WA ? pre->value_wa : pre->value_wb, {}};
    }

    const bool continuous = n <= config.eval.dense_cap;
    if (!continuous && !best) {
        throw UnsupportedError("no feasible evaluation path: " + std::to_string(n) + " qubits exceed the cap of " +
                               std::to_string(config.eval.dense_cap) +
                               (stab ? " and the Clifford prescan is disabled" : ""));
    }

    if (continuous) {
        const CorrelationTensor tensor = correlation_tensor(state, config.eval);
        std::vector<double> scratch;
        auto value_at = [&](const std::vector<double>& x) {
            const auto all = tensor.contract([&x](int j) {
                const auto i = static_cast<std::size_t>(3 * j);
                return detail::euler_axes(x[i], x[i + 1], x[i + 2]);
            });
            return kind == WitnessKind::WA ? detail::w_a_from_all(all, scratch) : detail::w_b_from_all(all);
        };
        NelderMeadOptions nm;
        nm.max_evaluations = config.max_iterations;
        nm.f_tolerance = config.tolerance;

        for (int r = 0; r < config.restarts; ++r) {
            std::vector<double> x0;
            if (r == 0 && start) {
                x0 = start->euler_angles();
            } else if (r == 0 && pre) {
                x0 = pre->frame.euler_angles();
            } else {
                std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(r));
                x0.resize(static_cast<std::size_t>(3 * n));
                for (auto& a : x0) a = 2 * std::numbers::pi * detail::unit_uniform(rng);
            }
            const auto fit = nelder_mead_polished([&](const std::vector<double>& x) { return -value_at(x); }, x0, nm);
            std::vector<double> angles = fit.x;
            for (auto& a : angles) a = detail::wrap_angle(a);
            const double v = -fit.f;
            res.trace.push_back({r, fit.evaluations, v});

            bool take = !best;
            if (best) {
                if (v > best->value && !detail::nearly_equal(v, best->value)) {
                    take = true;
                } else if (detail::nearly_equal(v, best->value) && !best->angles.empty()) {
                    take = angles < best->angles;  // Clifford candidates win ties
                }
            }
            if (take) best = Best{LocalFrame::euler(angles), v, angles};
        }
    }

    res.frame = best->frame;
    res.from_prescan = best->angles.empty();
    if (res.from_prescan && pre) {
        res.value_wa = pre->value_wa;
        res.value_wb = pre->value_wb;
    } else {
        const CorrelatorTable table = full_xy_table(state, res.frame, config.eval);
        res.value_wb = w_b_value(table);
        res.value_wa = w_a_fixed_frame(state, res.frame, config.eval);
    }
    res.value = kind == WitnessKind::WA ? res.value_wa : res.value_wb;
    return res;
}

inline OptimizeResult maximize_w_a(const StateBackend& state, const OptimizerConfig& config = {},
                                   const std::optional<LocalFrame>& start = std::nullopt) {
    return maximize(state, WitnessKind::WA, config, start);
}

inline OptimizeResult maximize_w_b(const StateBackend& state, const OptimizerConfig& config = {},
                                   const std::optional<LocalFrame>& start = std::nullopt) {
    return maximize(state, WitnessKind::WB, config, start);
}

}  // namespace strata
