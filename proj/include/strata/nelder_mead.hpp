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
#include <numeric>
#include <vector>

#include "strata/errors.hpp"

namespace strata {

struct NelderMeadOptions {
    int max_evaluations = 20000;
    double f_tolerance = 1e-13;  // spread of simplex values
    double x_tolerance = 1e-9;   // simplex radius around the best vertex
    double initial_step = 0.5;
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0;
    int evaluations = 0;
};

/// Derivative-free simplex minimization with dimension-adaptive coefficients
/// (reflection 1, expansion 1+2/n, contraction 3/4-1/(2n), shrink 1-1/n).
template <typename F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, const NelderMeadOptions& opt = {}) {
    const std::size_t n = x0.size();
    if (n == 0) throw ArgumentError("Nelder-Mead needs at least one variable");
    const double dn = static_cast<double>(n);
    const double alpha = 1.0;
    const double gamma = 1.0 + 2.0 / dn;
    const double rho = 0.75 - 1.0 / (2.0 * dn);
    const double sigma = n > 1 ? 1.0 - 1.0 / dn : 0.5;

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opt.initial_step;
    for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    while (evals < opt.max_evaluations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];

        double radius = 0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t d = 0; d < n; ++d) {
                radius = std::max(radius, std::abs(simplex[i][d] - simplex[best][d]));
            }
        }
        if (fv[worst] - fv[best] <= opt.f_tolerance && radius <= opt.x_tolerance) break;
        if (radius <= 1e-14) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d] / dn;
        }
        for (std::size_t d = 0; d < n; ++d) xr[d] = centroid[d] + alpha * (centroid[d] - simplex[worst][d]);
        const double fr = eval(xr);
        if (fr < fv[best]) {
            for (std::size_t d = 0; d < n; ++d) xe[d] = centroid[d] + gamma * (xr[d] - centroid[d]);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                fv[worst] = fe;
            } else {
                simplex[worst] = xr;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            simplex[worst] = xr;
            fv[worst] = fr;
            continue;
        }
        const bool outside = fr < fv[worst];
        for (std::size_t d = 0; d < n; ++d) {
            xc[d] = outside ? centroid[d] + rho * (xr[d] - centroid[d])
                            : centroid[d] - rho * (centroid[d] - simplex[worst][d]);
        }
        const double fc = eval(xc);
        if (fc < (outside ? fr : fv[worst])) {
            simplex[worst] = xc;
            fv[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t d = 0; d < n; ++d) {
                simplex[i][d] = simplex[best][d] + sigma * (simplex[i][d] - simplex[best][d]);
            }
            fv[i] = eval(simplex[i]);
        }
    }
    const auto it = std::min_element(fv.begin(), fv.end());
    const auto idx = static_cast<std::size_t>(it - fv.begin());
    return {simplex[idx], fv[idx], evals};
}

/// Repeats Nelder-Mead from its own optimum with a shrinking initial simplex
/// until a round no longer improves by more than f_tolerance.
template <typename F>
NelderMeadResult nelder_mead_polished(F&& f, std::vector<double> x0, const NelderMeadOptions& opt = {},
                                      int max_rounds = 4) {
    NelderMeadResult best = nelder_mead(f, std::move(x0), opt);
    int total = best.evaluations;
    double step = opt.initial_step;
    for (int round = 1; round < max_rounds && total < opt.max_evaluations; ++round) {
        step *= 0.25;
        NelderMeadOptions o = opt;
        o.initial_step = step;
        o.max_evaluations = opt.max_evaluations - total;
        NelderMeadResult next = nelder_mead(f, best.x, o);
        total += next.evaluations;
        const bool improved = next.f < best.f - opt.f_tolerance;
        if (next.f < best.f) best = std::move(next);
        if (!improved) break;
    }
    best.evaluations = total;
    return best;
}

}  // namespace strata
