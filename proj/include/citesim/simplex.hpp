#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace citesim {

template <std::size_t N>
using Point = std::array<double, N>;

struct SimplexOptions {
    /// Stop once max f - min f over the simplex falls below this.
    double f_tolerance = 1e-8;
    /// ...and the largest vertex distance from the best vertex falls below this.
    double x_tolerance = 1e-6;
    int max_iterations = 2000;
    /// Initial edge length along each coordinate.
    double initial_step = 0.1;
};

template <std::size_t N>
struct SimplexResult {
    Point<N> x{};
    double f = std::numeric_limits<double>::infinity();
    int iterations = 0;
    int evaluations = 0;
    double f_spread = 0.0;
    double diameter = 0.0;
    bool converged = false;
};

/**
 * Nelder-Mead downhill simplex with the standard coefficients
 * (reflect 1, expand 2, contract 1/2, shrink 1/2).
 *
 * Non-finite objective values are treated as +infinity so the simplex backs
 * away from them.
 */
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F&& f, const Point<N>& start, const SimplexOptions& opt = {}) {
    SimplexResult<N> res;
    auto eval = [&](const Point<N>& p) {
        ++res.evaluations;
        const double v = f(p);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::array<Point<N>, N + 1> x;
    std::array<double, N + 1> fx;
    x[0] = start;
    for (std::size_t i = 0; i < N; ++i) {
        x[i + 1] = start;
        x[i + 1][i] += opt.initial_step;
    }
    for (std::size_t i = 0; i <= N; ++i) fx[i] = eval(x[i]);

    auto along = [](const Point<N>& from, const Point<N>& to, double t) {
        Point<N> p;
        for (std::size_t i = 0; i < N; ++i) p[i] = from[i] + t * (to[i] - from[i]);
        return p;
    };

    std::array<std::size_t, N + 1> order;
    for (;;) {
        for (std::size_t i = 0; i <= N; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[N];
        const std::size_t second = order[N - 1];

        res.f_spread = fx[worst] - fx[best];
        res.diameter = 0.0;
        for (std::size_t v = 0; v <= N; ++v) {
            double dist = 0.0;
            for (std::size_t i = 0; i < N; ++i) dist = std::max(dist, std::abs(x[v][i] - x[best][i]));
            res.diameter = std::max(res.diameter, dist);
        }
        if (res.f_spread < opt.f_tolerance && res.diameter < opt.x_tolerance) {
            res.converged = true;
            break;
        }
        if (res.iterations >= opt.max_iterations) break;
        ++res.iterations;

        Point<N> centroid{};
        for (std::size_t v = 0; v <= N; ++v) {
            if (v == worst) continue;
            for (std::size_t i = 0; i < N; ++i) centroid[i] += x[v][i] / static_cast<double>(N);
        }

        const Point<N> reflected = along(x[worst], centroid, 2.0);
        const double fr = eval(reflected);
        if (fr < fx[best]) {
            const Point<N> expanded = along(x[worst], centroid, 3.0);
            const double fe = eval(expanded);
            if (fe < fr) {
                x[worst] = expanded;
                fx[worst] = fe;
            } else {
                x[worst] = reflected;
                fx[worst] = fr;
            }
            continue;
        }
        if (fr < fx[second]) {
            x[worst] = reflected;
            fx[worst] = fr;
            continue;
        }
        // Contract toward the better of the worst and reflected points.
        const bool outside = fr < fx[worst];
        const Point<N> contracted =
            outside ? along(centroid, reflected, 0.5) : along(centroid, x[worst], 0.5);
        const double fc = eval(contracted);
        if (fc < (outside ? fr : fx[worst])) {
            x[worst] = contracted;
            fx[worst] = fc;
            continue;
        }
        for (std::size_t v = 0; v <= N; ++v) {
            if (v == best) continue;
            x[v] = along(x[best], x[v], 0.5);
            fx[v] = eval(x[v]);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(fx.begin(), fx.end()) - fx.begin());
    res.x = x[best];
    res.f = fx[best];
    return res;
}

}  // namespace citesim
