#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "polyhelm/errors.hpp"

namespace polyhelm {

using cplx = std::complex<double>;

/// Gauss-Legendre rule on [0,1]. Nodes/weights computed once per size by
/// Newton iteration on P_n and cached.
struct GaussRule {
    std::vector<double> nodes;    // in (0,1)
    std::vector<double> weights;  // sum to 1
};

namespace detail {

inline GaussRule make_gauss_rule(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess for the i-th root of P_n on (-1,1)
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int m = 1; m < n; ++m) {
                double p2 = ((2 * m + 1) * x * p1 - m * p0) / (m + 1);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = 0.5 * (1.0 - x);  // descending x -> ascending node
        r.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        r.weights[i] = 0.5 * w;
        r.weights[n - 1 - i] = 0.5 * w;
    }
    return r;
}

}  // namespace detail

/// Cached rule lookup; sizes are powers of two times 16 up to 1024.
inline const GaussRule& gauss_rule(int n) {
    static const std::array<GaussRule, 8> rules = {
        detail::make_gauss_rule(16),  detail::make_gauss_rule(32),
        detail::make_gauss_rule(64),  detail::make_gauss_rule(128),
        detail::make_gauss_rule(256), detail::make_gauss_rule(512),
        detail::make_gauss_rule(1024), detail::make_gauss_rule(2048)};
    int idx = 0, size = 16;
    while (size < n && idx < 7) {
        size *= 2;
        ++idx;
    }
    return rules[idx];
}

/// Fixed-size Gauss-Legendre integral of f over [a,b].
template <typename F>
auto gauss_integrate(F&& f, double a, double b, int n) {
    const GaussRule& r = gauss_rule(n);
    using R = decltype(f(a));
    R acc{};
    for (size_t i = 0; i < r.nodes.size(); ++i)
        acc += r.weights[i] * f(a + (b - a) * r.nodes[i]);
    return acc * (b - a);
}

/// Adaptive rule doubling on [0,1]: start at n0 nodes, double until the
/// relative change drops below rel_tol, cap at n_max.
template <typename F>
auto adaptive_gauss(F&& f, double rel_tol = 1e-12, int n0 = 64, int n_max = 1024) {
    auto prev = gauss_integrate(f, 0.0, 1.0, n0);
    for (int n = 2 * n0; n <= n_max; n *= 2) {
        auto cur = gauss_integrate(f, 0.0, 1.0, n);
        double scale = std::max(std::abs(cur), std::abs(prev));
        if (std::abs(cur - prev) <= rel_tol * std::max(scale, 1e-300)) return cur;
        prev = cur;
    }
    throw QuadratureNonConvergence("adaptive Gauss rule did not converge at cap");
}

/// Integral over [0,L] with a geometric mesh clustering at 0 (ratio 1/2),
/// for integrands with an algebraic singularity rho^d, d > -1, at the origin.
template <typename F>
auto graded_integrate(F&& f, double L, int levels = 40, int nodes_per_panel = 32) {
    using R = decltype(f(L));
    R acc{};
    double hi = L;
    for (int lev = 0; lev < levels; ++lev) {
        double lo = (lev + 1 == levels) ? 0.0 : hi * 0.5;
        acc += gauss_integrate(f, lo, hi, nodes_per_panel);
        hi = lo;
    }
    return acc;
}

/// Trapezoid refinement on [a,b]: halve the step until the relative change
/// is below tol. Returns {value, achieved_change}. Reuses previous samples.
template <typename F>
std::pair<cplx, double> trapezoid_refine(F&& f, double a, double b, double h0,
                                         double tol, int max_halvings = 14) {
    int n = std::max(2, static_cast<int>(std::ceil((b - a) / h0)));
    double h = (b - a) / n;
    cplx sum = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) sum += f(a + i * h);
    cplx prev = sum * h;
    double change = std::abs(prev);
    for (int k = 0; k < max_halvings; ++k) {
        cplx mid = 0;
        for (int i = 0; i < n; ++i) mid += f(a + (i + 0.5) * h);
        n *= 2;
        h *= 0.5;
        sum += mid;
        cplx cur = sum * h;
        change = std::abs(cur - prev);
        prev = cur;
        if (change <= tol * std::max(std::abs(cur), 1e-300)) return {cur, change};
    }
    return {prev, change};
}

}  // namespace polyhelm
