#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "maglap/errors.hpp"

namespace maglap {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
    if (n < 1) throw InvalidInput("gauss_legendre: n must be >= 1");
    GaussRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        r.nodes[lo] = -x;
        r.nodes[hi] = x;
        r.weights[lo] = w;
        r.weights[hi] = w;
    }
    if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return r;
}

/// Gauss-Legendre rule mapped to [a, b].
inline GaussRule gauss_legendre(int n, double a, double b) {
    GaussRule r = gauss_legendre(n);
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    for (auto& x : r.nodes) x = c + h * x;
    for (auto& w : r.weights) w *= h;
    return r;
}

/// Barycentric point and weight; weights of a rule sum to 1 (multiply by the
/// triangle area).
struct TrianglePoint {
    std::array<double, 3> bary;
    double weight;
};

/// Six-point symmetric rule, exact for polynomials of degree 4.
inline constexpr std::array<TrianglePoint, 6> triangle_rule_degree4 = [] {
    constexpr double a = 0.445948490915964886, a1 = 1.0 - 2.0 * a;
    constexpr double b = 0.091576213509770743, b1 = 1.0 - 2.0 * b;
    constexpr double wa = 0.223381589678011466, wb = 0.109951743655321868;
    return std::array<TrianglePoint, 6>{{
        {{a1, a, a}, wa},
        {{a, a1, a}, wa},
        {{a, a, a1}, wa},
        {{b1, b, b}, wb},
        {{b, b1, b}, wb},
        {{b, b, b1}, wb},
    }};
}();

}  // namespace maglap
