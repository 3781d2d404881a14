#pragma once

#include <cmath>
#include <string>

#include "maglap/errors.hpp"

namespace maglap {

/// Kummer's confluent hypergeometric series M(a, c, x) = sum (a)_k x^k / ((c)_k k!)
/// for c > 0. Truncated once a term drops below 1e-18 of the partial sum
/// (or of the largest term, when the sum itself cancels towards zero).
inline double kummer_m(double a, double c, double x) {
    if (!(c > 0.0)) throw DomainError("kummer_m: c must be positive");
    if (!std::isfinite(a) || !std::isfinite(x)) throw DomainError("kummer_m: non-finite argument");
    double term = 1.0, sum = 1.0, peak = 1.0;
    for (int k = 0; k < 500; ++k) {
        term *= (a + k) * x / ((c + k) * (k + 1));
        sum += term;
        peak = std::max(peak, std::abs(term));
        if (std::abs(term) <= 1e-18 * std::max(std::abs(sum), peak)) return sum;
    }
    throw DomainError("kummer_m: series did not converge in 500 terms (a = " + std::to_string(a) +
                      ", c = " + std::to_string(c) + ", x = " + std::to_string(x) + ")");
}

/// Generalized Laguerre function L_nu^alpha(x) of real degree nu and integer
/// order alpha, x >= 0.
///
/// alpha >= 0:  L = binom(nu + alpha, alpha) M(-nu, alpha + 1, x)
/// alpha = -m:  L = (-x)^m / m! M(m - nu, m + 1, x)
///
/// The second line is L_nu^{-m}(x) = (-x)^m Gamma(nu-m+1)/Gamma(nu+1) L_{nu-m}^m(x)
/// with the Gamma ratio cancelled against the normalization of L_{nu-m}^m,
/// so both branches are entire in nu. For nonnegative integer nu they reduce
/// to the classical Laguerre polynomials (L_1^{-1}(x) = -x, ...).
inline double laguerre(double nu, int alpha, double x) {
    if (!std::isfinite(nu) || !std::isfinite(x)) throw DomainError("laguerre: non-finite argument");
    if (x < 0.0) throw DomainError("laguerre: x must be nonnegative");
    if (alpha >= 0) {
        double binom = 1.0;
        for (int j = 1; j <= alpha; ++j) binom *= (nu + j) / j;
        return binom * kummer_m(-nu, alpha + 1.0, x);
    }
    const int m = -alpha;
    double pref = 1.0;
    for (int j = 1; j <= m; ++j) pref *= -x / j;
    return pref * kummer_m(m - nu, m + 1.0, x);
}

}  // namespace maglap
