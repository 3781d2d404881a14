#pragma once

// Independent reference computations used to validate the main pipeline.
// Nothing here shares code with the eigensolver or the Laguerre path.

#include <algorithm>
#include <cmath>
#include <vector>

#include "maglap/dense.hpp"
#include "maglap/errors.hpp"

namespace maglap::oracle {

/// J_0 by its power series (accurate for |x| <= 10).
inline double bessel_j0(double x) {
    const double q = -0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 80; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

/// First positive zero of J_0 by bisection on [2, 3].
inline double bessel_j0_first_zero() {
    double lo = 2.0, hi = 3.0;
    while (hi - lo > 1e-15 * hi) {
        const double mid = 0.5 * (lo + hi);
        (bessel_j0(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Cyclic Jacobi eigenvalues of a real symmetric matrix, ascending.
inline std::vector<double> jacobi_eigenvalues(Matrix<double> a, Matrix<double>* vectors = nullptr) {
    const std::size_t n = a.rows();
    Matrix<double> v = Matrix<double>::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                total += a(i, j) * a(i, j);
                if (i != j) off += a(i, j) * a(i, j);
            }
        if (off <= 1e-32 * total) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) < a(y, y); });
    std::vector<double> out;
    for (auto i : order) out.push_back(a(i, i));
    if (vectors) {
        *vectors = Matrix<double>(n, n);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < n; ++r) (*vectors)(r, c) = v(r, order[c]);
    }
    return out;
}

/// All eigenvalues of K v = lambda M v (K Hermitian, M real SPD), via
/// C = M^{-1/2} K M^{-1/2} and Jacobi on the real embedding of C.
inline std::vector<double> pencil_eigenvalues(const Matrix<cplx>& k, const Matrix<double>& m) {
    const std::size_t n = k.rows();
    Matrix<double> w;
    const auto d = jacobi_eigenvalues(m, &w);
    for (double x : d)
        if (!(x > 0.0)) throw InvalidInput("pencil_eigenvalues: M is not positive definite");
    Matrix<double> s(n, n);  // M^{-1/2}
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < n; ++l) acc += w(i, l) * w(j, l) / std::sqrt(d[l]);
            s(i, j) = acc;
        }
    Matrix<cplx> c(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) acc += s(i, p) * k(p, q) * s(q, j);
            c(i, j) = acc;
        }
    Matrix<double> big(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cplx z = 0.5 * (c(i, j) + std::conj(c(j, i)));
            big(i, j) = big(n + i, n + j) = z.real();
            big(i, n + j) = -z.imag();
            big(n + i, j) = z.imag();
        }
    const auto all = jacobi_eigenvalues(big);
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(0.5 * (all[2 * i] + all[2 * i + 1]));
    return out;
}

}  // namespace maglap::oracle
