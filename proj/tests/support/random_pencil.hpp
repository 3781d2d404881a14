#pragma once

#include <random>

#include "maglap/pencil.hpp"

namespace maglap::testing {

/// Random Hermitian K with entries in [-1, 1] + i[-1, 1] and a random real
/// SPD mass matrix M = B B^T + n I.
inline HermitianPencil random_pencil(std::size_t n, std::uint64_t seed, bool real = false) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    HermitianPencil p;
    p.K = Matrix<cplx>(n, n);
    p.M = Matrix<double>(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        p.K(i, i) = u(rng);
        for (std::size_t j = 0; j < i; ++j) {
            const cplx z(u(rng), real ? 0.0 : u(rng));
            p.K(i, j) = z;
            p.K(j, i) = std::conj(z);
        }
    }
    Matrix<double> b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = u(rng);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = i == j ? static_cast<double>(n) : 0.0;
            for (std::size_t l = 0; l < n; ++l) s += b(i, l) * b(j, l);
            p.M(i, j) = s;
        }
    for (std::size_t i = 0; i < n; ++i) p.dof_map.push_back(i);
    return p;
}

/// The pencil restricted to the first n - 1 unknowns.
inline HermitianPencil leading_subpencil(const HermitianPencil& p) {
    const std::size_t n = p.size() - 1;
    HermitianPencil s;
    s.K = Matrix<cplx>(n, n);
    s.M = Matrix<double>(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            s.K(i, j) = p.K(i, j);
            s.M(i, j) = p.M(i, j);
        }
    for (std::size_t i = 0; i < n; ++i) s.dof_map.push_back(i);
    return s;
}

/// max |V* M V - I| over the computed eigenvectors.
inline double m_orthonormality_defect(const HermitianPencil& p,
                                      const std::vector<std::vector<cplx>>& v) {
    double worst = 0.0;
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t c = 0; c < v.size(); ++c) {
            const cplx g = form(p.M, std::span<const cplx>(v[a]), std::span<const cplx>(v[c]));
            worst = std::max(worst, std::abs(g - (a == c ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace maglap::testing
