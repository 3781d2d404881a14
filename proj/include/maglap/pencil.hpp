#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "maglap/dense.hpp"
#include "maglap/errors.hpp"

namespace maglap {

enum class BoundaryCondition { Neumann, Dirichlet };
enum class Gauge { Landau, Symmetric };

constexpr std::string_view to_string(BoundaryCondition bc) {
    return bc == BoundaryCondition::Neumann ? "neumann" : "dirichlet";
}
constexpr std::string_view to_string(Gauge g) {
    return g == Gauge::Landau ? "landau" : "symmetric";
}

/// Stiffness K (complex Hermitian) and mass M (real SPD) of one discrete
/// magnetic Laplacian. dof_map[i] is the mesh node behind unknown i.
struct HermitianPencil {
    Matrix<cplx> K;
    Matrix<double> M;
    BoundaryCondition bc = BoundaryCondition::Neumann;
    std::vector<std::size_t> dof_map;

    std::size_t size() const noexcept { return K.rows(); }

    /// max |K - K*| relative to max |K|.
    double hermitian_defect() const {
        double d = 0.0;
        for (std::size_t i = 0; i < K.rows(); ++i)
            for (std::size_t j = 0; j < K.cols(); ++j)
                d = std::max(d, std::abs(K(i, j) - std::conj(K(j, i))));
        const double s = K.max_abs();
        return s > 0 ? d / s : d;
    }

    bool is_real() const {
        const cplx* p = K.data();
        for (std::size_t i = 0; i < K.rows() * K.cols(); ++i)
            if (p[i].imag() != 0.0) return false;
        return true;
    }
};

/// Rayleigh quotient v*Kv / v*Mv. The imaginary residue of the quotient is
/// checked against 1e-12 relative and then dropped.
inline double rayleigh(const HermitianPencil& p, std::span<const cplx> v) {
    if (v.size() != p.size())
        throw InvalidInput("rayleigh: vector has dimension " + std::to_string(v.size()) +
                           ", pencil has " + std::to_string(p.size()));
    if (norm2(v) == 0.0) throw InvalidInput("rayleigh: zero vector");
    const cplx num = form(p.K, v, v);
    const cplx den = form(p.M, v, v);
    const cplx q = num / den;
    if (std::abs(q.imag()) > 1e-12 * std::max(1.0, std::abs(q.real())))
        throw SolverError("rayleigh: quotient not real (imag = " + std::to_string(q.imag()) + ")");
    return q.real();
}

}  // namespace maglap
