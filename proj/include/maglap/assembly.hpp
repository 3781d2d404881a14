#pragma once

// First-order conforming discretization of the magnetic forms
//   h[u] = || (grad - i A) u ||^2   on H^1 (Neumann) or H^1_0 (Dirichlet).

#include <array>
#include <cmath>
#include <string>

#include "maglap/dense.hpp"
#include "maglap/errors.hpp"
#include "maglap/geometry.hpp"
#include "maglap/pencil.hpp"
#include "maglap/quadrature.hpp"

namespace maglap {

/// Homogeneous field of intensity b with a choice of vector potential:
/// Landau A = (0, b x1), symmetric A = (-b x2 / 2, b x1 / 2).
class MagneticField {
public:
    static MagneticField make(double b, Gauge gauge = Gauge::Landau) {
        if (!(b > 0.0) || !std::isfinite(b))
            throw InvalidInput("magnetic field intensity must be positive and finite");
        return {b, gauge};
    }
    /// Any finite b, including 0 and negative values; for reference
    /// computations only.
    static MagneticField unchecked(double b, Gauge gauge = Gauge::Landau) {
        if (!std::isfinite(b)) throw InvalidInput("magnetic field intensity must be finite");
        return {b, gauge};
    }

    double b() const noexcept { return b_; }
    Gauge gauge() const noexcept { return gauge_; }

    Vec2 potential(Vec2 x) const noexcept {
        if (gauge_ == Gauge::Landau) return {0.0, b_ * x.x};
        return {-(b_ * x.y) / 2.0, (b_ * x.x) / 2.0};
    }

private:
    MagneticField(double b, Gauge g) : b_(b), gauge_(g) {}
    double b_;
    Gauge gauge_;
};

/// Local 3x3 stiffness of one P1 element.
inline std::array<std::array<cplx, 3>, 3> element_stiffness(const std::array<Vec2, 3>& p,
                                                           const MagneticField& field) {
    const double area = 0.5 * cross(p[1] - p[0], p[2] - p[0]);
    std::array<Vec2, 3> g;
    for (int a = 0; a < 3; ++a) {
        const Vec2 q1 = p[(a + 1) % 3], q2 = p[(a + 2) % 3];
        g[a] = {(q1.y - q2.y) / (2.0 * area), (q2.x - q1.x) / (2.0 * area)};
    }
    std::array<std::array<cplx, 3>, 3> k{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) k[i][j] = area * dot(g[i], g[j]);
    for (const auto& qp : triangle_rule_degree4) {
        const Vec2 x{qp.bary[0] * p[0].x + qp.bary[1] * p[1].x + qp.bary[2] * p[2].x,
                     qp.bary[0] * p[0].y + qp.bary[1] * p[1].y + qp.bary[2] * p[2].y};
        const Vec2 a = field.potential(x);
        const double a2 = dot(a, a);
        const double w = qp.weight * area;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double phi_i = qp.bary[i], phi_j = qp.bary[j];
                const double im = phi_i * dot(a, g[j]) - phi_j * dot(a, g[i]);
                k[i][j] += w * cplx(a2 * phi_i * phi_j, im);
            }
    }
    return k;
}

/// Neumann pencil (all nodes retained).
inline HermitianPencil assemble(const TriangleMesh& mesh, const MagneticField& field) {
    const std::size_t n = mesh.num_nodes();
    if (n == 0 || mesh.triangles.empty()) throw AssemblyError("assemble: empty mesh");
    double lo_x = mesh.nodes[0].x, hi_x = lo_x, lo_y = mesh.nodes[0].y, hi_y = lo_y;
    for (const auto& q : mesh.nodes) {
        lo_x = std::min(lo_x, q.x);
        hi_x = std::max(hi_x, q.x);
        lo_y = std::min(lo_y, q.y);
        hi_y = std::max(hi_y, q.y);
    }
    const double scale2 = (hi_x - lo_x) * (hi_x - lo_x) + (hi_y - lo_y) * (hi_y - lo_y);

    HermitianPencil p;
    p.K = Matrix<cplx>(n, n);
    p.M = Matrix<double>(n, n);
    p.bc = BoundaryCondition::Neumann;
    p.dof_map.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.dof_map[i] = i;

    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        const std::array<Vec2, 3> pts{mesh.nodes[tri[0]], mesh.nodes[tri[1]], mesh.nodes[tri[2]]};
        const double area = 0.5 * cross(pts[1] - pts[0], pts[2] - pts[0]);
        if (!(area >= 1e-14 * scale2))
            throw AssemblyError("assemble: degenerate triangle " + std::to_string(t) +
                                " (area " + std::to_string(area) + ")");
        const auto k = element_stiffness(pts, field);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                p.K(tri[i], tri[j]) += k[i][j];
                p.M(tri[i], tri[j]) += area * (i == j ? 1.0 / 6.0 : 1.0 / 12.0);
            }
    }
    return p;
}

/// Deletes the rows and columns of boundary nodes (H^1_0 subspace).
inline HermitianPencil restrict_dirichlet(const HermitianPencil& full, const TriangleMesh& mesh) {
    if (full.bc != BoundaryCondition::Neumann)
        throw InvalidInput("restrict_dirichlet: pencil is already restricted");
    if (full.size() != mesh.num_nodes())
        throw InvalidInput("restrict_dirichlet: pencil and mesh sizes differ");
    std::vector<std::size_t> keep;
    bool any_boundary = false;
    for (std::size_t i = 0; i < full.size(); ++i) {
        if (mesh.boundary[full.dof_map[i]])
            any_boundary = true;
        else
            keep.push_back(i);
    }
    if (!any_boundary) throw InvalidInput("restrict_dirichlet: mesh has no boundary nodes");
    if (keep.empty()) throw EmptySystemError("restrict_dirichlet: no interior nodes remain");
    HermitianPencil r;
    const std::size_t m = keep.size();
    r.K = Matrix<cplx>(m, m);
    r.M = Matrix<double>(m, m);
    r.bc = BoundaryCondition::Dirichlet;
    for (std::size_t a = 0; a < m; ++a) {
        r.dof_map.push_back(full.dof_map[keep[a]]);
        for (std::size_t b = 0; b < m; ++b) {
            r.K(a, b) = full.K(keep[a], keep[b]);
            r.M(a, b) = full.M(keep[a], keep[b]);
        }
    }
    return r;
}

}  // namespace maglap
