#pragma once

#include <algorithm>
#include <string>

#include "maglap/assembly.hpp"
#include "maglap/eigensolver.hpp"
#include "maglap/geometry.hpp"

namespace maglap {

/// Dirichlet and Neumann spectra computed on one mesh from one assembly.
struct SpectrumPair {
    Spectrum dirichlet;
    Spectrum neumann;
};

inline Spectrum solve_mesh(const TriangleMesh& mesh, const MagneticField& field,
                           BoundaryCondition bc, std::size_t k, const EigenOptions& opt = {}) {
    HermitianPencil p = assemble(mesh, field);
    if (bc == BoundaryCondition::Dirichlet) p = restrict_dirichlet(p, mesh);
    Spectrum s = smallest_eigenpairs(p, std::min(k, p.size()), opt);
    s.meta.b = field.b();
    s.meta.gauge = field.gauge();
    s.meta.bc = bc;
    return s;
}

inline SpectrumPair solve_mesh_pair(const TriangleMesh& mesh, const MagneticField& field,
                                    std::size_t k_dirichlet, std::size_t k_neumann,
                                    const EigenOptions& opt = {}) {
    const HermitianPencil full = assemble(mesh, field);
    const HermitianPencil inner = restrict_dirichlet(full, mesh);
    SpectrumPair out{smallest_eigenpairs(inner, std::min(k_dirichlet, inner.size()), opt),
                     smallest_eigenpairs(full, std::min(k_neumann, full.size()), opt)};
    for (Spectrum* s : {&out.dirichlet, &out.neumann}) {
        s->meta.b = field.b();
        s->meta.gauge = field.gauge();
    }
    out.dirichlet.meta.bc = BoundaryCondition::Dirichlet;
    out.neumann.meta.bc = BoundaryCondition::Neumann;
    return out;
}

/// Both spectra of a polygon at a uniform refinement level.
inline SpectrumPair solve_polygon(const ConvexPolygon& poly, const std::string& name, int refine,
                                  const MagneticField& field, std::size_t k_dirichlet,
                                  std::size_t k_neumann, const EigenOptions& opt = {}) {
    SpectrumPair out = solve_mesh_pair(triangulate(poly, refine), field, k_dirichlet, k_neumann, opt);
    for (Spectrum* s : {&out.dirichlet, &out.neumann}) {
        s->meta.domain = name;
        s->meta.refine = refine;
    }
    return out;
}

}  // namespace maglap
