#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "maglap/fem.hpp"

using namespace maglap;

namespace {

const ConvexPolygon& unit_square() {
    static const auto sq = ConvexPolygon::from_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    return sq;
}

double symmetry_defect(const Matrix<double>& m) {
    double d = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - m(j, i)));
    return d;
}

}  // namespace

TEST(ElementStiffness, RightTriangleWithoutField) {
    const auto k = element_stiffness({Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}}, MagneticField::unchecked(0.0));
    const double want[3][3] = {{1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            EXPECT_NEAR(k[i][j].real(), want[i][j], 1e-15);
            EXPECT_EQ(k[i][j].imag(), 0.0);
        }
}

TEST(ElementStiffness, HermitianWithField) {
    const auto k = element_stiffness({Vec2{0.1, 0.2}, Vec2{1.3, 0.1}, Vec2{0.4, 1.1}}, MagneticField::make(3.0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(k[i][j] - std::conj(k[j][i])), 0.0, 1e-14);
}

TEST(MagneticField, RejectsNonPositiveIntensity) {
    EXPECT_THROW(MagneticField::make(0.0), InvalidInput);
    EXPECT_THROW(MagneticField::make(-1.0), InvalidInput);
    EXPECT_THROW(MagneticField::make(std::nan("")), InvalidInput);
    EXPECT_THROW(MagneticField::unchecked(INFINITY), InvalidInput);
}

TEST(Assemble, ReversedFieldGivesConjugateStiffness) {
    const auto mesh = triangulate(regular_polygon(5, 1.0), 2);
    for (Gauge g : {Gauge::Landau, Gauge::Symmetric}) {
        const auto p = assemble(mesh, MagneticField::make(1.7, g));
        const auto q = assemble(mesh, MagneticField::unchecked(-1.7, g));
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j) {
                EXPECT_EQ(q.K(i, j), std::conj(p.K(i, j)));
                EXPECT_EQ(q.M(i, j), p.M(i, j));
            }
    }
}

TEST(Assemble, PencilInvariants) {
    for (int r : {0, 1, 2, 3}) {
        const auto mesh = triangulate(random_convex_polygon(6, 3), r);
        const auto p = assemble(mesh, MagneticField::make(2.0));
        EXPECT_LE(p.hermitian_defect(), 1e-14);
        EXPECT_EQ(symmetry_defect(p.M), 0.0);
        // Mass matrix reproduces the area: 1^T M 1 = |D|.
        double total = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j) total += p.M(i, j);
        EXPECT_NEAR(total, mesh.area(), 1e-12);
        // M is SPD and K is positive semidefinite.
        const auto s = smallest_eigenpairs(p, 1);
        EXPECT_GT(s.values[0], -1e-12);
    }
}

TEST(Assemble, NeumannGroundStateIsPositiveWithField) {
    const auto mesh = triangulate(unit_square(), 4);
    const auto s = solve_mesh(mesh, MagneticField::make(1.0), BoundaryCondition::Neumann, 1);
    EXPECT_GT(s.values[0], 0.0);
}

TEST(Assemble, ZeroFieldNeumannGroundStateIsZero) {
    const auto mesh = triangulate(unit_square(), 3);
    const auto s = solve_mesh(mesh, MagneticField::unchecked(0.0), BoundaryCondition::Neumann, 2);
    EXPECT_NEAR(s.values[0], 0.0, 1e-10);
    EXPECT_NEAR(s.values[1], std::numbers::pi * std::numbers::pi, 0.2);
}

TEST(RestrictDirichlet, SquareAtRefineZeroKeepsCentre) {
    const auto mesh = triangulate(unit_square(), 0);
    const auto full = assemble(mesh, MagneticField::make(1.0));
    const auto in = restrict_dirichlet(full, mesh);
    ASSERT_EQ(in.size(), 1u);
    EXPECT_EQ(in.bc, BoundaryCondition::Dirichlet);
    EXPECT_FALSE(mesh.boundary[in.dof_map[0]]);
    EXPECT_THROW(restrict_dirichlet(in, mesh), InvalidInput);
}

TEST(RestrictDirichlet, DirichletDominatesNeumannIndexwise) {
    for (int r : {2, 3}) {
        const auto pair = solve_polygon(regular_polygon(5, 1.0), "regular5", r, MagneticField::make(2.0), 6, 6);
        for (std::size_t k = 0; k < 6; ++k) EXPECT_GE(pair.dirichlet.values[k], pair.neumann.values[k]);
    }
}

TEST(RestrictDirichlet, DiscreteDirichletDecreasesUnderRefinement) {
    double prev = INFINITY;
    for (int r : {1, 2, 3, 4}) {
        const auto s = solve_mesh(triangulate(unit_square(), r), MagneticField::make(1.0),
                                  BoundaryCondition::Dirichlet, 1);
        EXPECT_LE(s.values[0], prev + 1e-12);
        prev = s.values[0];
    }
}

TEST(Rayleigh, DiagonalExample) {
    HermitianPencil p;
    p.K = Matrix<cplx>(2, 2);
    p.M = Matrix<double>(2, 2);
    p.K(0, 0) = 1.0;
    p.K(1, 1) = 3.0;
    p.M(0, 0) = p.M(1, 1) = 1.0;
    p.dof_map = {0, 1};
    const std::vector<cplx> v{1.0, 1.0};
    EXPECT_DOUBLE_EQ(rayleigh(p, v), 2.0);
    const std::vector<cplx> zero{0.0, 0.0};
    EXPECT_THROW(rayleigh(p, zero), InvalidInput);
    const std::vector<cplx> short_vec{1.0};
    EXPECT_THROW(rayleigh(p, short_vec), InvalidInput);
}

TEST(Rayleigh, UpperBoundsGroundState) {
    const auto mesh = triangulate(unit_square(), 3);
    const auto p = assemble(mesh, MagneticField::make(1.0));
    const auto s = smallest_eigenpairs(p, 1);
    std::vector<cplx> v(p.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(1.0 + mesh.nodes[i].x, mesh.nodes[i].y);
    EXPECT_GE(rayleigh(p, v), s.values[0] - 1e-12);
    EXPECT_NEAR(rayleigh(p, s.vectors[0]), s.values[0], 1e-10);
}

TEST(Assemble, EmptyMeshIsRejected) {
    EXPECT_THROW(assemble(TriangleMesh{}, MagneticField::make(1.0)), AssemblyError);
}

TEST(Assemble, DegenerateTriangleIsRejected) {
    TriangleMesh m;
    m.nodes = {{0, 0}, {1, 0}, {2, 0}, {0, 1}};
    m.triangles = {{0, 1, 3}, {0, 1, 2}};
    m.boundary = {true, true, true, true};
    EXPECT_THROW(assemble(m, MagneticField::make(1.0)), AssemblyError);
}
