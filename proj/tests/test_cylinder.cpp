#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "maglap/cylinder.hpp"
#include "maglap/disk.hpp"

using namespace maglap;

TEST(ComposeSpectra, DirichletCapsShiftByAxialModes) {
    const double a = 0.75;
    const std::vector<double> planar{a, a + 100.0};
    const auto c = compose_spectra(planar, std::numbers::pi, BoundaryCondition::Dirichlet, 3);
    ASSERT_EQ(c.size(), 3u);
    EXPECT_NEAR(c.values[0], a + 1, 1e-14);
    EXPECT_NEAR(c.values[1], a + 4, 1e-14);
    EXPECT_NEAR(c.values[2], a + 9, 1e-13);
    for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_EQ(c.provenance[j].index, 0u);
        EXPECT_EQ(c.provenance[j].axial, static_cast<int>(j) + 1);
    }
}

TEST(ComposeSpectra, NeumannCapsIncludeConstantMode) {
    const std::vector<double> planar{2.0, 50.0};
    const auto c = compose_spectra(planar, std::numbers::pi, BoundaryCondition::Neumann, 3);
    EXPECT_EQ(c.values[0], 2.0);
    EXPECT_EQ(c.provenance[0].axial, 0);
    EXPECT_NEAR(c.values[1], 3.0, 1e-14);
    EXPECT_NEAR(c.values[2], 6.0, 1e-14);
}

TEST(ComposeSpectra, ProvenanceReproducesValuesBitExactly) {
    const std::vector<double> planar{0.3, 1.1, 1.7, 2.9, 4.4, 8.0, 30.0};
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann})
        for (double L : {0.7, 2.0, 5.0}) {
            std::size_t count = 0;
            for (double v : planar)
                for (int m = bc == BoundaryCondition::Dirichlet ? 1 : 0; v + axial_eigenvalue(m, L) < planar.back(); ++m)
                    ++count;
            const auto c = compose_spectra(planar, L, bc, count);
            for (std::size_t j = 0; j < c.size(); ++j) {
                const auto [i, m] = c.provenance[j];
                EXPECT_EQ(c.values[j], planar[i] + axial_eigenvalue(m, L));
                if (j > 0) {
                    EXPECT_LE(c.values[j - 1], c.values[j]);
                }
            }
        }
}

TEST(ComposeSpectra, DecreasesWithLength) {
    const std::vector<double> planar{1.0, 2.5, 3.0, 6.0, 100.0};
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
        auto prev = compose_spectra(planar, 1.0, bc, 6).values;
        for (double L : {1.5, 2.0, 4.0}) {
            const auto cur = compose_spectra(planar, L, bc, 6).values;
            for (std::size_t j = 0; j < 6; ++j) EXPECT_LE(cur[j], prev[j]);
            prev = cur;
        }
    }
}

TEST(ComposeSpectra, DiskCrossSectionKeepsPlanarMinimum) {
    const double l = lambda_01(1.0).value;
    const double mu = mu_n1(1, 1.0).value;
    std::vector<double> d{l, l + 50.0}, n{mu, mu + 50.0};
    const double L = 2.0;
    EXPECT_NEAR(compose_spectra(d, L, BoundaryCondition::Dirichlet, 1).values[0],
                l + axial_eigenvalue(1, L), 1e-14);
    EXPECT_EQ(compose_spectra(n, L, BoundaryCondition::Neumann, 1).values[0], mu);
}

TEST(ComposeSpectra, CarriesPlanarErrors) {
    const std::vector<double> planar{1.0, 2.0, 40.0}, err{1e-3, 2e-3, 5e-2};
    const auto c = compose_spectra(planar, 1.0, BoundaryCondition::Neumann, 4, err);
    for (std::size_t j = 0; j < c.size(); ++j) EXPECT_EQ(c.error[j], err[c.provenance[j].index]);
}

TEST(ComposeSpectra, RejectsUnsafeTruncation) {
    const std::vector<double> planar{1.0, 2.0};
    EXPECT_THROW(compose_spectra(planar, 1.0, BoundaryCondition::Dirichlet, 1), ConfigurationError);
    EXPECT_THROW(compose_spectra(planar, 3.0, BoundaryCondition::Neumann, 3), ConfigurationError);
}

TEST(ComposeSpectra, RejectsInvalidInput) {
    const std::vector<double> planar{1.0, 2.0}, unsorted{2.0, 1.0}, empty;
    const std::vector<double> bad_err{0.1};
    EXPECT_THROW(compose_spectra(empty, 1.0, BoundaryCondition::Dirichlet, 1), InvalidInput);
    EXPECT_THROW(compose_spectra(planar, 0.0, BoundaryCondition::Dirichlet, 1), InvalidInput);
    EXPECT_THROW(compose_spectra(planar, 1.0, BoundaryCondition::Dirichlet, 0), InvalidInput);
    EXPECT_THROW(compose_spectra(unsorted, 1.0, BoundaryCondition::Dirichlet, 1), InvalidInput);
    EXPECT_THROW(compose_spectra(planar, 1.0, BoundaryCondition::Neumann, 1, bad_err), InvalidInput);
}

TEST(IsSimple, GapRule) {
    const std::vector<double> v{1.0, 2.0, 2.0 + 1e-9, 3.0};
    EXPECT_TRUE(is_simple(v, 0, 1e-6));
    EXPECT_FALSE(is_simple(v, 1, 1e-6));
    EXPECT_FALSE(is_simple(v, 2, 1e-6));
    EXPECT_FALSE(is_simple(v, 3, 1e-6));  // last value has no known neighbour
    EXPECT_TRUE(is_simple(v, 1, 1e-10));
}

TEST(DominationReport, SkipsDegenerateIndicesAndListsThem) {
    // Square-like cross-section values with a double eigenvalue.
    const std::vector<double> pd{5.0, 8.0, 8.0, 11.0, 200.0}, pn{1.0, 2.0, 4.0, 6.5, 7.0, 200.0};
    const auto d = compose_spectra(pd, 10.0, BoundaryCondition::Dirichlet, 8);
    const auto n = compose_spectra(pn, 10.0, BoundaryCondition::Neumann, 12);
    const auto r = thm12_report(d, n, 7);
    EXPECT_EQ(r.shift, 2u);
    EXPECT_FALSE(r.skipped.empty());
    for (std::size_t k : r.skipped) {
        EXPECT_FALSE(r.rows[k - 1].simple);
        EXPECT_FALSE(r.rows[k - 1].tested);
    }
    for (const auto& row : r.rows)
        if (row.tested) {
            EXPECT_EQ(row.holds, row.mu <= row.lambda + row.tolerance);
        }
}

TEST(DominationReport, BaselineTestsEveryIndex) {
    const std::vector<double> pd{5.0, 8.0, 8.0, 200.0}, pn{1.0, 2.0, 4.0, 200.0};
    const auto d = compose_spectra(pd, 3.0, BoundaryCondition::Dirichlet, 4);
    const auto n = compose_spectra(pn, 3.0, BoundaryCondition::Neumann, 6);
    const auto r = baseline_report(d, n, 4);
    EXPECT_EQ(r.shift, 1u);
    EXPECT_TRUE(r.skipped.empty());
    for (const auto& row : r.rows) EXPECT_TRUE(row.tested);
    EXPECT_EQ(r.violations, 0u);
}

TEST(DominationReport, ToleranceUsesNeumannErrorOnly) {
    const std::vector<double> pd{1.0, 100.0}, pn{1.2, 100.0};
    const std::vector<double> ed{5.0, 5.0}, en{0.3, 0.3};
    const auto d = compose_spectra(pd, 1.0, BoundaryCondition::Dirichlet, 1, ed);
    const auto n = compose_spectra(pn, 1.0, BoundaryCondition::Neumann, 2, en);
    const auto r = baseline_report(d, n, 1);
    // mu_2 = 1.2 + pi^2 exceeds lambda_1 = 1 + pi^2 by 0.2, within the Neumann error.
    EXPECT_NEAR(r.rows[0].tolerance, 0.3, 0.0);
    EXPECT_TRUE(r.rows[0].holds);
    const auto strict = baseline_report(d, n, 1, -0.2);
    EXPECT_EQ(strict.violations, 1u);
}

TEST(DominationReport, RejectsShortOrMislabelledSpectra) {
    const std::vector<double> p{1.0, 2.0, 100.0};
    const auto d = compose_spectra(p, 1.0, BoundaryCondition::Dirichlet, 2);
    const auto n = compose_spectra(p, 1.0, BoundaryCondition::Neumann, 2);
    EXPECT_THROW(thm12_report(d, n, 1), ConfigurationError);
    EXPECT_THROW(baseline_report(n, d, 1), InvalidInput);
}
