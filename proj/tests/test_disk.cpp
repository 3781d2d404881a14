#include <gtest/gtest.h>

#include <cmath>

#include "maglap/disk.hpp"
#include "maglap/oracles.hpp"

using namespace maglap;

TEST(FiberFunctions, VanishAtTheCrossing) {
    EXPECT_NEAR(fiber_dirichlet_function(2.0, 6.0), 0.0, 1e-12);
    EXPECT_NEAR(fiber_neumann_function(-1, 2.0, 6.0), 0.0, 1e-10);
    EXPECT_NEAR(fiber_neumann_function(2, 2.0, 6.0), 0.0, 1e-10);
}

TEST(FiberFunctions, DirichletAtLowestLandauLevel) {
    for (double b : {0.5, 1.0, 3.0, 8.0}) EXPECT_NEAR(fiber_dirichlet_function(b, b), 1.0, 1e-14);
}

TEST(FiberFunctions, NeumannIsTheRadialDerivative) {
    // Finite difference of e^{-b r^2/4} r^n L_nu^n(b r^2/2) at r = 1.
    const double h = 1e-6;
    for (int n : {-2, -1, 0, 1, 3})
        for (double b : {0.5, 2.0, 4.0})
            for (double mu : {0.7, 3.0, 9.5}) {
                const double nu = laguerre_degree(b, mu);
                auto u = [&](double r) {
                    return std::exp(-0.25 * b * r * r) * std::pow(r, n) * laguerre(nu, n, 0.5 * b * r * r);
                };
                const double fd = (u(1 + h) - u(1 - h)) / (2 * h);
                EXPECT_NEAR(fiber_neumann_function(n, b, mu), fd, 1e-6 * std::max(1.0, std::abs(fd)))
                    << "n=" << n << " b=" << b << " mu=" << mu;
            }
}

TEST(FiberFunctions, RejectNonPositiveField) {
    EXPECT_THROW(fiber_neumann_function(0, 0.0, 1.0), InvalidInput);
    EXPECT_THROW(fiber_dirichlet_function(-1.0, 1.0), InvalidInput);
    EXPECT_THROW(mu_n1(0, 0.0), InvalidInput);
    EXPECT_THROW(lambda_01(-2.0), InvalidInput);
}

TEST(SmallestPositiveRoot, LinearFunction) {
    const Root r = smallest_positive_root([](double x) { return x - 2.0; }, 10.0, 0.1);
    EXPECT_NEAR(r.value, 2.0, 1e-11);
    EXPECT_LE(r.lo, 2.0);
    EXPECT_GE(r.hi, 2.0);
}

TEST(SmallestPositiveRoot, DoubleRootWithoutSignChange) {
    try {
        smallest_positive_root([](double x) { return (x - 3.0) * (x - 3.0) + 1e-3; }, 10.0, 0.1);
        FAIL() << "expected NoRootError";
    } catch (const NoRootError& e) {
        EXPECT_EQ(e.ceiling(), 10.0);
    }
}

TEST(SmallestPositiveRoot, FindsRootBelowFirstStep) {
    const Root r = smallest_positive_root([](double x) { return x - 1e-4; }, 10.0, 0.5);
    EXPECT_NEAR(r.value, 1e-4, 1e-15);
}

TEST(SmallestPositiveRoot, DirichletFiberAtTwo) {
    const Root r = smallest_positive_root([](double l) { return fiber_dirichlet_function(2.0, l); }, 20.0, 0.04);
    EXPECT_NEAR(r.value, 6.0, 1e-9);
}

TEST(SmallestPositiveRoot, RejectsBadGrid) {
    auto f = [](double x) { return x; };
    EXPECT_THROW(smallest_positive_root(f, 1.0, 0.0), InvalidInput);
    EXPECT_THROW(smallest_positive_root(f, 0.1, 0.2), InvalidInput);
}

TEST(Lambda01, CrossingValue) { EXPECT_NEAR(lambda_01(2.0).value, 6.0, 1e-8); }

TEST(Lambda01, NonMagneticLimit) {
    const double j = oracle::bessel_j0_first_zero();
    EXPECT_NEAR(j, 2.404825557695773, 1e-12);
    EXPECT_NEAR(lambda_01(1e-3).value, j * j, 1e-5);
}

TEST(Lambda01, AboveFieldAndIncreasing) {
    double prev = 0;
    for (double b = 0.25; b <= 6.0; b += 0.25) {
        const double l = lambda_01(b).value;
        EXPECT_GE(l, b);
        EXPECT_GT(l, prev);
        prev = l;
    }
}

TEST(MuN1, NonMagneticLimits) {
    // mu_{0,1} -> 0 and mu_{1,1} -> (first zero of J1')^2.
    EXPECT_LT(mu_n1(0, 1e-3).value, 1e-6);
    EXPECT_NEAR(mu_n1(1, 1e-3).value, 1.8411837813406593 * 1.8411837813406593, 5e-3);
    EXPECT_NEAR(mu_n1(-1, 1e-3).value, 1.8411837813406593 * 1.8411837813406593, 5e-3);
}

TEST(MuN1, AtMostTheRayleighBound) {
    for (int n = -3; n <= 4; ++n)
        for (double b : {0.01, 0.5, 2.0, 5.0})
            EXPECT_LE(mu_n1(n, b).value, fiber_upper_bound(n, b, FiberKind::NeumannFiber) * (1 + 1e-12));
}

TEST(MuN1, LowScanCeilingRaisesNoRoot) {
    FiberScan s;
    s.ceiling = 0.01;
    EXPECT_THROW(mu_n1(3, 1.0, s), NoRootError);
    EXPECT_THROW(lambda_01(1.0, s), NoRootError);
}

TEST(FiberOracle, AgreesWithLaguerreRoots) {
    for (double b : {0.5, 1.0, 2.0, 4.0}) {
        const double d = fiber_oracle(0, b, FiberKind::DirichletRadial, 2000, 1)[0];
        EXPECT_NEAR(d, lambda_01(b).value, 1e-5 * d);
        for (int n : {-2, -1, 0, 1, 2}) {
            const double mu = mu_n1(n, b).value;
            const double o = fiber_oracle(n, b, FiberKind::NeumannFiber, 2000, 1)[0];
            EXPECT_NEAR(o, mu, 1e-5 * std::max(1.0, mu)) << "n=" << n << " b=" << b;
        }
    }
}

TEST(FiberOracle, ErrorQuartersPerGridDoubling) {
    const double exact = lambda_01(1.0).value;
    const double e1 = fiber_oracle(0, 1.0, FiberKind::DirichletRadial, 200, 1)[0] - exact;
    const double e2 = fiber_oracle(0, 1.0, FiberKind::DirichletRadial, 400, 1)[0] - exact;
    EXPECT_GT(e1, 0.0);
    EXPECT_GT(e2, 0.0);
    EXPECT_NEAR(e1 / e2, 4.0, 0.2);
}

TEST(FiberOracle, OriginConditions) {
    EXPECT_THROW(fiber_oracle(1, 1.0, FiberKind::NeumannFiber, 200, 1, {OriginCondition::Natural, 8}),
                 ConfigurationError);
    EXPECT_THROW(fiber_oracle(0, 1.0, FiberKind::NeumannFiber, 50), InvalidInput);
    const double nat = fiber_oracle(0, 1.0, FiberKind::NeumannFiber, 400, 1, {OriginCondition::Natural, 8})[0];
    const double pin = fiber_oracle(0, 1.0, FiberKind::NeumannFiber, 400, 1, {OriginCondition::Pinned, 8})[0];
    EXPECT_LE(nat, pin);
}

TEST(FiberOracle, SturmCountMatchesEigenvalues) {
    const FiberDiscretization d(2, 1.5, FiberKind::NeumannFiber, 300);
    for (std::size_t j = 0; j < 5; ++j) {
        const double v = d.eigenvalue(j);
        EXPECT_EQ(d.count_below(v * (1 - 1e-9)), j);
        EXPECT_EQ(d.count_below(v * (1 + 1e-9)), j + 1);
    }
}

TEST(DiskEigenvalues, ThreeNeumannValuesBelowDirichletGround) {
    for (double b : {0.5, 1.0, 2.5, 4.0}) {
        const double l = lambda_01(b).value;
        const auto below = disk_eigenvalues_below(b, FiberKind::NeumannFiber, l, 1000);
        EXPECT_GE(below.size(), 3u) << "b=" << b;
    }
}

TEST(DerivativeQuotient, GaugeConsistency) {
    for (double b : {1.0, 2.0}) {
        const auto q = verify_314(b);
        EXPECT_NEAR(q.norm_landau, q.norm_symmetric, 1e-10);
        EXPECT_NEAR(q.ratio, q.ratio_symmetric, 1e-8);
        EXPECT_NEAR(q.lambda, lambda_01(b).value, 0.0);
    }
}

TEST(DerivativeQuotient, MatchesCurvatureCorrectedValue) {
    // On the disk the boundary is curved, so the derivative quotient is the
    // ground-state energy minus the curvature term, not the energy itself.
    for (double b : {0.5, 1.0, 2.0, 3.0}) {
        const auto q = verify_314(b);
        EXPECT_NEAR(q.ratio, q.curvature_corrected, 1e-6) << "b=" << b;
        EXPECT_LT(q.ratio, q.lambda);
    }
}

TEST(DerivativeQuotient, NonMagneticLimit) {
    const double j = oracle::bessel_j0_first_zero();
    EXPECT_NEAR(verify_314(1e-3).ratio, j * j - 2.0, 1e-4);
}

TEST(DerivativeQuotient, RejectsInvalidArguments) {
    EXPECT_THROW(verify_314(0.0), InvalidInput);
    EXPECT_THROW(verify_314(1.0, 1), InvalidInput);
}
