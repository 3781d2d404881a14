// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "maglap/harness/experiments.hpp"
#include "support/random_pencil.hpp"

using namespace maglap;
using namespace maglap::harness;

namespace {

struct Line {
    int id;
    std::string title;
    bool pass;
    std::string detail;
    double seconds;
};

std::vector<Line> lines;

template <class F>
auto timed(F&& f, double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = f();
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

void emit(int id, std::string title, bool pass, std::string detail, double seconds) {
    std::printf("[%s] %2d %s | %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, title.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    lines.push_back({id, std::move(title), pass, std::move(detail), seconds});
}

/// All checks whose names start with one of the prefixes pass; returns the
/// count examined through `n`.
bool all_pass(const Report& r, std::initializer_list<const char*> prefixes, std::size_t& n,
              std::string& first_failure) {
    n = 0;
    bool ok = true;
    for (const auto& c : r.checks)
        for (const char* p : prefixes)
            if (c.name.rfind(p, 0) == 0) {
                ++n;
                if (!c.pass && ok) {
                    ok = false;
                    first_failure = c.name + ": measured " + fmt(c.measured) + ", tolerance " +
                                    fmt(c.tolerance);
                }
            }
    return ok && n > 0 && r.solver_failures.empty();
}

void report_group(int id, const std::string& title, const Report& r,
                  std::initializer_list<const char*> prefixes, double seconds, double budget = 0) {
    std::size_t n = 0;
    std::string fail;
    bool ok = all_pass(r, prefixes, n, fail);
    std::string detail = std::to_string(n) + " checks";
    if (!ok) detail += fail.empty() ? ", no matching checks or solver failure" : ", first failure " + fail;
    if (budget > 0) {
        detail += ", budget " + fmt(budget) + " s";
        ok = ok && seconds < budget;
    }
    emit(id, title, ok, detail, seconds);
}

}  // namespace

int main() {
    // 1. Hand computations at the b = 2 crossing.
    {
        double s = 0;
        const auto v = timed(
            [] {
                return std::vector<double>{fiber_dirichlet_function(2, 6), fiber_neumann_function(-1, 2, 6),
                                           fiber_neumann_function(2, 2, 6)};
            },
            s);
        const bool ok = std::abs(v[0]) <= 1e-12 && std::abs(v[1]) <= 1e-10 && std::abs(v[2]) <= 1e-10 && s < 1.0;
        emit(1, "fiber functions vanish at the crossing", ok,
             "G(2,6) = " + fmt(v[0]) + ", F(-1,2,6) = " + fmt(v[1]) + ", F(2,2,6) = " + fmt(v[2]), s);
    }

    // 2. Closed-form Laguerre values.
    {
        double worst = 0;
        for (double x : {0.25, 1.0, 3.0}) {
            worst = std::max(worst, std::abs(laguerre(1, 0, x) - (1 - x)));
            worst = std::max(worst, std::abs(laguerre(1, -1, x) + x));
            worst = std::max(worst, std::abs(laguerre(1, 2, x) - (3 - x)));
        }
        emit(2, "closed-form Laguerre values", worst <= 1e-12, "max error " + fmt(worst), 0.0);
    }

    // 3-6. Disk curves, flux criterion, oracle equivalence, non-magnetic limits.
    {
        ExperimentConfig c = default_config("disk-curves");
        c.b.clear();
        for (int i = 1; i <= 16; ++i) c.b.push_back(0.25 * i);
        c.n = {-1, 0, 1, 2};
        double s3 = 0;
        const auto r3 = timed([&] { return run_disk_curves(c).report; }, s3);
        report_group(3, "fiber curves: three below lambda_01, lambda_01 >= b, crossing at 6", r3,
                     {"three_below.", "lower_bound.", "crossing."}, s3, 30.0);

        ExperimentConfig f = default_config("disk-curves");
        f.b = {4.5, 5.0, 6.0};
        double s4 = 0;
        const auto r4 = timed([&] { return run_disk_curves(f).report; }, s4);
        report_group(4, "flux criterion: three fibers below b for b > 4", r4, {"flux."}, s4);

        ExperimentConfig o = default_config("disk-curves");
        o.b = {0.5, 1.0, 2.0, 4.0};
        o.n = {-2, -1, 0, 1, 2, 3};
        double s5 = 0;
        const auto r5 = timed([&] { return run_disk_curves(o).report; }, s5);
        report_group(5, "Laguerre roots vs radial oracle (1%, error halves per grid doubling)", r5,
                     {"oracle.", "oracle_convergence."}, s5);

        double s6 = 0;
        Report r6 = timed(
            [&] {
                ExperimentConfig p = default_config("polygon-sweep");
                p.domains = {domain_square()};
                p.b = {1.0};
                p.k = 1;
                p.refine = {3, 4};
                Result sweep = run_polygon_sweep(p);
                Report out;
                out.merge(r3);
                out.merge(sweep.report);
                return out;
            },
            s6);
        report_group(6, "non-magnetic limits: Bessel zero and 2 pi^2 on the square", r6,
                     {"bessel_limit", "nonmagnetic_square"}, s6);
    }

    // 7. Polygon sweep.
    {
        double s = 0;
        const auto r = timed([] { return run_polygon_sweep(default_config("polygon-sweep")); }, s);
        report_group(7, "mu_{k+1} <= lambda_k on square, pentagon, 3 random hexagons", r.report,
                     {"thm11.", "same_mesh."}, s, 300.0);
    }

    // 8-9. Invariants.
    {
        double s = 0;
        const auto r = timed([] { return run_invariants(default_config("invariants")).report; }, s);
        report_group(8, "conjugation, scaling and gauge invariance", r,
                     {"conjugation", "scaling.", "gauge."}, s);
        report_group(9, "Hessian integral identity (real and complex)", r, {"hessian_identity."}, 0.0);
    }

    // 10. Derivative Rayleigh quotient.
    {
        double s = 0;
        const auto q = timed([] { return std::vector<DerivativeQuotient>{verify_314(1.0), verify_314(2.0)}; }, s);
        const double e1 = std::abs(q[0].ratio - q[0].lambda);
        const double e2 = std::abs(q[1].ratio - 6.0);
        const double gauge = std::max(std::abs(q[0].norm_landau - q[0].norm_symmetric),
                                      std::abs(q[1].norm_landau - q[1].norm_symmetric));
        emit(10, "||(grad - iA) d2 v||^2 / ||d2 v||^2 = lambda_01 (1e-4)", e1 <= 1e-4 && e2 <= 1e-4 && gauge <= 1e-10,
             "b=1: ratio " + fmt(q[0].ratio) + " vs lambda " + fmt(q[0].lambda) + "; b=2: ratio " +
                 fmt(q[1].ratio) + " vs 6; curvature-corrected prediction " +
                 fmt(q[0].curvature_corrected) + ", " + fmt(q[1].curvature_corrected) +
                 "; gauge norm defect " + fmt(gauge),
             s);
    }

    // 11. Cylinders.
    {
        double s = 0;
        const auto r = timed([] { return run_cylinder(default_config("cylinder")).report; }, s);
        report_group(11, "mu_{k+2} <= lambda_k (simple) and mu_{k+1} <= lambda_k on cylinders", r,
                     {"thm12.", "baseline."}, s);
    }

    // 12. Counting.
    {
        double s = 0;
        const auto r = timed([] { return run_counting(default_config("counting")).report; }, s);
        report_group(12, "Landau-level counting inequality, disk and square", r, {"counting."}, s);
    }

    // 13. Semicontinuity.
    {
        double s = 0;
        const auto r = timed([] { return run_semicontinuity(default_config("semicontinuity")).report; }, s);
        report_group(13, "circumscribed polygons: deficit trend and Dirichlet inclusion", r,
                     {"deficit_", "dirichlet_inclusion."}, s);
    }

    // 14. Eigensolver suite.
    {
        double s = 0;
        const auto res = timed(
            [] {
                double oracle_err = 0, resid = 0, ortho = 0, interlace = 0;
                for (std::uint64_t seed = 1; seed <= 40; ++seed) {
                    const std::size_t n = 2 + seed % 7;
                    const auto p = testing::random_pencil(n, seed, seed % 5 == 0);
                    const auto ref = oracle::pencil_eigenvalues(p.K, p.M);
                    const auto sp = smallest_eigenpairs(p, n);
                    const double scale = std::max(1.0, std::abs(ref.back()));
                    for (std::size_t i = 0; i < n; ++i)
                        oracle_err = std::max(oracle_err, std::abs(sp.values[i] - ref[i]) / scale);
                    for (double r : sp.residuals) resid = std::max(resid, r / p.K.max_abs());
                    ortho = std::max(ortho, testing::m_orthonormality_defect(p, sp.vectors));
                    const auto sub = smallest_eigenpairs(testing::leading_subpencil(p), n - 1);
                    for (std::size_t i = 0; i + 1 < n; ++i) {
                        interlace = std::max(interlace, sp.values[i] - sub.values[i]);
                        interlace = std::max(interlace, sub.values[i] - sp.values[i + 1]);
                    }
                }
                return std::vector<double>{oracle_err, resid, ortho, interlace};
            },
            s);
        const bool ok = res[0] <= 1e-8 && res[1] <= 1e-10 && res[2] <= 1e-10 && res[3] <= 1e-12;
        emit(14, "eigensolver: oracle, residuals, M-orthonormality, interlacing", ok,
             "oracle " + fmt(res[0]) + ", residual " + fmt(res[1]) + ", orthonormality " + fmt(res[2]) +
                 ", interlacing excess " + fmt(res[3]),
             s);
    }

    std::size_t failed = 0;
    for (const auto& l : lines) failed += l.pass ? 0 : 1;
    std::printf("%zu/%zu criteria passed\n", lines.size() - failed, lines.size());
    return failed == 0 ? 0 : 1;
}
