#pragma once

// The magnetic Laplacian on the unit disk. In the symmetric gauge the
// Neumann operator splits over angular momenta n into radial fiber
// operators with form
//   t_{b,n}[f] = int_0^1 |f'|^2 r dr + int_0^1 (n/r - b r/2)^2 |f|^2 r dr
// on L^2((0,1); r dr). Their ground states are
//   e^{-b r^2/4} r^n L_nu^n(b r^2 / 2),   nu = (mu/b - 1)/2,
// so the lowest Neumann fiber eigenvalue is the first positive zero of the
// radial derivative at r = 1, and the radial Dirichlet ground state is the
// first positive zero of L_nu^0(b/2).

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "maglap/errors.hpp"
#include "maglap/dense.hpp"
#include "maglap/laguerre.hpp"
#include "maglap/quadrature.hpp"

namespace maglap {

enum class FiberKind { NeumannFiber, DirichletRadial };

struct FiberResult {
    int n = 0;
    double b = 0.0;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    FiberKind kind = FiberKind::NeumannFiber;
};

inline double laguerre_degree(double b, double energy) { return 0.5 * (energy / b - 1.0); }

/// Radial derivative at r = 1 of e^{-b r^2/4} r^n L_nu^n(b r^2/2).
inline double fiber_neumann_function(int n, double b, double mu) {
    if (!(b > 0.0)) throw InvalidInput("fiber_neumann_function: b must be positive");
    const double nu = laguerre_degree(b, mu);
    const double x = 0.5 * b;
    return std::exp(-0.25 * b) * ((n - x) * laguerre(nu, n, x) - b * laguerre(nu - 1.0, n + 1, x));
}

/// L_nu^0(b/2) with nu = (lambda/b - 1)/2.
inline double fiber_dirichlet_function(double b, double lambda) {
    if (!(b > 0.0)) throw InvalidInput("fiber_dirichlet_function: b must be positive");
    return laguerre(laguerre_degree(b, lambda), 0, 0.5 * b);
}

struct Root {
    double value;
    double lo;
    double hi;
};

/// First sign change of f on the scan grid, refined by bisection to relative
/// width tol.
inline Root smallest_positive_root(const std::function<double(double)>& f, double upper,
                                   double step, double tol = 1e-12) {
    if (!(step > 0.0) || !(upper > step) || !(tol > 0.0))
        throw InvalidInput("smallest_positive_root: need 0 < step < upper and tol > 0");
    // Grid: step 2^-40, ..., step/2 (so roots below the first regular point
    // are not skipped), then step, 2 step, ..., upper.
    constexpr int fine = 40;
    const auto steps = static_cast<long>(std::floor(upper / step));
    auto grid = [&](long i) {
        return i < fine ? std::ldexp(step, static_cast<int>(i) - fine)
                        : step * static_cast<double>(i - fine + 1);
    };
    double x0 = grid(0), f0 = f(x0);
    if (f0 == 0.0) return {x0, 0.0, grid(1)};
    for (long i = 1; i < steps + fine; ++i) {
        const double x1 = grid(i);
        const double f1 = f(x1);
        if (f1 == 0.0) return {x1, x0, grid(i + 1)};
        if ((f0 < 0.0) != (f1 < 0.0)) {
            double lo = x0, hi = x1, flo = f0;
            while (hi - lo > tol * std::abs(hi)) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if (fm == 0.0) return {mid, lo, hi};
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return {0.5 * (lo + hi), lo, hi};
        }
        x0 = x1;
        f0 = f1;
    }
    throw NoRootError("smallest_positive_root: no sign change on (0, " + std::to_string(upper) +
                          "]",
                      upper);
}

struct FiberScan {
    /// Grid spacing as a fraction of b.
    double step_fraction = 1.0 / 50.0;
    /// Scan ceiling; 0 selects the default ceiling below.
    double ceiling = 0.0;
    double tol = 1e-12;
};

/// Rayleigh quotient of the fiber form at r^|n| (n-th Neumann fiber) or at
/// 1 - r^2 (radial Dirichlet): explicit upper bounds for the lowest root.
inline double fiber_upper_bound(int n, double b, FiberKind kind) {
    if (kind == FiberKind::DirichletRadial) return 6.0 + b * b / 16.0;
    const double m = std::abs(n);
    return 2.0 * m * (m + 1.0) - n * b + b * b * (m + 1.0) / (4.0 * (m + 2.0));
}

/// max(b (2|n| + 3) + 10, twice the Rayleigh upper bound).
inline double default_scan_ceiling(int n, double b, FiberKind kind) {
    const double landau = kind == FiberKind::DirichletRadial ? 3.0 * b + 10.0
                                                             : b * (2.0 * std::abs(n) + 3.0) + 10.0;
    return std::max(landau, 2.0 * fiber_upper_bound(n, b, kind));
}

/// Lowest eigenvalue of the Neumann fiber operator with angular index n.
inline FiberResult mu_n1(int n, double b, const FiberScan& scan = {}) {
    if (!(b > 0.0)) throw InvalidInput("mu_n1: b must be positive");
    const double ceiling =
        scan.ceiling > 0.0 ? scan.ceiling : default_scan_ceiling(n, b, FiberKind::NeumannFiber);
    try {
        const Root r = smallest_positive_root([&](double mu) { return fiber_neumann_function(n, b, mu); },
                                   ceiling, std::min(scan.step_fraction * b, 0.5 * ceiling), scan.tol);
        return {n, b, r.value, r.lo, r.hi, FiberKind::NeumannFiber};
    } catch (const NoRootError&) {
        throw NoRootError("mu_n1: no root for n = " + std::to_string(n) + ", b = " +
                              std::to_string(b) + " below the scan ceiling " +
                              std::to_string(ceiling),
                          ceiling);
    }
}

/// Lowest eigenvalue of the radial Dirichlet operator (the disk's first
/// Dirichlet eigenvalue).
inline FiberResult lambda_01(double b, const FiberScan& scan = {}) {
    if (!(b > 0.0)) throw InvalidInput("lambda_01: b must be positive");
    const double ceiling =
        scan.ceiling > 0.0 ? scan.ceiling : default_scan_ceiling(0, b, FiberKind::DirichletRadial);
    try {
        const Root r = smallest_positive_root([&](double l) { return fiber_dirichlet_function(b, l); },
                                   ceiling, std::min(scan.step_fraction * b, 0.5 * ceiling), scan.tol);
        return {0, b, r.value, r.lo, r.hi, FiberKind::DirichletRadial};
    } catch (const NoRootError&) {
        throw NoRootError("lambda_01: no root for b = " + std::to_string(b) +
                              " below the scan ceiling " + std::to_string(ceiling),
                          ceiling);
    }
}

// ---------------------------------------------------------------------------
// Radial finite-element oracle. Independent of the Laguerre path: P1 elements
// on a uniform grid of (0, 1], exact-enough Gauss quadrature of the weighted
// fiber form, eigenvalues by Sturm-sequence bisection on the tridiagonal
// pencil.

enum class OriginCondition { Auto, Pinned, Natural };

struct FiberOracleOptions {
    OriginCondition origin = OriginCondition::Auto;
    int gauss_points = 8;
};

class FiberDiscretization {
public:
    FiberDiscretization(int n, double b, FiberKind kind, int grid,
                        const FiberOracleOptions& opt = {}) {
        if (grid < 100) throw InvalidInput("fiber_oracle: grid must be >= 100");
        bool pin = n != 0;
        if (opt.origin == OriginCondition::Pinned) pin = true;
        if (opt.origin == OriginCondition::Natural) {
            if (n != 0)
                throw ConfigurationError(
                    "fiber_oracle: n != 0 needs an essential zero at r = 0 (the form is "
                    "infinite on basis functions that do not vanish there)");
            pin = false;
        }
        const double h = 1.0 / grid;
        const auto nodes = static_cast<std::size_t>(grid) + 1;
        std::vector<double> kd(nodes, 0.0), ko(nodes, 0.0), md(nodes, 0.0), mo(nodes, 0.0);
        const GaussRule ref = gauss_legendre(opt.gauss_points);
        for (int e = 0; e < grid; ++e) {
            const double a = e * h, c = (e + 1) * h;
            const auto i = static_cast<std::size_t>(e);
            for (std::size_t q = 0; q < ref.nodes.size(); ++q) {
                const double r = 0.5 * (a + c) + 0.5 * h * ref.nodes[q];
                const double w = 0.5 * h * ref.weights[q];
                const double p0 = (c - r) / h, p1 = (r - a) / h;
                const double pot = n / r - 0.5 * b * r;
                const double v = pot * pot * r;
                const double grad = r / (h * h);
                kd[i] += w * (grad + v * p0 * p0);
                kd[i + 1] += w * (grad + v * p1 * p1);
                ko[i] += w * (-grad + v * p0 * p1);
                md[i] += w * r * p0 * p0;
                md[i + 1] += w * r * p1 * p1;
                mo[i] += w * r * p0 * p1;
            }
        }
        std::size_t first = pin ? 1 : 0;
        std::size_t last = kind == FiberKind::DirichletRadial ? nodes - 1 : nodes;
        for (std::size_t i = first; i < last; ++i) {
            kdiag_.push_back(kd[i]);
            mdiag_.push_back(md[i]);
            if (i + 1 < last) {
                koff_.push_back(ko[i]);
                moff_.push_back(mo[i]);
            }
        }
    }

    std::size_t size() const noexcept { return kdiag_.size(); }

    /// Number of eigenvalues strictly below sigma (Sylvester inertia of K - sigma M).
    std::size_t count_below(double sigma) const {
        std::size_t neg = 0;
        double d = 0.0;
        for (std::size_t i = 0; i < kdiag_.size(); ++i) {
            double a = kdiag_[i] - sigma * mdiag_[i];
            if (i > 0) {
                const double o = koff_[i - 1] - sigma * moff_[i - 1];
                a -= o * o / d;
            }
            if (a == 0.0) a = -1e-300;
            if (a < 0.0) ++neg;
            d = a;
        }
        return neg;
    }

    /// The j-th (0-based) eigenvalue by bisection.
    double eigenvalue(std::size_t j) const {
        if (j >= size()) throw InvalidInput("fiber_oracle: eigenvalue index out of range");
        double lo = 0.0, hi = 1.0;
        while (count_below(hi) <= j) hi *= 2.0;
        for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (count_below(mid) <= j)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }

private:
    std::vector<double> kdiag_, koff_, mdiag_, moff_;
};

/// Lowest `count` eigenvalues of the discretized fiber form.
inline std::vector<double> fiber_oracle(int n, double b, FiberKind kind, int grid,
                                        std::size_t count = 3,
                                        const FiberOracleOptions& opt = {}) {
    if (!(b >= 0.0)) throw InvalidInput("fiber_oracle: b must be >= 0");
    const FiberDiscretization disc(n, b, kind, grid, opt);
    std::vector<double> out;
    for (std::size_t j = 0; j < std::min(count, disc.size()); ++j) out.push_back(disc.eigenvalue(j));
    return out;
}

/// One eigenvalue of the disk assembled from the fibers.
struct DiskEigenvalue {
    double value;
    int n;         // angular index
    std::size_t j; // radial index, 0-based
};

/// All disk eigenvalues below `cut` from the radial oracle. Fibers with
/// (|n| - b/2)^2 >= cut are provably empty below `cut`, since the potential
/// (n/r - b r/2)^2 is at least that large on (0, 1].
inline std::vector<DiskEigenvalue> disk_eigenvalues_below(double b, FiberKind kind, double cut,
                                                          int grid) {
    if (!(cut > 0.0)) throw InvalidInput("disk_eigenvalues_below: cut must be positive");
    const int n_max = static_cast<int>(std::ceil(0.5 * b + std::sqrt(cut))) + 1;
    std::vector<DiskEigenvalue> out;
    for (int n = -n_max; n <= n_max; ++n) {
        const FiberDiscretization disc(n, b, kind, grid);
        const std::size_t below = disc.count_below(cut);
        for (std::size_t j = 0; j < below; ++j) out.push_back({disc.eigenvalue(j), n, j});
    }
    std::sort(out.begin(), out.end(), [](const DiskEigenvalue& a, const DiskEigenvalue& c) {
        return a.value < c.value || (a.value == c.value && a.n < c.n);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Rayleigh quotient of d/dx2 of the Dirichlet ground state on the unit disk.

struct DerivativeQuotient {
    double ratio = 0.0;             // ||(grad - iA) d2 v||^2 / ||d2 v||^2, Landau gauge
    double ratio_symmetric = 0.0;   // same quotient computed in the symmetric gauge
    double lambda = 0.0;            // lambda_01(b)
    double norm_landau = 0.0;       // ||d2 v_L||
    double norm_symmetric = 0.0;    // ||(d2 + i b x1/2) v_S||
    double boundary_flux = 0.0;     // int over the circle of |d_nu v|^2
    double curvature_corrected = 0.0;  // lambda - boundary_flux / (2 ||d2 v||^2)
    int radial_points = 0;
    int angular_points = 0;
};

namespace detail {

struct RadialProfile {
    double v, q, s;  // v_S, v_S'/r, (v_S'' - v_S'/r)/r^2
};

inline RadialProfile radial_profile(double b, double nu, double r) {
    const double u = 0.5 * b * r * r;
    const double e = std::exp(-0.25 * b * r * r);
    const double l0 = laguerre(nu, 0, u);
    const double l1 = -laguerre(nu - 1.0, 1, u);
    const double l2 = laguerre(nu - 2.0, 2, u);
    const double h = l1 - 0.5 * l0;
    return {e * l0, b * e * h, b * b * e * (l2 - 0.5 * l1 - 0.5 * h)};
}

struct QuotientSums {
    double num_l = 0, num_s = 0, den_l = 0, den_s = 0;
};

inline QuotientSums derivative_quotient_sums(double b, double nu, int nr, int nt) {
    const GaussRule rr = gauss_legendre(nr, 0.0, 1.0);
    const cplx I(0.0, 1.0);
    QuotientSums s;
    for (std::size_t a = 0; a < rr.nodes.size(); ++a) {
        const double r = rr.nodes[a];
        const RadialProfile p = radial_profile(b, nu, r);
        for (int t = 0; t < nt; ++t) {
            const double th = 2.0 * std::numbers::pi * t / nt;
            const double x1 = r * std::cos(th), x2 = r * std::sin(th);
            const double w = rr.weights[a] * r * (2.0 * std::numbers::pi / nt);
            const double d1v = p.q * x1, d2v = p.q * x2;
            const double d12v = p.s * x1 * x2;
            const double d22v = p.q + p.s * x2 * x2;

            // Symmetric gauge: psi = (d2 + i b x1/2) v_S.
            const cplx psi = d2v + I * (0.5 * b * x1) * p.v;
            const cplx d1psi = d12v + I * (0.5 * b) * p.v + I * (0.5 * b * x1) * d1v;
            const cplx d2psi = d22v + I * (0.5 * b * x1) * d2v;
            const cplx c1s = d1psi + I * (0.5 * b * x2) * psi;
            const cplx c2s = d2psi - I * (0.5 * b * x1) * psi;
            s.num_s += w * (std::norm(c1s) + std::norm(c2s));
            s.den_s += w * std::norm(psi);

            // Landau gauge: v_L = e^{i chi} v_S, chi = b x1 x2/2, and d2 v_L
            // differentiated with the phase kept explicit.
            const cplx phase = std::exp(I * (0.5 * b * x1 * x2));
            const cplx wl = phase * psi;
            const cplx d1w = phase * (I * (0.5 * b * x2) * psi + d1psi);
            const cplx d2w = phase * (I * (0.5 * b * x1) * psi + d2psi);
            const cplx c1l = d1w;
            const cplx c2l = d2w - I * (b * x1) * wl;
            s.num_l += w * (std::norm(c1l) + std::norm(c2l));
            s.den_l += w * std::norm(wl);
        }
    }
    return s;
}

}  // namespace detail

/// Tensor polar quadrature (Gauss in r, trapezoid in theta) of the quotient
/// ||(grad - iA) d2 v||^2 / ||d2 v||^2 for the Landau-gauge Dirichlet ground
/// state of the unit disk. The orders start at (order, 2 order) and double
/// until the quotient moves by less than 1e-6.
inline DerivativeQuotient verify_314(double b, int quad_order = 8) {
    if (!(b > 0.0)) throw InvalidInput("verify_314: b must be positive");
    if (quad_order < 2) throw InvalidInput("verify_314: quad_order must be >= 2");
    const double lambda = lambda_01(b).value;
    const double nu = laguerre_degree(b, lambda);
    int nr = quad_order, nt = 2 * quad_order;
    auto sums = detail::derivative_quotient_sums(b, nu, nr, nt);
    double ratio = sums.num_l / sums.den_l;
    for (;;) {
        if (nr > 1024)
            throw SolverError("verify_314: quadrature did not settle (last ratio " +
                              std::to_string(ratio) + " at " + std::to_string(nr) + " radial points)");
        const auto finer = detail::derivative_quotient_sums(b, nu, 2 * nr, 2 * nt);
        const double next = finer.num_l / finer.den_l;
        nr *= 2;
        nt *= 2;
        sums = finer;
        const bool settled = std::abs(next - ratio) < 1e-6;
        ratio = next;
        if (settled) break;
    }
    DerivativeQuotient out;
    out.ratio = ratio;
    out.ratio_symmetric = sums.num_s / sums.den_s;
    out.lambda = lambda;
    out.norm_landau = std::sqrt(sums.den_l);
    out.norm_symmetric = std::sqrt(sums.den_s);
    const double dv1 = detail::radial_profile(b, nu, 1.0).q;  // v_S'(1)
    out.boundary_flux = 2.0 * std::numbers::pi * dv1 * dv1;
    out.curvature_corrected = lambda - 0.5 * out.boundary_flux / sums.den_l;
    out.radial_points = nr;
    out.angular_points = nt;
    return out;
}

}  // namespace maglap
