#pragma once

// Dense generalized Hermitian eigensolver for K v = lambda M v.
//
// M = L L^T is factored, the pencil is reduced to the standard problem
// C = L^{-1} K L^{-T}, C is brought to real symmetric tridiagonal form by
// Householder reflections plus a diagonal phase scaling, eigenvalues come from
// implicit-shift QL and the requested eigenvectors from inverse iteration on
// the tridiagonal matrix, followed by the back transformation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "maglap/dense.hpp"
#include "maglap/errors.hpp"
#include "maglap/pencil.hpp"

namespace maglap {

enum class EigenRoute {
    /// Householder reduction directly on the complex Hermitian matrix.
    Complex,
    /// Embed C as the real symmetric [[Re C, -Im C], [Im C, Re C]] and keep
    /// every second eigenvalue of the doubled spectrum.
    RealEmbedding,
};

struct EigenOptions {
    double tol = 1e-10;
    bool want_vectors = true;
    EigenRoute route = EigenRoute::Complex;
    /// Total implicit QL iterations are capped at sweep_factor * n.
    double sweep_factor = 100.0;
};

struct SpectrumMeta {
    std::string domain;
    double b = 0.0;
    Gauge gauge = Gauge::Landau;
    BoundaryCondition bc = BoundaryCondition::Neumann;
    int refine = -1;
};

/// Nondecreasing eigenvalues with M-orthonormal eigenvectors. Inside a
/// cluster of (numerically) equal eigenvalues the vectors are an arbitrary
/// basis of the invariant subspace.
struct Spectrum {
    std::vector<double> values;
    std::vector<std::vector<cplx>> vectors;
    std::vector<double> residuals;
    SpectrumMeta meta;

    std::size_t size() const noexcept { return values.size(); }
};

namespace detail {

inline double* as_doubles(cplx* p) noexcept { return reinterpret_cast<double*>(p); }
inline double* as_doubles(double* p) noexcept { return p; }

template <class S>
constexpr std::size_t real_width = is_complex_v<S> ? 2 : 1;

inline Matrix<double> cholesky(const Matrix<double>& m) {
    const std::size_t n = m.rows();
    Matrix<double> l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* li = l.row(i).data();
        for (std::size_t j = 0; j <= i; ++j) {
            const double* lj = l.row(j).data();
            double s = m(i, j);
            for (std::size_t t = 0; t < j; ++t) s -= li[t] * lj[t];
            if (i == j) {
                if (!(s > 0.0) || !std::isfinite(s))
                    throw FactorizationError("mass matrix is not positive definite: pivot " +
                                             std::to_string(i) + " = " + std::to_string(s));
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

/// Solves L X = B in place for lower-triangular real L, row by row.
template <class S>
void forward_substitute(const Matrix<double>& l, Matrix<S>& b) {
    const std::size_t n = l.rows();
    const std::size_t width = b.cols() * real_width<S>;
    for (std::size_t i = 0; i < n; ++i) {
        double* bi = as_doubles(b.row(i).data());
        const double* li = l.row(i).data();
        for (std::size_t j = 0; j < i; ++j) {
            const double c = li[j];
            if (c == 0.0) continue;
            const double* bj = as_doubles(b.row(j).data());
            for (std::size_t t = 0; t < width; ++t) bi[t] -= c * bj[t];
        }
        const double inv = 1.0 / li[i];
        for (std::size_t t = 0; t < width; ++t) bi[t] *= inv;
    }
}

/// Solves L^T x = y in place.
template <class S>
void backward_substitute_transposed(const Matrix<double>& l, std::span<S> x) {
    const std::size_t n = l.rows();
    for (std::size_t ii = n; ii-- > 0;) {
        x[ii] /= l(ii, ii);
        const S xi = x[ii];
        const double* li = l.row(ii).data();
        for (std::size_t j = 0; j < ii; ++j) x[j] -= li[j] * xi;
    }
}

/// C = L^{-1} K L^{-T} for Hermitian K.
template <class S>
Matrix<S> reduce_to_standard(const Matrix<S>& k, const Matrix<double>& l) {
    Matrix<S> w = k;
    forward_substitute(l, w);
    const std::size_t n = w.rows();
    for (std::size_t i = 0; i < n; ++i) {
        w(i, i) = conj_of(w(i, i));
        for (std::size_t j = 0; j < i; ++j) {
            const S a = w(i, j);
            w(i, j) = conj_of(w(j, i));
            w(j, i) = conj_of(a);
        }
    }
    forward_substitute(l, w);
    return w;
}

/// Householder reduction of a Hermitian matrix (lower triangle referenced)
/// to real symmetric tridiagonal form T = D^* Q^* C Q D.
template <class S>
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples i and i+1; off.size() == n (last is 0)
    std::vector<S> phase;     // diagonal of D
    std::vector<std::vector<S>> reflectors;  // v_k on indices k+1..n-1
    std::vector<double> tau;

    std::size_t size() const noexcept { return diag.size(); }

    /// u = Q D y
    std::vector<S> back_transform(std::span<const double> y) const {
        const std::size_t n = size();
        std::vector<S> z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = phase[i] * y[i];
        for (std::size_t kk = reflectors.size(); kk-- > 0;) {
            if (tau[kk] == 0.0) continue;
            const auto& v = reflectors[kk];
            const std::size_t off0 = kk + 1;
            S dot{};
            for (std::size_t i = 0; i < v.size(); ++i) dot += conj_of(v[i]) * z[off0 + i];
            const S s = tau[kk] * dot;
            for (std::size_t i = 0; i < v.size(); ++i) z[off0 + i] -= s * v[i];
        }
        return z;
    }
};

// Lower-triangle Hermitian kernels on the trailing block starting at `o`.
// Complex arithmetic is spelled out on real/imaginary parts so that the
// inner loops stay free of library calls.
template <class S>
void hermitian_lower_matvec(const Matrix<S>& a, std::size_t o, std::span<const S> v,
                            std::span<S> y) {
    const std::size_t m = v.size();
    std::fill(y.begin(), y.end(), S{});
    if constexpr (is_complex_v<S>) {
        const double* vd = reinterpret_cast<const double*>(v.data());
        double* yd = reinterpret_cast<double*>(y.data());
        for (std::size_t i = 0; i < m; ++i) {
            const double* ai = reinterpret_cast<const double*>(a.row(o + i).data() + o);
            const double vr = vd[2 * i], vi = vd[2 * i + 1];
            double sr = 0.0, si = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                const double ar = ai[2 * j], aim = ai[2 * j + 1];
                const double xr = vd[2 * j], xi = vd[2 * j + 1];
                sr += ar * xr - aim * xi;
                si += ar * xi + aim * xr;
                // conj(a_ij) * v_i
                yd[2 * j] += ar * vr + aim * vi;
                yd[2 * j + 1] += ar * vi - aim * vr;
            }
            const double dr = ai[2 * i];
            yd[2 * i] += sr + dr * vr;
            yd[2 * i + 1] += si + dr * vi;
        }
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            const double* ai = a.row(o + i).data() + o;
            const double vi = v[i];
            double s = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                s += ai[j] * v[j];
                y[j] += ai[j] * vi;
            }
            y[i] += s + ai[i] * vi;
        }
    }
}

/// A -= v w^* + w v^* on the trailing lower triangle.
template <class S>
void hermitian_lower_rank2(Matrix<S>& a, std::size_t o, std::span<const S> v,
                           std::span<const S> w) {
    const std::size_t m = v.size();
    if constexpr (is_complex_v<S>) {
        const double* vd = reinterpret_cast<const double*>(v.data());
        const double* wd = reinterpret_cast<const double*>(w.data());
        for (std::size_t i = 0; i < m; ++i) {
            double* ai = reinterpret_cast<double*>(a.row(o + i).data() + o);
            const double vr = vd[2 * i], vi = vd[2 * i + 1];
            const double wr = wd[2 * i], wi = wd[2 * i + 1];
            for (std::size_t j = 0; j <= i; ++j) {
                const double xr = vd[2 * j], xi = vd[2 * j + 1];
                const double yr = wd[2 * j], yi = wd[2 * j + 1];
                // v_i conj(w_j) + w_i conj(v_j)
                ai[2 * j] -= vr * yr + vi * yi + wr * xr + wi * xi;
                ai[2 * j + 1] -= vi * yr - vr * yi + wi * xr - wr * xi;
            }
        }
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            double* ai = a.row(o + i).data() + o;
            const double vi = v[i], wi = w[i];
            for (std::size_t j = 0; j <= i; ++j) ai[j] -= vi * w[j] + wi * v[j];
        }
    }
}

template <class S>
Tridiagonal<S> tridiagonalize(Matrix<S> a, bool keep_reflectors) {
    const std::size_t n = a.rows();
    Tridiagonal<S> t;
    t.diag.resize(n);
    t.off.assign(n, 0.0);
    t.phase.assign(n, S{1});
    std::vector<S> sub(n > 0 ? n - 1 : 0);

    std::vector<S> v, p;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        v.resize(m);
        p.resize(m);
        double xnorm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = a(k + 1 + i, k);
            xnorm2 += abs2(v[i]);
        }
        t.diag[k] = std::real(a(k, k));
        double tau = 0.0;
        if (xnorm2 == 0.0) {
            sub[k] = S{};
        } else {
            const double xnorm = std::sqrt(xnorm2);
            const double ax0 = std::abs(v[0]);
            const S ph = ax0 > 0.0 ? v[0] / ax0 : S{1};
            const S alpha = -ph * xnorm;
            v[0] = ph * (ax0 + xnorm);
            tau = 1.0 / (xnorm * (xnorm + ax0));
            sub[k] = alpha;

            hermitian_lower_matvec<S>(a, k + 1, v, p);
            S vp{};
            for (std::size_t i = 0; i < m; ++i) {
                p[i] *= tau;
                vp += conj_of(v[i]) * p[i];
            }
            const double half = 0.5 * tau * std::real(vp);
            for (std::size_t i = 0; i < m; ++i) p[i] -= half * v[i];
            hermitian_lower_rank2<S>(a, k + 1, v, p);
        }
        if (keep_reflectors) {
            t.reflectors.push_back(v);
            t.tau.push_back(tau);
        }
    }
    if (n >= 2) {
        t.diag[n - 2] = std::real(a(n - 2, n - 2));
        sub[n - 2] = a(n - 1, n - 2);
    }
    if (n >= 1) t.diag[n - 1] = std::real(a(n - 1, n - 1));

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double mag = std::abs(sub[i]);
        t.off[i] = mag;
        t.phase[i + 1] = mag > 0.0 ? t.phase[i] * (sub[i] / mag) : t.phase[i];
    }
    return t;
}

/// Eigenvalues of a real symmetric tridiagonal matrix by implicit-shift QL.
inline std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e,
                                                   std::size_t max_iterations) {
    const std::size_t n = d.size();
    e.resize(n, 0.0);
    if (n > 0) e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    std::size_t iterations = 0;
    for (std::size_t l = 0; l < n; ++l) {
        std::size_t m = l;
        for (;;) {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iterations > max_iterations)
                throw SolverError("implicit QL did not converge: " + std::to_string(iterations) +
                                  " iterations spent, eigenvalue " + std::to_string(l) + " of " +
                                  std::to_string(n) + " unresolved, |e| = " +
                                  std::to_string(std::abs(e[l])));
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool deflated = false;
            for (std::size_t i = m; i-- > l;) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (deflated) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Eigenvectors of a real symmetric tridiagonal matrix for the given sorted
/// eigenvalues, by inverse iteration with reorthogonalization inside
/// clusters.
inline std::vector<std::vector<double>> tridiagonal_eigenvectors(
    const std::vector<double>& d, const std::vector<double>& e, std::span<const double> lambdas) {
    const std::size_t n = d.size();
    const double eps = std::numeric_limits<double>::epsilon();
    double onenorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = std::abs(d[i]);
        if (i > 0) s += std::abs(e[i - 1]);
        if (i + 1 < n) s += std::abs(e[i]);
        onenorm = std::max(onenorm, s);
    }
    if (onenorm == 0.0) onenorm = 1.0;
    const double ortol = 1e-3 * onenorm;
    const double pertol = 10.0 * eps * onenorm;
    const double tiny = eps * onenorm;

    std::vector<std::vector<double>> out;
    out.reserve(lambdas.size());
    std::vector<double> dl(n), dd(n), du(n), du2(n), x(n);
    std::vector<unsigned char> swapped(n);
    std::size_t cluster_start = 0;
    double prev_shift = 0.0;

    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        double shift = lambdas[j];
        if (j > 0 && lambdas[j] - lambdas[j - 1] > ortol) cluster_start = j;
        if (j > cluster_start && shift <= prev_shift + pertol) shift = prev_shift + pertol;
        prev_shift = shift;

        if (n == 1) {
            out.push_back({1.0});
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) dd[i] = d[i] - shift;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            dl[i] = e[i];
            du[i] = e[i];
            du2[i] = 0.0;
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(dd[i]) >= std::abs(dl[i])) {
                swapped[i] = 0;
                if (dd[i] != 0.0) {
                    const double fact = dl[i] / dd[i];
                    dl[i] = fact;
                    dd[i + 1] -= fact * du[i];
                } else {
                    dl[i] = 0.0;
                }
            } else {
                swapped[i] = 1;
                const double fact = dd[i] / dl[i];
                dd[i] = dl[i];
                dl[i] = fact;
                const double temp = du[i];
                du[i] = dd[i + 1];
                dd[i + 1] = temp - fact * dd[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(dd[i]) < tiny) dd[i] = std::copysign(tiny, dd[i] == 0.0 ? 1.0 : dd[i]);

        SplitMix64 rng{0x5eed0000ull + j};
        for (std::size_t i = 0; i < n; ++i) x[i] = 2.0 * rng.uniform() - 1.0;

        auto normalize = [&] {
            double s = 0.0;
            for (double v : x) s += v * v;
            s = std::sqrt(s);
            for (double& v : x) v /= s;
        };
        auto orthogonalize = [&] {
            for (std::size_t c = cluster_start; c < j; ++c) {
                const auto& q = out[c];
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += q[i] * x[i];
                for (std::size_t i = 0; i < n; ++i) x[i] -= dot * q[i];
            }
        };
        normalize();
        for (int it = 0; it < 5; ++it) {
            for (std::size_t i = 0; i + 1 < n; ++i) {
                if (!swapped[i]) {
                    x[i + 1] -= dl[i] * x[i];
                } else {
                    const double temp = x[i];
                    x[i] = x[i + 1];
                    x[i + 1] = temp - dl[i] * x[i];
                }
            }
            x[n - 1] /= dd[n - 1];
            x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / dd[n - 2];
            for (std::size_t i = n - 2; i-- > 0;)
                x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dd[i];
            normalize();
            orthogonalize();
            normalize();
        }
        out.push_back(x);
    }
    return out;
}

template <class S>
struct StandardEigen {
    std::vector<double> values;
    std::vector<std::vector<S>> vectors;
};

/// k smallest eigenpairs of the Hermitian matrix C (lower triangle used).
template <class S>
StandardEigen<S> standard_smallest(Matrix<S> c, std::size_t k, const EigenOptions& opt) {
    const std::size_t n = c.rows();
    auto tri = tridiagonalize<S>(std::move(c), opt.want_vectors);
    const auto cap = static_cast<std::size_t>(opt.sweep_factor * static_cast<double>(n));
    auto all = tridiagonal_eigenvalues(tri.diag, tri.off, cap);
    StandardEigen<S> out;
    out.values.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    if (opt.want_vectors) {
        const auto ys = tridiagonal_eigenvectors(tri.diag, tri.off, out.values);
        out.vectors.reserve(k);
        for (const auto& y : ys) out.vectors.push_back(tri.back_transform(y));
    }
    return out;
}

inline StandardEigen<cplx> embedded_smallest(const Matrix<cplx>& c, std::size_t k,
                                             const EigenOptions& opt) {
    const std::size_t n = c.rows();
    Matrix<double> big(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            // lower triangle of [[Re, -Im], [Im, Re]] from the lower triangle of C
            const cplx z = c(i, j);
            big(i, j) = z.real();
            big(n + i, n + j) = z.real();
            big(n + i, j) = z.imag();
            if (j < i) big(n + j, i) = -z.imag();
        }
    auto doubled = standard_smallest<double>(std::move(big), 2 * k, opt);
    StandardEigen<cplx> out;
    for (std::size_t i = 0; i < k; ++i) out.values.push_back(doubled.values[2 * i + 1]);
    if (!opt.want_vectors) return out;

    // Each complex eigenvector shows up twice (as u and i*u); keep the
    // candidates that are independent of those already accepted.
    for (const auto& xy : doubled.vectors) {
        if (out.vectors.size() == k) break;
        std::vector<cplx> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = {xy[i], xy[n + i]};
        for (const auto& q : out.vectors) {
            cplx dot{};
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(q[i]) * u[i];
            for (std::size_t i = 0; i < n; ++i) u[i] -= dot * q[i];
        }
        const double nu = norm2(u);
        if (nu < 0.5) continue;
        for (auto& z : u) z /= nu;
        out.vectors.push_back(std::move(u));
    }
    if (out.vectors.size() != k)
        throw SolverError("real embedding: recovered " + std::to_string(out.vectors.size()) +
                          " independent eigenvectors, expected " + std::to_string(k));
    return out;
}

}  // namespace detail

/// max_j ||K v_j - lambda_j M v_j||_2
inline std::vector<double> residual_report(const HermitianPencil& p, const Spectrum& s) {
    if (s.vectors.size() != s.values.size())
        throw InvalidInput("residual_report: spectrum carries no eigenvectors for every value");
    std::vector<double> out;
    out.reserve(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        const auto& v = s.vectors[j];
        if (v.size() != p.size())
            throw InvalidInput("residual_report: eigenvector dimension " + std::to_string(v.size()) +
                               " does not match pencil dimension " + std::to_string(p.size()));
        const auto kv = matvec(p.K, std::span<const cplx>(v));
        const auto mv = matvec(p.M, std::span<const cplx>(v));
        double r = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) r += abs2(kv[i] - s.values[j] * mv[i]);
        out.push_back(std::sqrt(r));
    }
    return out;
}

/// The k smallest eigenpairs of K v = lambda M v.
inline Spectrum smallest_eigenpairs(const HermitianPencil& p, std::size_t k,
                                    const EigenOptions& opt = {}) {
    const std::size_t n = p.size();
    if (p.M.rows() != n || !p.K.square() || !p.M.square())
        throw InvalidInput("smallest_eigenpairs: K and M must be square of equal size");
    if (k < 1 || k > n)
        throw InvalidInput("smallest_eigenpairs: k = " + std::to_string(k) +
                           " outside [1, " + std::to_string(n) + "]");
    if (!(opt.tol > 0.0)) throw InvalidInput("smallest_eigenpairs: tol must be positive");

    const Matrix<double> l = detail::cholesky(p.M);
    Spectrum out;
    out.meta.bc = p.bc;
    std::vector<std::vector<cplx>> us;

    if (p.is_real() && opt.route == EigenRoute::Complex) {
        Matrix<double> kr(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) kr(i, j) = p.K(i, j).real();
        auto std_eig = detail::standard_smallest<double>(detail::reduce_to_standard(kr, l), k, opt);
        out.values = std::move(std_eig.values);
        for (const auto& y : std_eig.vectors) us.emplace_back(y.begin(), y.end());
    } else {
        auto c = detail::reduce_to_standard(p.K, l);
        auto std_eig = opt.route == EigenRoute::Complex
                           ? detail::standard_smallest<cplx>(std::move(c), k, opt)
                           : detail::embedded_smallest(c, k, opt);
        out.values = std::move(std_eig.values);
        us = std::move(std_eig.vectors);
    }

    if (opt.want_vectors) {
        for (auto& u : us) detail::backward_substitute_transposed<cplx>(l, u);
        out.vectors = std::move(us);
        out.residuals = residual_report(p, out);
        const double scale = std::max(p.K.max_abs(), std::numeric_limits<double>::min());
        for (std::size_t j = 0; j < out.size(); ++j) {
            const double bound = opt.tol * scale * norm2(out.vectors[j]);
            if (out.residuals[j] > bound)
                throw SolverError("eigenpair " + std::to_string(j) + " residual " +
                                  std::to_string(out.residuals[j]) + " exceeds tolerance " +
                                  std::to_string(bound));
        }
    }
    return out;
}

}  // namespace maglap
