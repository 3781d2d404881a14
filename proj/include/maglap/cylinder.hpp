#pragma once

// Right cylinders D x (0, L) in a field along x3. The operator separates into
// the planar magnetic Laplacian on D plus -d^2/dx3^2 on (0, L), so every
// eigenvalue is a planar one plus (pi m / L)^2: m >= 1 for Dirichlet and
// m >= 0 for Neumann conditions on the caps.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "maglap/errors.hpp"
#include "maglap/pencil.hpp"

namespace maglap {

struct Provenance {
    std::size_t index;  // 0-based index into the planar spectrum
    int axial;          // axial mode m
};

struct ComposedSpectrum {
    BoundaryCondition bc = BoundaryCondition::Dirichlet;
    double length = 0.0;
    std::vector<double> values;
    std::vector<Provenance> provenance;
    /// Error estimate of each value, inherited from its planar component.
    std::vector<double> error;
    /// The planar input, kept so that values can be recomputed.
    std::vector<double> planar;

    std::size_t size() const noexcept { return values.size(); }
};

inline double axial_eigenvalue(int m, double length) {
    const double t = std::numbers::pi * m / length;
    return t * t;
}

/// Merges planar values with axial modes and keeps the lowest `count`.
/// `planar_error` (empty, or one entry per planar value) is carried over.
/// The request must be truncation-safe: the count-th composed value must be
/// strictly below the last planar value, otherwise unseen planar
/// eigenvalues could still enter the list.
inline ComposedSpectrum compose_spectra(std::span<const double> planar, double length,
                                        BoundaryCondition bc, std::size_t count,
                                        std::span<const double> planar_error = {}) {
    if (planar.empty()) throw InvalidInput("compose_spectra: empty planar spectrum");
    if (!(length > 0.0)) throw InvalidInput("compose_spectra: length must be positive");
    if (count < 1) throw InvalidInput("compose_spectra: count must be >= 1");
    if (!planar_error.empty() && planar_error.size() != planar.size())
        throw InvalidInput("compose_spectra: one error estimate per planar value expected");
    if (!std::is_sorted(planar.begin(), planar.end()))
        throw InvalidInput("compose_spectra: planar spectrum must be nondecreasing");

    const double top = planar.back();
    const int m0 = bc == BoundaryCondition::Dirichlet ? 1 : 0;
    std::vector<std::tuple<double, std::size_t, int>> all;
    for (std::size_t i = 0; i < planar.size(); ++i)
        for (int m = m0;; ++m) {
            const double v = planar[i] + axial_eigenvalue(m, length);
            if (!(v < top)) break;
            all.emplace_back(v, i, m);
        }
    if (all.size() < count)
        throw ConfigurationError(
            "compose_spectra: only " + std::to_string(all.size()) +
            " composed values lie below the last planar eigenvalue " + std::to_string(top) +
            "; " + std::to_string(count) + " were requested - solve for more planar eigenvalues");
    std::sort(all.begin(), all.end());

    ComposedSpectrum out;
    out.bc = bc;
    out.length = length;
    out.planar.assign(planar.begin(), planar.end());
    for (std::size_t j = 0; j < count; ++j) {
        const auto [v, i, m] = all[j];
        out.values.push_back(v);
        out.provenance.push_back({i, m});
        out.error.push_back(planar_error.empty() ? 0.0 : planar_error[i]);
    }
    return out;
}

struct DominationRow {
    std::size_t k = 0;       // 1-based index of lambda_k
    double lambda = 0.0;     // lambda_k
    double mu = 0.0;         // mu_{k + shift}
    double tolerance = 0.0;
    bool simple = true;
    bool tested = true;
    bool holds = true;
};

struct DominationReport {
    std::size_t shift = 0;
    std::vector<DominationRow> rows;
    std::vector<std::size_t> skipped;  // 1-based indices left out as non-simple
    std::size_t violations = 0;
};

/// lambda_k is simple when its relative distance to both neighbours is at
/// least `gap`. The last value has no known upper neighbour and is never
/// reported simple.
inline bool is_simple(std::span<const double> values, std::size_t j, double gap) {
    if (j + 1 >= values.size()) return false;
    const double v = values[j];
    const double scale = std::max(std::abs(v), 1e-300);
    if (std::abs(values[j + 1] - v) < gap * scale) return false;
    if (j > 0 && std::abs(v - values[j - 1]) < gap * scale) return false;
    return true;
}

/// Checks mu_{k+shift} <= lambda_k + tol for k = 1..max_k. With
/// require_simple, non-simple lambda_k are skipped and listed. The tolerance
/// per row is slack + error(mu_{k+shift}): discrete Dirichlet values are upper
/// bounds, so only the Neumann error can produce a spurious violation.
inline DominationReport domination_report(const ComposedSpectrum& dirichlet,
                                          const ComposedSpectrum& neumann, std::size_t shift,
                                          std::size_t max_k, bool require_simple, double gap,
                                          double slack) {
    if (dirichlet.bc != BoundaryCondition::Dirichlet || neumann.bc != BoundaryCondition::Neumann)
        throw InvalidInput("domination_report: expects a Dirichlet and a Neumann spectrum");
    if (max_k + shift > neumann.size() || max_k + (require_simple ? 1 : 0) > dirichlet.size())
        throw ConfigurationError("domination_report: spectra too short for " +
                                 std::to_string(max_k) + " indices");
    DominationReport rep;
    rep.shift = shift;
    for (std::size_t k = 1; k <= max_k; ++k) {
        DominationRow row;
        row.k = k;
        row.lambda = dirichlet.values[k - 1];
        row.mu = neumann.values[k - 1 + shift];
        row.tolerance = slack + neumann.error[k - 1 + shift];
        row.simple = is_simple(dirichlet.values, k - 1, gap);
        row.tested = row.simple || !require_simple;
        if (row.tested) {
            row.holds = row.mu <= row.lambda + row.tolerance;
            if (!row.holds) ++rep.violations;
        } else {
            rep.skipped.push_back(k);
        }
        rep.rows.push_back(row);
    }
    return rep;
}

/// mu_{k+2} <= lambda_k for simple lambda_k (J-symmetric cylinders).
inline DominationReport thm12_report(const ComposedSpectrum& dirichlet,
                                     const ComposedSpectrum& neumann, std::size_t max_k,
                                     double gap = 1e-6, double slack = 0.0) {
    return domination_report(dirichlet, neumann, 2, max_k, true, gap, slack);
}

/// mu_{k+1} <= lambda_k for every k, no simplicity filter.
inline DominationReport baseline_report(const ComposedSpectrum& dirichlet,
                                        const ComposedSpectrum& neumann, std::size_t max_k,
                                        double slack = 0.0) {
    return domination_report(dirichlet, neumann, 1, max_k, false, 0.0, slack);
}

}  // namespace maglap
