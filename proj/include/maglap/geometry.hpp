#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maglap/errors.hpp"

namespace maglap {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Shoelace signed area of a closed vertex loop.
inline double signed_area(std::span<const Vec2> loop) {
    double s = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) s += cross(loop[i], loop[(i + 1) % loop.size()]);
    return 0.5 * s;
}

/// Counterclockwise, strictly convex vertex loop.
class ConvexPolygon {
public:
    static ConvexPolygon from_vertices(std::vector<Vec2> vertices) {
        if (vertices.size() < 3)
            throw InvalidInput("polygon needs at least 3 vertices, got " +
                               std::to_string(vertices.size()));
        for (const auto& v : vertices)
            if (!std::isfinite(v.x) || !std::isfinite(v.y))
                throw InvalidInput("polygon vertex is not finite");
        ConvexPolygon p(std::move(vertices));
        p.validate();
        return p;
    }

    std::span<const Vec2> vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    const Vec2& operator[](std::size_t i) const noexcept { return vertices_[i]; }

    double area() const { return signed_area(vertices_); }

    double diameter() const {
        double d = 0.0;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                d = std::max(d, norm(vertices_[i] - vertices_[j]));
        return d;
    }

    /// Area centroid.
    Vec2 centroid() const {
        double cx = 0.0, cy = 0.0;
        for (std::size_t i = 0; i < size(); ++i) {
            const Vec2 a = vertices_[i], b = vertices_[(i + 1) % size()];
            const double c = cross(a, b);
            cx += (a.x + b.x) * c;
            cy += (a.y + b.y) * c;
        }
        const double a6 = 6.0 * area();
        return {cx / a6, cy / a6};
    }

    /// Point inside or on the boundary, up to `slack` (absolute distance).
    bool contains(Vec2 q, double slack = 0.0) const {
        for (std::size_t i = 0; i < size(); ++i) {
            const Vec2 a = vertices_[i], b = vertices_[(i + 1) % size()];
            const Vec2 e = b - a;
            if (cross(e, q - a) / norm(e) < -slack) return false;
        }
        return true;
    }

    /// Smallest distance from the point to any edge line.
    double min_edge_line_distance(Vec2 q) const {
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < size(); ++i) {
            const Vec2 a = vertices_[i], b = vertices_[(i + 1) % size()];
            const Vec2 e = b - a;
            d = std::min(d, std::abs(cross(e, q - a)) / norm(e));
        }
        return d;
    }

    /// Invariance under x -> -x, checked by matching vertices within
    /// rel_tol * diameter.
    bool is_point_symmetric(double rel_tol = 1e-10) const {
        const double tol = rel_tol * diameter();
        for (const auto& v : vertices_) {
            const Vec2 m{-v.x, -v.y};
            bool found = false;
            for (const auto& w : vertices_)
                if (norm(w - m) <= tol) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
        return true;
    }

    ConvexPolygon scaled(double t) const {
        if (!(t > 0.0)) throw InvalidInput("scale factor must be positive");
        std::vector<Vec2> v = vertices_;
        for (auto& p : v) p = t * p;
        return from_vertices(std::move(v));
    }

    ConvexPolygon translated(Vec2 shift) const {
        std::vector<Vec2> v = vertices_;
        for (auto& p : v) p = p + shift;
        return from_vertices(std::move(v));
    }

private:
    explicit ConvexPolygon(std::vector<Vec2> v) : vertices_(std::move(v)) {}

    void validate() const {
        const double diam = diameter();
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (norm(vertices_[i] - vertices_[j]) <= 1e-12 * diam)
                    throw InvalidInput("polygon has repeated vertices " + std::to_string(i) +
                                       " and " + std::to_string(j));
        if (!(area() > 0.0)) throw InvalidInput("polygon is not counterclockwise (area <= 0)");
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = vertices_[(i + n - 1) % n], b = vertices_[i], c = vertices_[(i + 1) % n];
            if (!(cross(b - a, c - b) > 0.0))
                throw InvalidInput("polygon is not strictly convex at vertex " + std::to_string(i));
        }
    }

    std::vector<Vec2> vertices_;
};

inline ConvexPolygon regular_polygon(int n, double radius) {
    if (n < 3) throw InvalidInput("regular_polygon: n must be >= 3");
    if (!(radius > 0.0)) throw InvalidInput("regular_polygon: radius must be positive");
    std::vector<Vec2> v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double t = 2.0 * std::numbers::pi * j / n;
        v[static_cast<std::size_t>(j)] = {radius * std::cos(t), radius * std::sin(t)};
    }
    // Put exact antipodes in place so that even polygons are symmetric bit for bit.
    if (n % 2 == 0)
        for (int j = n / 2; j < n; ++j) {
            const Vec2 p = v[static_cast<std::size_t>(j - n / 2)];
            v[static_cast<std::size_t>(j)] = {-p.x, -p.y};
        }
    return ConvexPolygon::from_vertices(std::move(v));
}

/// Tangent polygon with n edges around the disk of the given radius; edge j
/// touches the circle at angle 2 pi j / n.
inline ConvexPolygon circumscribed_polygon(double radius, int n) {
    if (n < 3) throw InvalidInput("circumscribed_polygon: n must be >= 3");
    if (!(radius > 0.0)) throw InvalidInput("circumscribed_polygon: radius must be positive");
    const double rv = radius / std::cos(std::numbers::pi / n);
    std::vector<Vec2> v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double t = std::numbers::pi * (2 * j + 1) / n;
        v[static_cast<std::size_t>(j)] = {rv * std::cos(t), rv * std::sin(t)};
    }
    if (n % 2 == 0)
        for (int j = n / 2; j < n; ++j) {
            const Vec2 p = v[static_cast<std::size_t>(j - n / 2)];
            v[static_cast<std::size_t>(j)] = {-p.x, -p.y};
        }
    return ConvexPolygon::from_vertices(std::move(v));
}

/// Convex hull (Andrew's monotone chain), collinear boundary points dropped.
inline ConvexPolygon convex_hull_polygon(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(),
              [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw DegenerateInput("convex hull needs 3 non-collinear points");
    std::vector<Vec2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        const Vec2 p = pts[i];
        while (k >= t && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw DegenerateInput("convex hull: all points are collinear");
    return ConvexPolygon::from_vertices(std::move(hull));
}

/// Deterministic convex polygon with exactly `vertices` corners: the hull of
/// uniform samples in the unit disk, redrawn until it has the requested
/// vertex count. Uses SplitMix64 so that the result is the same on every
/// platform.
inline ConvexPolygon random_convex_polygon(int vertices, std::uint64_t seed) {
    if (vertices < 3) throw InvalidInput("random_convex_polygon: need >= 3 vertices");
    std::uint64_t state = seed;
    auto next = [&state] {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return static_cast<double>((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
    };
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<Vec2> pts;
        while (pts.size() < static_cast<std::size_t>(vertices)) {
            const double x = 2.0 * next() - 1.0, y = 2.0 * next() - 1.0;
            if (x * x + y * y < 1.0) pts.push_back({x, y});
        }
        try {
            auto hull = convex_hull_polygon(pts);
            if (hull.size() == static_cast<std::size_t>(vertices)) return hull;
        } catch (const InvalidInput&) {
        }
    }
    throw InvalidInput("random_convex_polygon: no sample with the requested vertex count");
}

/// Right cylinder cross_section x (0, length) with cross-section symmetric
/// under rotation by pi about the x3 axis.
class CylinderDomain {
public:
    static CylinderDomain make(ConvexPolygon cross_section, double length) {
        if (!(length > 0.0)) throw InvalidInput("cylinder length must be positive");
        if (!cross_section.is_point_symmetric(1e-10))
            throw InvalidInput("cylinder cross-section is not symmetric under rotation by pi");
        return CylinderDomain(std::move(cross_section), length);
    }
    const ConvexPolygon& cross_section() const noexcept { return section_; }
    double length() const noexcept { return length_; }

private:
    CylinderDomain(ConvexPolygon s, double l) : section_(std::move(s)), length_(l) {}
    ConvexPolygon section_;
    double length_;
};

using Triangle = std::array<std::size_t, 3>;

struct TriangleMesh {
    std::vector<Vec2> nodes;
    std::vector<Triangle> triangles;
    std::vector<bool> boundary;  // boundary[i] == node i lies on the boundary

    std::size_t num_nodes() const noexcept { return nodes.size(); }

    std::vector<std::size_t> boundary_nodes() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < boundary.size(); ++i)
            if (boundary[i]) out.push_back(i);
        return out;
    }

    double triangle_area(const Triangle& t) const {
        return 0.5 * cross(nodes[t[1]] - nodes[t[0]], nodes[t[2]] - nodes[t[0]]);
    }

    double area() const {
        double s = 0.0;
        for (const auto& t : triangles) s += triangle_area(t);
        return s;
    }

    double max_edge_length() const {
        double h = 0.0;
        for (const auto& t : triangles)
            for (int e = 0; e < 3; ++e) h = std::max(h, norm(nodes[t[(e + 1) % 3]] - nodes[t[e]]));
        return h;
    }

    /// Edges that belong to exactly one triangle, oriented as in that triangle.
    std::vector<std::pair<std::size_t, std::size_t>> boundary_edges() const {
        std::map<std::pair<std::size_t, std::size_t>, int> count;
        for (const auto& t : triangles)
            for (int e = 0; e < 3; ++e) {
                const std::size_t a = t[e], b = t[(e + 1) % 3];
                ++count[{std::min(a, b), std::max(a, b)}];
            }
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (const auto& t : triangles)
            for (int e = 0; e < 3; ++e) {
                const std::size_t a = t[e], b = t[(e + 1) % 3];
                if (count[{std::min(a, b), std::max(a, b)}] == 1) out.emplace_back(a, b);
            }
        return out;
    }

    /// Empty string when every mesh invariant holds, otherwise the first
    /// violated one.
    std::string check_invariants(double expected_area) const {
        for (std::size_t i = 0; i < triangles.size(); ++i)
            if (!(triangle_area(triangles[i]) > 0.0))
                return "triangle " + std::to_string(i) + " is not positively oriented";
        if (std::abs(area() - expected_area) > 1e-12 * std::abs(expected_area))
            return "triangle areas do not sum to the domain area";
        const auto edges = boundary_edges();
        if (edges.empty()) return "no boundary edges";
        std::map<std::size_t, std::size_t> next;
        for (const auto& [a, b] : edges) {
            if (next.count(a)) return "boundary node " + std::to_string(a) + " starts two edges";
            next[a] = b;
        }
        std::size_t cur = edges.front().first, steps = 0;
        do {
            auto it = next.find(cur);
            if (it == next.end()) return "boundary loop is open";
            cur = it->second;
            ++steps;
        } while (cur != edges.front().first && steps <= edges.size());
        if (steps != edges.size()) return "boundary edges do not form a single closed loop";
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (boundary[i] != (next.count(i) == 1))
                return "boundary flag of node " + std::to_string(i) + " disagrees with the edges";
        return {};
    }
};

namespace detail {

/// Reverse Cuthill-McKee renumbering; keeps the profile of the assembled
/// matrices narrow.
inline void renumber_rcm(TriangleMesh& mesh) {
    const std::size_t n = mesh.nodes.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& t : mesh.triangles)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                if (a != b) adj[t[a]].push_back(t[b]);
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    std::vector<std::size_t> order;
    order.reserve(n);
    std::vector<bool> seen(n, false);
    while (order.size() < n) {
        std::size_t start = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!seen[i] && (start == n || adj[i].size() < adj[start].size())) start = i;
        seen[start] = true;
        std::size_t head = order.size();
        order.push_back(start);
        while (head < order.size()) {
            const std::size_t u = order[head++];
            auto nb = adj[u];
            std::sort(nb.begin(), nb.end(), [&](std::size_t a, std::size_t b) {
                return adj[a].size() < adj[b].size() || (adj[a].size() == adj[b].size() && a < b);
            });
            for (std::size_t w : nb)
                if (!seen[w]) {
                    seen[w] = true;
                    order.push_back(w);
                }
        }
    }
    std::reverse(order.begin(), order.end());
    std::vector<std::size_t> new_index(n);
    for (std::size_t i = 0; i < n; ++i) new_index[order[i]] = i;
    TriangleMesh out;
    out.nodes.resize(n);
    out.boundary.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.nodes[new_index[i]] = mesh.nodes[i];
        out.boundary[new_index[i]] = mesh.boundary[i];
    }
    out.triangles = mesh.triangles;
    for (auto& t : out.triangles)
        for (auto& v : t) v = new_index[v];
    mesh = std::move(out);
}

}  // namespace detail

/// Fan triangulation from the area centroid followed by `refine` rounds of
/// uniform midpoint subdivision. Nodes are renumbered by reverse
/// Cuthill-McKee.
inline TriangleMesh triangulate(const ConvexPolygon& poly, int refine) {
    if (refine < 0) throw InvalidInput("triangulate: refine must be >= 0");
    TriangleMesh mesh;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) mesh.nodes.push_back(poly[i]);
    mesh.nodes.push_back(poly.centroid());
    for (std::size_t i = 0; i < n; ++i) mesh.triangles.push_back({n, i, (i + 1) % n});

    for (int r = 0; r < refine; ++r) {
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> mid;
        auto midpoint = [&](std::size_t a, std::size_t b) {
            const auto key = std::make_pair(std::min(a, b), std::max(a, b));
            auto it = mid.find(key);
            if (it != mid.end()) return it->second;
            const Vec2 pa = mesh.nodes[key.first], pb = mesh.nodes[key.second];
            mesh.nodes.push_back({0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)});
            mid.emplace(key, mesh.nodes.size() - 1);
            return mesh.nodes.size() - 1;
        };
        std::vector<Triangle> fine;
        fine.reserve(4 * mesh.triangles.size());
        for (const auto& t : mesh.triangles) {
            const std::size_t a = t[0], b = t[1], c = t[2];
            const std::size_t ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
            fine.push_back({a, ab, ca});
            fine.push_back({ab, b, bc});
            fine.push_back({ca, bc, c});
            fine.push_back({ab, bc, ca});
        }
        mesh.triangles = std::move(fine);
    }
    mesh.boundary.assign(mesh.nodes.size(), false);
    for (const auto& [a, b] : mesh.boundary_edges()) {
        mesh.boundary[a] = true;
        mesh.boundary[b] = true;
    }
    detail::renumber_rcm(mesh);
    return mesh;
}

/// Node-wise scaling about the origin.
inline TriangleMesh scaled(TriangleMesh mesh, double t) {
    for (auto& p : mesh.nodes) p = t * p;
    return mesh;
}

}  // namespace maglap
