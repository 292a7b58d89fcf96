#include "hazardforge/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace hazardforge {

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
    const double v = cross(b - a, c - a);
    const double scale = std::max({1.0, norm(b - a), norm(c - a)});
    if (v > kGeomEps * scale) {
        return 1;
    }
    if (v < -kGeomEps * scale) {
        return -1;
    }
    return 0;
}

bool within_box(Vec2 p, const Segment& s) {
    return p.x <= std::max(s.a.x, s.b.x) + kGeomEps && p.x >= std::min(s.a.x, s.b.x) - kGeomEps &&
           p.y <= std::max(s.a.y, s.b.y) + kGeomEps && p.y >= std::min(s.a.y, s.b.y) - kGeomEps;
}

double segment_segment_distance(const Segment& s1, const Segment& s2) {
    if (segments_intersect(s1, s2)) {
        return 0.0;
    }
    return std::min({distance_point_segment(s1.a, s2), distance_point_segment(s1.b, s2),
                     distance_point_segment(s2.a, s1), distance_point_segment(s2.b, s1)});
}

// Largest t in [0,1] such that the disc centred on from + t*(to-from) keeps at
// least `clearance` from the obstacle. The distance along the motion is convex in t.
double free_fraction(Vec2 from, Vec2 to, double clearance, const Segment& obstacle) {
    const Segment motion{from, to};
    if (segment_segment_distance(motion, obstacle) >= clearance) {
        return 1.0;
    }
    const auto f = [&](double t) { return distance_point_segment(from + t * (to - from), obstacle); };

    // Golden-section search for the minimiser of the convex distance profile.
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = 0.0;
    double hi = 1.0;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < 90; ++i) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
        }
    }
    const double witness = 0.5 * (lo + hi);
    if (f(witness) >= clearance) {
        return 1.0;  // grazing contact below search resolution
    }
    double safe = 0.0;
    double hit = witness;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (safe + hit);
        if (f(mid) >= clearance) {
            safe = mid;
        } else {
            hit = mid;
        }
    }
    return safe;
}

}  // namespace

Polygon::Polygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) {
        throw GeometryError("polygon needs at least 3 vertices");
    }
    for (const auto& v : vertices_) {
        if (!is_finite(v)) {
            throw GeometryError("polygon vertex is not finite");
        }
    }
    const auto n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) {
                continue;
            }
            if (segments_intersect(edge(i), edge(j))) {
                throw GeometryError("polygon is not simple");
            }
        }
    }
    const double area = signed_area();
    if (std::abs(area) <= kGeomEps) {
        throw GeometryError("polygon has zero area");
    }
    if (area < 0.0) {
        std::reverse(vertices_.begin(), vertices_.end());
    }
}

std::vector<Segment> Polygon::edges() const {
    std::vector<Segment> out;
    out.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        out.push_back(edge(i));
    }
    return out;
}

double Polygon::signed_area() const {
    double twice = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        twice += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
    }
    return 0.5 * twice;
}

Polyline::Polyline(std::vector<Vec2> vertices, bool closed) : vertices_(std::move(vertices)), closed_(closed) {
    if (vertices_.size() < 2) {
        throw GeometryError("polyline needs at least 2 vertices");
    }
    cumulative_.reserve(vertices_.size() + 1);
    cumulative_.push_back(0.0);
    const std::size_t segs = closed_ ? vertices_.size() : vertices_.size() - 1;
    for (std::size_t i = 0; i < segs; ++i) {
        const Vec2 a = vertices_[i];
        const Vec2 b = vertices_[(i + 1) % vertices_.size()];
        if (!is_finite(a) || !is_finite(b)) {
            throw GeometryError("polyline vertex is not finite");
        }
        const double len = distance(a, b);
        if (len <= kGeomEps) {
            throw GeometryError("polyline has a zero-length segment at vertex " + std::to_string(i));
        }
        cumulative_.push_back(cumulative_.back() + len);
    }
}

Segment Polyline::segment(std::size_t i) const {
    return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
}

bool point_in_polygon(Vec2 p, const Polygon& poly) {
    if (distance_point_polygon_boundary(p, poly) <= kGeomEps) {
        return true;
    }
    bool inside = false;
    const auto& v = poly.vertices();
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        if ((v[i].y > p.y) != (v[j].y > p.y)) {
            const double x_cross = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
            if (p.x < x_cross) {
                inside = !inside;
            }
        }
    }
    return inside;
}

bool segments_intersect(const Segment& s1, const Segment& s2) {
    const int o1 = orientation(s1.a, s1.b, s2.a);
    const int o2 = orientation(s1.a, s1.b, s2.b);
    const int o3 = orientation(s2.a, s2.b, s1.a);
    const int o4 = orientation(s2.a, s2.b, s1.b);
    if (o1 * o2 < 0 && o3 * o4 < 0) {
        return true;
    }
    return (o1 == 0 && within_box(s2.a, s1)) || (o2 == 0 && within_box(s2.b, s1)) ||
           (o3 == 0 && within_box(s1.a, s2)) || (o4 == 0 && within_box(s1.b, s2));
}

double distance_point_segment(Vec2 p, const Segment& s) {
    const Vec2 d = s.b - s.a;
    const double len2 = dot(d, d);
    if (len2 <= 0.0) {
        return distance(p, s.a);
    }
    const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
    return distance(p, s.a + t * d);
}

double distance_point_polygon_boundary(Vec2 p, const Polygon& poly) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        best = std::min(best, distance_point_segment(p, poly.edge(i)));
    }
    return best;
}

Vec2 polyline_point_at(const Polyline& path, double u) {
    if (path.closed()) {
        u -= std::floor(u);
        if (u >= 1.0) {
            u = 0.0;
        }
    } else {
        u = std::clamp(u, 0.0, 1.0);
    }
    const auto& cum = path.cumulative_lengths();
    const double s = u * path.length();
    auto it = std::upper_bound(cum.begin(), cum.end(), s);
    std::size_t seg = it == cum.begin() ? 0 : static_cast<std::size_t>(it - cum.begin()) - 1;
    seg = std::min(seg, path.segment_count() - 1);
    const Segment piece = path.segment(seg);
    const double seg_len = cum[seg + 1] - cum[seg];
    const double local = std::clamp((s - cum[seg]) / seg_len, 0.0, 1.0);
    return piece.a + local * (piece.b - piece.a);
}

Vec2 clip_disc_motion(Vec2 from, Vec2 to, double radius, std::span<const Segment> obstacles) {
    if (!(radius > 0.0)) {
        throw GeometryError("disc radius must be positive");
    }
    double t = 1.0;
    for (const auto& obstacle : obstacles) {
        const double start_gap = distance_point_segment(from, obstacle);
        if (start_gap < radius - kGeomEps) {
            throw GeometryError("disc starts inside an obstacle");
        }
        t = std::min(t, free_fraction(from, to, std::min(radius, start_gap), obstacle));
        if (t <= 0.0) {
            return from;
        }
    }
    if (t >= 1.0) {
        return to;
    }
    return from + t * (to - from);
}

bool segment_hits_any(const Segment& s, std::span<const Segment> obstacles) {
    return std::any_of(obstacles.begin(), obstacles.end(),
                       [&](const Segment& o) { return segments_intersect(s, o); });
}

}  // namespace hazardforge
