#pragma once

// Planar geometry used by the cell, human and sensing code. All lengths in meters.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace hazardforge {

inline constexpr double kGeomEps = 1e-9;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend constexpr Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

struct Segment {
    Vec2 a;
    Vec2 b;

    double length() const { return distance(a, b); }
    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Thrown when a geometric value violates its declared invariant.
class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Simple counter-clockwise polygon. The constructor validates and, if the
/// input is clockwise, reverses it.
class Polygon {
public:
    Polygon() = default;
    explicit Polygon(std::vector<Vec2> vertices);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    Segment edge(std::size_t i) const { return {vertices_[i], vertices_[(i + 1) % vertices_.size()]}; }
    std::vector<Segment> edges() const;
    double signed_area() const;

    friend bool operator==(const Polygon&, const Polygon&) = default;

private:
    std::vector<Vec2> vertices_;
};

/// Piecewise linear path with precomputed arc lengths.
class Polyline {
public:
    Polyline() = default;
    Polyline(std::vector<Vec2> vertices, bool closed);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    bool closed() const { return closed_; }
    double length() const { return cumulative_.back(); }
    /// cumulative_lengths()[i] is the arc length at vertex i; for closed paths a
    /// final entry holds the length back to vertex 0.
    const std::vector<double>& cumulative_lengths() const { return cumulative_; }
    std::size_t segment_count() const { return cumulative_.size() - 1; }
    Segment segment(std::size_t i) const;

    friend bool operator==(const Polyline& a, const Polyline& b) {
        return a.closed_ == b.closed_ && a.vertices_ == b.vertices_;
    }

private:
    std::vector<Vec2> vertices_;
    std::vector<double> cumulative_;
    bool closed_ = false;
};

bool point_in_polygon(Vec2 p, const Polygon& poly);
bool segments_intersect(const Segment& s1, const Segment& s2);
double distance_point_segment(Vec2 p, const Segment& s);
/// Distance from p to the polygon boundary (0 on the boundary, positive both inside and out).
double distance_point_polygon_boundary(Vec2 p, const Polygon& poly);
/// Closed paths wrap u modulo 1; open paths clamp it to [0,1].
Vec2 polyline_point_at(const Polyline& path, double u);

/// Moves a disc from `from` toward `to` and stops at first contact with any obstacle.
/// Throws GeometryError when the disc already penetrates an obstacle at `from`.
Vec2 clip_disc_motion(Vec2 from, Vec2 to, double radius, std::span<const Segment> obstacles);

bool segment_hits_any(const Segment& s, std::span<const Segment> obstacles);

}  // namespace hazardforge
