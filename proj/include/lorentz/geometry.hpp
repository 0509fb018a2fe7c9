#pragma once
/**
 * @file geometry.hpp
 * @brief Planar geometry of the lifted table Q_n: scatterer lifts, ray/disk
 * intersection, specular reflection and the stadium (capsule) tests.
 *
 * Everything lives in the universal cover plane of the torus. A lifted disk
 * is addressed by its base index and an integer lattice cell, so positions
 * never get wrapped modulo 1.
 */

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lorentz {

/// Collisions with |cos phi| below this are treated as grazing.
inline constexpr double kGrazingTolerance = 1e-9;
/// Slack on the strict inequality of the stadium test; tangency is not a hit.
inline constexpr double kHullTolerance = 1e-12;

struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double X, double Y) : x(X), y(Y) {}

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    /// z-component of the 3D cross product.
    constexpr double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }

    /// Unit vector in the same direction; throws on a (near) zero vector.
    Vec2 normalized() const;

    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

/// Points and directions share the representation; directions are kept unit.
using PlanarPoint = Vec2;
using UnitVector = Vec2;

inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Error raised for a reflection whose incidence is within the grazing tolerance.
class GrazingCollision : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Error raised when a flow state sits inside an obstacle.
class InsideObstacle : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A lift of scatterer D_{disk_id} into cell (p, q) of the cover plane.
struct LiftedDisk {
    int disk_id{0};
    std::int64_t p{0};
    std::int64_t q{0};

    LiftedDisk translated(std::int64_t dp, std::int64_t dq) const { return {disk_id, p + dp, q + dq}; }

    friend auto operator<=>(const LiftedDisk&, const LiftedDisk&) = default;
};

/**
 * The table Q_n = T^2 minus n disks of radius r centred at (i/n, 0).
 *
 * Construction enforces 0 < r < 1/(2n): the disks are pairwise disjoint and
 * every horizontal wall segment b_i is non-empty.
 */
class BilliardTable {
public:
    BilliardTable(int n, double r);

    int n() const { return n_; }
    double r() const { return r_; }

    /// Centre of D_i in the base cell.
    Vec2 base_center(int i) const;

    /// Centre of a lifted disk; throws std::out_of_range on a bad disk_id.
    Vec2 center(const LiftedDisk& d) const;

    /// The disk whose centre sits at column j of row q, i.e. at (j/n, q).
    LiftedDisk disk_at_column(std::int64_t column, std::int64_t row) const;
    /// Inverse of disk_at_column: the global column j = p*n + disk_id.
    std::int64_t column_of(const LiftedDisk& d) const { return d.p * n_ + d.disk_id; }

    /// Every lifted disk whose centre lies in the closed box, ordered by row then column.
    std::vector<LiftedDisk> disks_with_centers_in(double xmin, double xmax, double ymin, double ymax) const;

    /// Lifted disk containing the point in its closed interior (within tol), if any.
    std::optional<LiftedDisk> disk_containing(Vec2 point, double tol = 1e-9) const;

    /// True when the point is strictly inside some lifted disk (by more than tol).
    bool inside_obstacle(Vec2 point, double tol = 0.0) const;

private:
    int n_;
    double r_;
};

Vec2 lifted_center(const BilliardTable& table, const LiftedDisk& d);

/**
 * Smallest t > 0 with |origin + t dir - center| = r, or nullopt if the ray
 * misses or points away. The origin may sit on the circle (just after a
 * reflection); an origin clearly inside the disk throws InsideObstacle.
 */
std::optional<double> ray_disk_first_hit(Vec2 origin, Vec2 dir, Vec2 center, double r);

/// Specular reflection v - 2 (v.n) n. Requires v.n < 0; throws GrazingCollision
/// when |v.n| < kGrazingTolerance.
Vec2 reflect(Vec2 v, Vec2 normal);

double point_segment_distance(Vec2 point, Vec2 a, Vec2 b);

/// Whether a radius-r disk at other_center meets the stadium (convex hull of
/// the two radius-r disks at c1, c2). Tangency counts as not meeting.
bool disk_meets_stadium(Vec2 other_center, Vec2 c1, Vec2 c2, double r);

std::string to_string(const LiftedDisk& d);

}  // namespace lorentz

template <>
struct std::hash<lorentz::LiftedDisk> {
    std::size_t operator()(const lorentz::LiftedDisk& d) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(d.disk_id) * 0x9E3779B97F4A7C15ULL;
        h ^= static_cast<std::uint64_t>(d.p) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        h ^= static_cast<std::uint64_t>(d.q) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};
