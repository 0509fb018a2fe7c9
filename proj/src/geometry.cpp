#include "lorentz/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace lorentz {

Vec2 Vec2::normalized() const {
    const double len = norm();
    if (!(len > 1e-300)) {
        throw std::domain_error("cannot normalize a zero vector");
    }
    return {x / len, y / len};
}

BilliardTable::BilliardTable(int n, double r) : n_(n), r_(r) {
    if (n < 1) {
        throw std::invalid_argument("table needs n >= 1 scatterers, got n=" + std::to_string(n));
    }
    if (!(r > 0.0) || !(r < 1.0 / (2.0 * n))) {
        std::ostringstream os;
        os << "disk radius must satisfy 0 < r < 1/(2n) = " << 1.0 / (2.0 * n) << ", got r=" << r;
        throw std::invalid_argument(os.str());
    }
}

Vec2 BilliardTable::base_center(int i) const {
    if (i < 0 || i >= n_) {
        throw std::out_of_range("disk index " + std::to_string(i) + " outside [0, " + std::to_string(n_) + ")");
    }
    return {static_cast<double>(i) / n_, 0.0};
}

Vec2 BilliardTable::center(const LiftedDisk& d) const {
    if (d.disk_id < 0 || d.disk_id >= n_) {
        throw std::out_of_range("disk index " + std::to_string(d.disk_id) + " outside [0, " + std::to_string(n_) +
                                ")");
    }
    // j/n with integer j keeps the abscissa exact for every lift of the same column.
    const double column = static_cast<double>(d.p * n_ + d.disk_id);
    return {column / n_, static_cast<double>(d.q)};
}

LiftedDisk BilliardTable::disk_at_column(std::int64_t column, std::int64_t row) const {
    std::int64_t p = column / n_;
    std::int64_t id = column % n_;
    if (id < 0) {
        id += n_;
        --p;
    }
    return {static_cast<int>(id), p, row};
}

std::vector<LiftedDisk> BilliardTable::disks_with_centers_in(double xmin, double xmax, double ymin,
                                                             double ymax) const {
    std::vector<LiftedDisk> out;
    if (xmin > xmax || ymin > ymax) return out;
    const auto q0 = static_cast<std::int64_t>(std::ceil(ymin));
    const auto q1 = static_cast<std::int64_t>(std::floor(ymax));
    const auto j0 = static_cast<std::int64_t>(std::ceil(xmin * n_)) - 1;
    const auto j1 = static_cast<std::int64_t>(std::floor(xmax * n_)) + 1;
    for (std::int64_t q = q0; q <= q1; ++q) {
        for (std::int64_t j = j0; j <= j1; ++j) {
            const double x = static_cast<double>(j) / n_;
            if (x < xmin || x > xmax) continue;
            out.push_back(disk_at_column(j, q));
        }
    }
    return out;
}

std::optional<LiftedDisk> BilliardTable::disk_containing(Vec2 point, double tol) const {
    const auto q = static_cast<std::int64_t>(std::llround(point.y));
    const auto j = static_cast<std::int64_t>(std::llround(point.x * n_));
    const LiftedDisk d = disk_at_column(j, q);
    if ((point - center(d)).norm() <= r_ + tol) return d;
    return std::nullopt;
}

bool BilliardTable::inside_obstacle(Vec2 point, double tol) const {
    const auto q = static_cast<std::int64_t>(std::llround(point.y));
    const auto j = static_cast<std::int64_t>(std::llround(point.x * n_));
    return (point - center(disk_at_column(j, q))).norm() < r_ - tol;
}

Vec2 lifted_center(const BilliardTable& table, const LiftedDisk& d) { return table.center(d); }

std::optional<double> ray_disk_first_hit(Vec2 origin, Vec2 dir, Vec2 center, double r) {
    const Vec2 oc = origin - center;
    const double c = oc.norm2() - r * r;
    if (c < -1e-9 * r * r) {
        throw InsideObstacle("ray origin lies inside the disk");
    }
    const double b = oc.dot(dir);
    if (b >= 0.0) return std::nullopt;  // moving away from (or tangent to) the centre
    const double disc = b * b - c;
    if (disc < 0.0) return std::nullopt;
    // c / (-b + sqrt(disc)) equals -b - sqrt(disc) without the cancellation.
    const double t = std::max(c, 0.0) / (-b + std::sqrt(disc));
    return t;
}

Vec2 reflect(Vec2 v, Vec2 normal) {
    const double vn = v.dot(normal);
    if (std::abs(vn) < kGrazingTolerance) {
        throw GrazingCollision("grazing collision, |cos phi| below tolerance");
    }
    if (vn > 0.0) {
        throw std::invalid_argument("reflect expects an incoming velocity (v . n < 0)");
    }
    const Vec2 out = v - 2.0 * vn * normal;
    return out * (1.0 / out.norm());
}

double point_segment_distance(Vec2 point, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = ab.norm2();
    if (len2 == 0.0) return (point - a).norm();
    const double t = std::clamp((point - a).dot(ab) / len2, 0.0, 1.0);
    return (point - (a + t * ab)).norm();
}

bool disk_meets_stadium(Vec2 other_center, Vec2 c1, Vec2 c2, double r) {
    return point_segment_distance(other_center, c1, c2) < 2.0 * r - kHullTolerance;
}

std::string to_string(const LiftedDisk& d) {
    std::ostringstream os;
    os << "(" << d.disk_id << ",(" << d.p << "," << d.q << "))";
    return os.str();
}

}  // namespace lorentz
