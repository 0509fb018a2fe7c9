#include "lorentz/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lorentz {

namespace {

struct Hit {
    double t;
    LiftedDisk disk;
};

// Earliest hit among the disks of row q while the ray is inside the band
// |y - q| <= r, restricted to times in [t_lo, t_hi]. Disks of one row are
// disjoint and collinear, so along the direction of motion the first disk
// that is hit at all is hit first.
std::optional<Hit> scan_band(const BilliardTable& table, Vec2 o, Vec2 v, std::int64_t q, double t_lo, double t_hi,
                             double horizon) {
    const double r = table.r();
    const int n = table.n();
    const double xa = o.x + v.x * t_lo;
    const double xb = o.x + v.x * t_hi;
    const auto j0 = static_cast<std::int64_t>(std::floor((std::min(xa, xb) - r) * n));
    const auto j1 = static_cast<std::int64_t>(std::ceil((std::max(xa, xb) + r) * n));
    const auto try_column = [&](std::int64_t j) -> std::optional<Hit> {
        const Vec2 c{static_cast<double>(j) / n, static_cast<double>(q)};
        if (auto t = ray_disk_first_hit(o, v, c, r); t && *t <= horizon) {
            return Hit{*t, table.disk_at_column(j, q)};
        }
        return std::nullopt;
    };
    if (v.x >= 0.0) {
        for (std::int64_t j = j0; j <= j1; ++j) {
            if (auto h = try_column(j)) return h;
        }
    } else {
        for (std::int64_t j = j1; j >= j0; --j) {
            if (auto h = try_column(j)) return h;
        }
    }
    return std::nullopt;
}

std::optional<Hit> first_hit(const BilliardTable& table, Vec2 o, Vec2 v, double horizon) {
    const double r = table.r();
    if (v.y == 0.0) {
        const auto q = static_cast<std::int64_t>(std::llround(o.y));
        if (std::abs(o.y - static_cast<double>(q)) > r) return std::nullopt;
        return scan_band(table, o, v, q, 0.0, horizon, horizon);
    }
    if (v.y > 0.0) {
        for (auto q = static_cast<std::int64_t>(std::ceil(o.y - r));; ++q) {
            const double t_lo = std::max(0.0, (static_cast<double>(q) - r - o.y) / v.y);
            if (t_lo > horizon) break;
            const double t_hi = std::min(horizon, (static_cast<double>(q) + r - o.y) / v.y);
            if (auto h = scan_band(table, o, v, q, t_lo, t_hi, horizon)) return h;
        }
    } else {
        for (auto q = static_cast<std::int64_t>(std::floor(o.y + r));; --q) {
            const double t_lo = std::max(0.0, (static_cast<double>(q) + r - o.y) / v.y);
            if (t_lo > horizon) break;
            const double t_hi = std::min(horizon, (static_cast<double>(q) - r - o.y) / v.y);
            if (auto h = scan_band(table, o, v, q, t_lo, t_hi, horizon)) return h;
        }
    }
    return std::nullopt;
}

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

}  // namespace

std::optional<CollisionEvent> next_collision(const BilliardTable& table, const PhasePoint& p, double horizon) {
    if (!(horizon > 0.0)) throw std::invalid_argument("collision search horizon must be positive");
    const auto hit = first_hit(table, p.position, p.velocity, horizon);
    if (!hit) return std::nullopt;
    const Vec2 c = table.center(hit->disk);
    const Vec2 normal = (p.position + hit->t * p.velocity - c).normalized();
    CollisionEvent ev;
    ev.time = p.time + hit->t;
    ev.disk = hit->disk;
    ev.point = c + table.r() * normal;
    ev.cos_phi = std::abs(p.velocity.dot(normal));
    return ev;
}

WallCrossings wall_crossings(Vec2 from, Vec2 to, const BilliardTable& table) {
    WallCrossings out;
    out.touches_wall = near_integer(from.x) || near_integer(from.y) || near_integer(to.x) || near_integer(to.y);
    const Vec2 d = to - from;
    struct Entry {
        double s;
        Letter letter;
    };
    std::vector<Entry> entries;

    const auto fx0 = static_cast<std::int64_t>(std::floor(from.x));
    const auto fx1 = static_cast<std::int64_t>(std::floor(to.x));
    if (fx1 != fx0) {
        const int sign = fx1 > fx0 ? 1 : -1;
        for (std::int64_t k = 0; k < std::abs(fx1 - fx0); ++k) {
            const double c = static_cast<double>(sign > 0 ? fx0 + 1 + k : fx0 - k);
            entries.push_back({(c - from.x) / d.x, Letter::a(sign)});
        }
    }
    const auto fy0 = static_cast<std::int64_t>(std::floor(from.y));
    const auto fy1 = static_cast<std::int64_t>(std::floor(to.y));
    if (fy1 != fy0) {
        const int sign = fy1 > fy0 ? 1 : -1;
        const int n = table.n();
        for (std::int64_t k = 0; k < std::abs(fy1 - fy0); ++k) {
            const double c = static_cast<double>(sign > 0 ? fy0 + 1 + k : fy0 - k);
            const double s = (c - from.y) / d.y;
            const double xc = from.x + s * d.x;
            const double frac = xc - std::floor(xc);
            const int index = std::clamp(static_cast<int>(std::floor(frac * n)) + 1, 1, n);
            entries.push_back({s, Letter::b(index, sign)});
        }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.s < b.s; });
    out.letters.reserve(entries.size());
    out.params.reserve(entries.size());
    for (const auto& e : entries) {
        out.letters.push_back(e.letter);
        out.params.push_back(std::clamp(e.s, 0.0, 1.0));
    }
    return out;
}

namespace {

void record_flight(const BilliardTable& table, TrajectorySegment& seg, Vec2 from, Vec2 to, double t_from) {
    const Vec2 d = to - from;
    seg.abs_dx += std::abs(d.x);
    seg.abs_dy += std::abs(d.y);
    const double len = d.norm();
    WallCrossings wc = wall_crossings(from, to, table);
    seg.touches_wall = seg.touches_wall || wc.touches_wall;
    for (std::size_t i = 0; i < wc.letters.size(); ++i) {
        seg.crossings.push_back(wc.letters[i]);
        seg.crossing_times.push_back(t_from + wc.params[i] * len);
    }
}

}  // namespace

TrajectorySegment simulate(const BilliardTable& table, const PhasePoint& p0, StopRule stop, double horizon) {
    TrajectorySegment seg;
    seg.initial = p0;
    PhasePoint cur = p0;
    const double t_end = p0.time + (stop.kind == StopRule::Kind::Time ? stop.time : 0.0);
    if (stop.kind == StopRule::Kind::Time && stop.time < 0.0) {
        throw std::invalid_argument("simulate needs a non-negative duration");
    }
    while (true) {
        double search = horizon;
        if (stop.kind == StopRule::Kind::Time) {
            const double remaining = t_end - cur.time;
            if (remaining <= 0.0) break;
            search = remaining;
        } else if (seg.collisions.size() >= stop.collisions) {
            break;
        }
        const auto ev = next_collision(table, cur, search);
        if (!ev) {
            if (stop.kind == StopRule::Kind::Time) {
                const Vec2 to = cur.position + (t_end - cur.time) * cur.velocity;
                if (t_end - cur.time >= kDefaultHorizon) seg.corridor_trapped = true;
                record_flight(table, seg, cur.position, to, cur.time);
                cur.position = to;
                cur.time = t_end;
            } else {
                const Vec2 to = cur.position + search * cur.velocity;
                record_flight(table, seg, cur.position, to, cur.time);
                cur.position = to;
                cur.time += search;
                seg.corridor_trapped = true;
            }
            break;
        }
        record_flight(table, seg, cur.position, ev->point, cur.time);
        if (ev->time - cur.time >= kDefaultHorizon) seg.corridor_trapped = true;
        const Vec2 normal = (ev->point - table.center(ev->disk)).normalized();
        cur.position = ev->point;
        cur.time = ev->time;
        try {
            cur.velocity = reflect(cur.velocity, normal);
        } catch (const GrazingCollision&) {
            seg.degenerate = true;
            seg.collisions.push_back(*ev);
            break;
        }
        seg.collisions.push_back(*ev);
    }
    if (stop.kind == StopRule::Kind::Time && !seg.degenerate) cur.time = t_end;
    seg.final = cur;
    seg.duration = cur.time - p0.time;
    return seg;
}

PhasePoint reversed(const PhasePoint& p) { return {p.position, -p.velocity, p.time}; }

PhasePoint sample_liouville(const BilliardTable& table, Rng& rng) {
    PhasePoint p;
    do {
        p.position = {rng.uniform(), rng.uniform()};
    } while (table.inside_obstacle(p.position));
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    p.velocity = unit_from_angle(theta);
    return p;
}

Vec2 boundary_point(const BilliardTable& table, const BoundaryState& s) {
    return table.center(s.disk) + table.r() * unit_from_angle(s.psi);
}

std::optional<BoundaryState> collision_map(const BilliardTable& table, const BoundaryState& s, double horizon) {
    const Vec2 normal = unit_from_angle(s.psi);
    if (s.velocity.dot(normal) <= 0.0) {
        throw std::invalid_argument("collision_map expects an outgoing velocity");
    }
    const PhasePoint p{boundary_point(table, s), s.velocity, 0.0};
    const auto ev = next_collision(table, p, horizon);
    if (!ev) return std::nullopt;
    const Vec2 c = table.center(ev->disk);
    const Vec2 m = (ev->point - c).normalized();
    BoundaryState next;
    next.disk = ev->disk;
    next.psi = std::atan2(m.y, m.x);
    next.velocity = reflect(s.velocity, m);
    return next;
}

BoundaryState time_reversed(const BilliardTable& /*table*/, const BoundaryState& s) {
    const Vec2 m = unit_from_angle(s.psi);
    const Vec2 incoming = s.velocity - 2.0 * s.velocity.dot(m) * m;
    return {s.disk, s.psi, -incoming};
}

LyapunovEstimate lyapunov_accumulate(const BilliardTable& table, FrontState initial, const TrajectorySegment& seg) {
    if (initial.kappa < 0.0) throw std::invalid_argument("front curvature must be non-negative");
    LyapunovEstimate est;
    FrontState front = initial;
    double t = seg.initial.time;
    const auto fly = [&](double tau) {
        const double dilation = 1.0 + tau * front.kappa;
        front.log_expansion += std::log(dilation);
        front.kappa /= dilation;
    };
    for (const auto& ev : seg.collisions) {
        fly(ev.time - t);
        t = ev.time;
        front.kappa += 2.0 / (table.r() * ev.cos_phi);
        ++est.collisions;
    }
    if (!seg.degenerate) fly(seg.final.time - t);
    est.total_time = seg.final.time - seg.initial.time;
    est.final_front = front;
    est.degenerate = seg.degenerate;
    est.lambda = est.total_time > 0.0 ? (front.log_expansion - initial.log_expansion) / est.total_time : 0.0;
    return est;
}

}  // namespace lorentz
