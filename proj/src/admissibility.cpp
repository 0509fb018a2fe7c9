#include "lorentz/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "lorentz/flow.hpp"

namespace lorentz {

bool AdmissibilityCertificate::admissible() const {
    return std::all_of(pair_ok.begin(), pair_ok.end(), [](bool b) { return b; }) &&
           std::all_of(triple_ok.begin(), triple_ok.end(), [](bool b) { return b; });
}

std::string AdmissibilityCertificate::first_failure() const {
    for (std::size_t i = 0; i < pair_ok.size(); ++i) {
        if (!pair_ok[i]) return "pair " + std::to_string(i);
    }
    for (std::size_t i = 0; i < triple_ok.size(); ++i) {
        if (!triple_ok[i]) return "triple " + std::to_string(i);
    }
    return {};
}

bool check_pair(const BilliardTable& table, const LiftedDisk& d1, const LiftedDisk& d2) {
    if (d1 == d2) return false;
    const double r = table.r();
    const double reach = 2.0 * r;
    const Vec2 c1 = table.center(d1);
    const Vec2 c2 = table.center(d2);
    const double dy = c2.y - c1.y;
    const auto q0 = static_cast<std::int64_t>(std::ceil(std::min(c1.y, c2.y) - reach));
    const auto q1 = static_cast<std::int64_t>(std::floor(std::max(c1.y, c2.y) + reach));
    for (std::int64_t q = q0; q <= q1; ++q) {
        // Part of the segment within 2r of row q, widened by 2r sideways.
        double s_lo = 0.0;
        double s_hi = 1.0;
        if (dy != 0.0) {
            const double sa = (static_cast<double>(q) - reach - c1.y) / dy;
            const double sb = (static_cast<double>(q) + reach - c1.y) / dy;
            s_lo = std::max(0.0, std::min(sa, sb));
            s_hi = std::min(1.0, std::max(sa, sb));
            if (s_lo > s_hi) continue;
        }
        const double xa = c1.x + s_lo * (c2.x - c1.x);
        const double xb = c1.x + s_hi * (c2.x - c1.x);
        const auto j0 = static_cast<std::int64_t>(std::floor((std::min(xa, xb) - reach) * table.n()));
        const auto j1 = static_cast<std::int64_t>(std::ceil((std::max(xa, xb) + reach) * table.n()));
        for (std::int64_t j = j0; j <= j1; ++j) {
            const LiftedDisk d = table.disk_at_column(j, q);
            if (d == d1 || d == d2) continue;
            if (disk_meets_stadium(table.center(d), c1, c2, r)) return false;
        }
    }
    return true;
}

bool check_triple(const BilliardTable& table, const LiftedDisk& prev, const LiftedDisk& mid, const LiftedDisk& next) {
    return !disk_meets_stadium(table.center(mid), table.center(prev), table.center(next), table.r());
}

AdmissibleSequence check_sequence(const BilliardTable& table, const std::vector<LiftedDisk>& disks) {
    if (disks.size() < 2) throw std::invalid_argument("an admissible sequence needs at least two disks");
    AdmissibleSequence out;
    out.disks = disks;
    for (std::size_t i = 0; i + 1 < disks.size(); ++i) out.certificate.pair_ok.push_back(check_pair(table, disks[i], disks[i + 1]));
    for (std::size_t i = 0; i + 2 < disks.size(); ++i) {
        out.certificate.triple_ok.push_back(check_triple(table, disks[i], disks[i + 1], disks[i + 2]));
    }
    return out;
}

AdmissibleSequence check_cyclic_sequence(const BilliardTable& table, const std::vector<LiftedDisk>& period,
                                         std::int64_t a, std::int64_t b) {
    if (period.empty()) throw std::invalid_argument("a periodic itinerary needs at least one disk");
    const auto P = static_cast<std::int64_t>(period.size());
    // sigma_{i + P} = sigma_i + (a, b) for every integer i.
    const auto at = [&](std::int64_t i) {
        const std::int64_t k = i >= 0 ? i / P : -((-i + P - 1) / P);
        return period[static_cast<std::size_t>(i - k * P)].translated(k * a, k * b);
    };
    AdmissibleSequence out;
    out.disks = period;
    for (std::int64_t i = 0; i < P; ++i) {
        out.certificate.pair_ok.push_back(check_pair(table, at(i), at(i + 1)));
        out.certificate.triple_ok.push_back(check_triple(table, at(i - 1), at(i), at(i + 1)));
    }
    return out;
}

std::vector<LiftedDisk> disks_near(const BilliardTable& table, const LiftedDisk& d, double radius) {
    const Vec2 c = table.center(d);
    std::vector<LiftedDisk> out;
    for (const auto& e : table.disks_with_centers_in(c.x - radius, c.x + radius, c.y - radius, c.y + radius)) {
        if (e == d) continue;
        if ((table.center(e) - c).norm() <= radius) out.push_back(e);
    }
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> cell_path(std::span<const Letter> word) {
    std::vector<std::pair<std::int64_t, std::int64_t>> cells{{0, 0}};
    for (const Letter& l : word) {
        auto [x, y] = cells.back();
        if (l.kind == Letter::Kind::A) {
            x += l.sign;
        } else {
            y += l.sign;
        }
        cells.emplace_back(x, y);
    }
    return cells;
}

std::vector<LiftedDisk> cell_disks(const BilliardTable& table, std::int64_t cx, std::int64_t cy) {
    std::vector<LiftedDisk> out;
    for (std::int64_t row = cy; row <= cy + 1; ++row) {
        for (std::int64_t j = cx * table.n(); j <= (cx + 1) * table.n(); ++j) out.push_back(table.disk_at_column(j, row));
    }
    return out;
}

namespace {

std::optional<Vec2> bisector_bounce(Vec2 c, Vec2 toward_prev, Vec2 toward_next, double r) {
    const Vec2 u1 = (toward_prev - c).normalized();
    const Vec2 u2 = (toward_next - c).normalized();
    const Vec2 s = u1 + u2;
    if (s.norm() < 0.1) return std::nullopt;
    return c + r * s.normalized();
}

// Bounce point on disk d lies in cell (cx, cy), away from the horizontal line
// through the disk centre by at least the angle margin. Corner disks also keep
// a quarter of the margin from the vertical line.
bool bounce_in_cell(const BilliardTable& table, const LiftedDisk& d, Vec2 point, std::int64_t cx, std::int64_t cy,
                    double angle_margin) {
    const Vec2 c = table.center(d);
    const Vec2 m = (point - c) * (1.0 / table.r());
    const double s = std::sin(angle_margin);
    if (d.q == cy) {
        if (m.y < s) return false;
    } else if (d.q == cy + 1) {
        if (m.y > -s) return false;
    } else {
        return false;
    }
    const std::int64_t column = table.column_of(d);
    if (column % table.n() == 0) {
        const std::int64_t x = column / table.n();
        const double sc = std::sin(0.25 * angle_margin);
        if (x == cx) {
            if (m.x < sc) return false;
        } else if (x == cx + 1) {
            if (m.x > -sc) return false;
        } else {
            return false;
        }
    }
    return static_cast<std::int64_t>(std::floor(point.x)) == cx && static_cast<std::int64_t>(std::floor(point.y)) == cy;
}

}  // namespace

std::optional<LiftedDisk> idle_partner(const BilliardTable& table, const std::vector<LiftedDisk>& disks, std::size_t k,
                                       double angle_margin) {
    if (k == 0 || k + 1 >= disks.size()) return std::nullopt;
    const LiftedDisk& prev = disks[k - 1];
    const LiftedDisk& x = disks[k];
    const LiftedDisk& next = disks[k + 1];
    if (table.column_of(x) % table.n() == 0) return std::nullopt;
    const Vec2 c = table.center(x);
    const auto p = bisector_bounce(c, table.center(prev), table.center(next), table.r());
    if (!p) return std::nullopt;
    const auto cx = static_cast<std::int64_t>(std::floor(p->x));
    const auto cy = static_cast<std::int64_t>(std::floor(p->y));
    LiftedDisk y;
    if (x.q == cy) {
        y = x.translated(0, 1);
    } else if (x.q == cy + 1) {
        y = x.translated(0, -1);
    } else {
        return std::nullopt;
    }
    if (!check_pair(table, x, y) || !check_triple(table, prev, x, y) || !check_triple(table, y, x, next)) {
        return std::nullopt;
    }
    const Vec2 cy_center = table.center(y);
    for (const auto& [a, b] : {std::pair{table.center(prev), cy_center}, std::pair{cy_center, table.center(next)}}) {
        const auto q = bisector_bounce(c, a, b, table.r());
        if (!q || !bounce_in_cell(table, x, *q, cx, cy, angle_margin)) return std::nullopt;
    }
    if (!bounce_in_cell(table, x, *p, cx, cy, angle_margin)) return std::nullopt;
    return y;
}

std::vector<LiftedDisk> insert_idle_runs(const BilliardTable& table, const std::vector<LiftedDisk>& disks,
                                         std::size_t count, double angle_margin) {
    if (count == 0) return disks;
    std::vector<std::pair<std::size_t, LiftedDisk>> spots;
    for (std::size_t k = 1; k + 1 < disks.size(); ++k) {
        if (auto y = idle_partner(table, disks, k, angle_margin)) spots.emplace_back(k, *y);
    }
    if (spots.empty()) throw std::runtime_error("insert_idle_runs: no position admits an idle bounce");
    std::vector<std::size_t> per_spot(spots.size(), count / spots.size());
    // Spread the remainder evenly rather than front-loading it.
    const std::size_t extra = count % spots.size();
    for (std::size_t i = 0; i < extra; ++i) ++per_spot[(i * spots.size()) / extra];
    std::vector<LiftedDisk> out;
    out.reserve(disks.size() + 2 * count);
    std::size_t s = 0;
    for (std::size_t k = 0; k < disks.size(); ++k) {
        out.push_back(disks[k]);
        if (s < spots.size() && spots[s].first == k) {
            for (std::size_t i = 0; i < per_spot[s]; ++i) {
                out.push_back(spots[s].second);
                out.push_back(disks[k]);
            }
            ++s;
        }
    }
    return out;
}

std::vector<LiftedDisk> random_admissible_sequence(const BilliardTable& table, std::size_t length, Rng& rng,
                                                   double max_step) {
    std::vector<LiftedDisk> seq;
    if (length == 0) return seq;
    seq.push_back({static_cast<int>(rng.below(static_cast<std::uint64_t>(table.n()))), 0, 0});
    while (seq.size() < length) {
        std::vector<LiftedDisk> options;
        for (const auto& c : disks_near(table, seq.back(), max_step)) {
            if (seq.size() >= 2 && c == seq[seq.size() - 2]) continue;
            if (!check_pair(table, seq.back(), c)) continue;
            if (seq.size() >= 2 && !check_triple(table, seq[seq.size() - 2], seq.back(), c)) continue;
            options.push_back(c);
        }
        if (options.empty()) throw std::runtime_error("random_admissible_sequence: walk is stuck");
        seq.push_back(options[rng.below(options.size())]);
    }
    return seq;
}

std::string sequence_to_json(const std::vector<LiftedDisk>& disks) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& d : disks) j.push_back({d.disk_id, d.p, d.q});
    return j.dump();
}

std::vector<LiftedDisk> sequence_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("sequence JSON must be an array of [disk_id, p, q]");
    std::vector<LiftedDisk> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3) throw std::invalid_argument("sequence entry must be [disk_id, p, q]");
        out.push_back({e[0].get<int>(), e[1].get<std::int64_t>(), e[2].get<std::int64_t>()});
    }
    return out;
}

}  // namespace lorentz
