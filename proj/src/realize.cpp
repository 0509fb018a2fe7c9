#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

#include "lorentz/admissibility.hpp"
#include "lorentz/flow.hpp"
#include "lorentz/variational.hpp"

namespace lorentz {

namespace {

constexpr double kSqrt5 = 2.2360679774997896964;
constexpr double kSqrt2 = 1.4142135623730950488;

struct PairKey {
    int id1;
    int id2;
    std::int64_t dp;
    std::int64_t dq;
    auto operator<=>(const PairKey&) const = default;
};

class PairCache {
public:
    explicit PairCache(const BilliardTable& table) : table_(table) {}

    bool ok(const LiftedDisk& a, const LiftedDisk& b) {
        const PairKey key{a.disk_id, b.disk_id, b.p - a.p, b.q - a.q};
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        const bool v = check_pair(table_, a, b);
        cache_.emplace(key, v);
        return v;
    }

private:
    const BilliardTable& table_;
    std::map<PairKey, bool> cache_;
};

struct Node {
    int parent{-1};
    LiftedDisk disk;
    std::size_t cell{0};
    std::size_t helpers_here{0};  ///< consecutive bounces inside the current cell
    std::size_t depth{0};
    std::vector<double> theta;  ///< angles of the trailing window, ending at this disk
    double s{0.0};              ///< arc length up to this vertex
    double last_cross{std::numeric_limits<double>::quiet_NaN()};
    Letter last_letter;
    double excess{0.0};   ///< summed overshoot of the preferred caps by completed passages
    double overdue{0.0};  ///< overshoot already certain for the passage in progress
};

double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

bool clear_of_walls(Vec2 p, std::int64_t cx, std::int64_t cy, double margin) {
    const double fx = p.x - static_cast<double>(cx);
    const double fy = p.y - static_cast<double>(cy);
    return fx >= margin && fx <= 1.0 - margin && fy >= margin && fy <= 1.0 - margin;
}

}  // namespace

Realization realize_word(const BilliardTable& table, const ReducedWord& w, const RealizeOptions& options) {
    const auto letters = w.letters();
    const std::size_t L = letters.size();
    const auto cells = cell_path(letters);
    const double r = table.r();
    if (L == 0) {
        // Two neighbouring disks of the base cell facing each other across it.
        Realization out;
        const LiftedDisk d0{table.n() / 2, 0, 0};
        const LiftedDisk d1{table.n() / 2, 0, 1};
        out.sequence = check_sequence(table, {d0, d1});
        out.cell_index = {0, 0};
        out.estimated_length = 1.0 - 2.0 * r;
        return out;
    }
    if (options.window < 2) throw std::invalid_argument("realize_word: window must hold at least two vertices");
    const double general_cap = kSqrt5 + options.passage_slack / table.n();
    const double straight_cap = kSqrt2 - options.straight_margin;
    const std::size_t budget = options.expansion_budget > 0 ? options.expansion_budget : 50 * options.beam_width * (L + 1);
    PairCache pairs(table);
    const MinimizeOptions local{200, 1e-10};

    std::vector<Node> arena;
    // Unexpanded nodes per level, as arena indices.
    std::vector<std::vector<int>> pending(L + 1);
    for (const auto& d : cell_disks(table, 0, 0)) {
        Node root;
        root.disk = d;
        root.theta = {0.0};
        arena.push_back(root);
        pending[0].push_back(static_cast<int>(arena.size() - 1));
    }

    const auto extend = [&](int index, const LiftedDisk& next, std::size_t target) -> std::optional<Node> {
        const Node& node = arena[static_cast<std::size_t>(index)];
        const std::size_t m = node.theta.size();
        std::vector<int> ids(m);
        int at = index;
        for (std::size_t k = m; k-- > 0;) {
            ids[k] = at;
            at = arena[static_cast<std::size_t>(at)].parent;
        }
        std::vector<LiftedDisk> disks;
        for (int id : ids) disks.push_back(arena[static_cast<std::size_t>(id)].disk);
        disks.push_back(next);
        std::vector<double> start = node.theta;

        // Warm start: the old end turns towards the bisector, the new end faces it.
        const Vec2 c = table.center(node.disk);
        const Vec2 cn = table.center(next);
        if (m == 1) {
            start[0] = angle_of(cn - c);
        } else {
            const Vec2 cp = table.center(disks[m - 2]);
            const Vec2 vp = cp + r * unit_from_angle(start[m - 2]);
            const Vec2 u = (vp - c).normalized() + (cn - c).normalized();
            if (u.norm() > 1e-9) start[m - 1] = angle_of(u);
        }
        start.push_back(angle_of(c + r * unit_from_angle(start[m - 1]) - cn));

        const Node& first = arena[static_cast<std::size_t>(ids[0])];
        const bool whole = first.depth == 0;
        const PathSpec spec = whole ? PathSpec::free() : PathSpec::pinned_first(start[0]);
        const BrokenPath path = minimize_path(table, disks, spec, local, start);
        if (!path.converged || path.left_admissible_class) return std::nullopt;

        std::vector<std::size_t> cell_of(disks.size());
        for (std::size_t k = 0; k < m; ++k) cell_of[k] = arena[static_cast<std::size_t>(ids[k])].cell;
        cell_of[m] = target;
        for (std::size_t k = whole ? 0 : 1; k < disks.size(); ++k) {
            const auto [cx, cy] = cells[cell_of[k]];
            if (!clear_of_walls(path.vertices[k], cx, cy, options.wall_margin)) return std::nullopt;
        }

        Node child;
        child.parent = index;
        child.disk = next;
        child.cell = target;
        child.helpers_here = target == node.cell ? node.helpers_here + 1 : 0;
        child.depth = node.depth + 1;
        child.last_cross = first.last_cross;
        child.last_letter = first.last_letter;
        child.excess = node.excess;
        double s = first.s;
        for (std::size_t k = 1; k < disks.size(); ++k) {
            const Vec2 p = path.vertices[k - 1];
            const Vec2 q = path.vertices[k];
            const double len = (q - p).norm();
            const auto wc = wall_crossings(p, q, table);
            const std::size_t from = cell_of[k - 1];
            if (wc.touches_wall || wc.letters.size() != cell_of[k] - from) return std::nullopt;
            for (std::size_t i = 0; i < wc.letters.size(); ++i) {
                if (!(wc.letters[i] == letters[from + i])) return std::nullopt;
                const double t = s + wc.params[i] * len;
                if (!std::isnan(child.last_cross)) {
                    const double passage = t - child.last_cross;
                    if (passage > options.max_passage) return std::nullopt;
                    const bool straight = child.last_letter == wc.letters[i] && wc.letters[i].kind == Letter::Kind::A;
                    if (straight && passage > straight_cap) return std::nullopt;
                    // Earlier chords of the window were charged when they were added.
                    if (k + 1 == disks.size()) child.excess += std::max(0.0, passage - general_cap);
                }
                child.last_cross = t;
                child.last_letter = wc.letters[i];
            }
            s += len;
        }
        child.s = s;
        // The next crossing comes later still.
        if (target < L && !std::isnan(child.last_cross)) {
            if (s - child.last_cross > options.max_passage) return std::nullopt;
            child.overdue = std::max(0.0, s - child.last_cross - general_cap);
        }
        const std::size_t keep = std::min(disks.size(), options.window - 1);
        child.theta.assign(path.theta.end() - static_cast<std::ptrdiff_t>(keep), path.theta.end());
        return child;
    };

    const auto rank = [&](int i) {
        const Node& n = arena[static_cast<std::size_t>(i)];
        // Overshoots within 0.02 of each other count as equal.
        const double over = std::ceil((n.excess + n.overdue) / 0.02);
        return std::tuple{over, std::isnan(n.last_cross) ? n.s : n.s - n.last_cross, n.s};
    };

    // Returns the children that stay in the node's cell.
    const auto expand = [&](int index) {
        std::vector<int> helpers;
        const Node node = arena[static_cast<std::size_t>(index)];
        const LiftedDisk prev = node.parent >= 0 ? arena[static_cast<std::size_t>(node.parent)].disk : LiftedDisk{};
        const Vec2 c = table.center(node.disk);
        const std::size_t first = node.helpers_here >= options.max_helpers_per_cell ? node.cell + 1 : node.cell;
        const std::size_t last = std::min(L, node.cell + static_cast<std::size_t>(options.max_letters_per_chord));
        for (std::size_t target = first; target <= last; ++target) {
            const auto [cx, cy] = cells[target];
            for (const auto& next : cell_disks(table, cx, cy)) {
                if (next == node.disk) continue;
                // Each crossed row or column adds at most about one unit of chord.
                if ((table.center(next) - c).norm() > 1.5 + 1.2 * static_cast<double>(target - node.cell)) continue;
                if (!pairs.ok(node.disk, next)) continue;
                if (node.parent >= 0 && !check_triple(table, prev, node.disk, next)) continue;
                // The straight shot from the current bounce to the near side of the disk must already
                // cross the right letters.
                const Vec2 v = c + r * unit_from_angle(node.theta.back());
                const Vec2 cn = table.center(next);
                const auto shot = wall_crossings(v, cn + r * (v - cn).normalized(), table);
                if (shot.letters.size() != target - node.cell ||
                    !std::equal(shot.letters.begin(), shot.letters.end(), letters.begin() + node.cell)) {
                    continue;
                }
                auto child = extend(index, next, target);
                if (!child) continue;
                arena.push_back(std::move(*child));
                const int id = static_cast<int>(arena.size() - 1);
                pending[target].push_back(id);
                if (target == node.cell) helpers.push_back(id);
            }
        }
        return helpers;
    };

    // One state per (previous disk, disk, helpers, crossed yet) and level.
    std::vector<std::set<std::tuple<LiftedDisk, LiftedDisk, std::size_t, bool>>> seen(L + 1);
    std::size_t expansions = 0;
    std::size_t level = 0;
    while (pending[L].empty()) {
        if (pending[level].empty()) {
            // Every successor of this level died: revisit the nearest earlier level.
            while (level > 0 && pending[level].empty()) --level;
            if (pending[level].empty()) break;
        }
        const auto fresh_state = [&](int i) {
            const Node& n = arena[static_cast<std::size_t>(i)];
            const LiftedDisk before = n.parent >= 0 ? arena[static_cast<std::size_t>(n.parent)].disk : LiftedDisk{};
            return seen[level].insert({before, n.disk, n.helpers_here, std::isnan(n.last_cross)}).second;
        };
        auto& queue = pending[level];
        std::stable_sort(queue.begin(), queue.end(), [&](int a, int b) { return rank(a) > rank(b); });
        std::size_t taken = 0;
        std::vector<int> helpers;
        while (taken < options.beam_width && !queue.empty()) {
            const int i = queue.back();
            queue.pop_back();
            if (!fresh_state(i)) continue;
            for (int h : expand(i)) helpers.push_back(h);
            ++taken;
        }
        // Rounds of extra bounces inside the cell; the rest stay queued.
        while (!helpers.empty()) {
            std::stable_sort(helpers.begin(), helpers.end(), [&](int a, int b) { return rank(a) < rank(b); });
            std::vector<int> more;
            std::size_t used = 0;
            for (int i : helpers) {
                if (used >= options.helper_width) break;
                if (!fresh_state(i)) continue;
                std::erase(queue, i);
                for (int h : expand(i)) more.push_back(h);
                ++used;
            }
            taken += used;
            helpers = std::move(more);
        }
        expansions += taken;
        if (expansions > budget) break;
        for (std::size_t g = level + 1; g <= L; ++g) {
            if (!pending[g].empty()) {
                level = g;
                break;
            }
        }
    }

    const auto best = std::min_element(pending[L].begin(), pending[L].end(), [&](int a, int b) {
        const Node& x = arena[static_cast<std::size_t>(a)];
        const Node& y = arena[static_cast<std::size_t>(b)];
        return std::pair{x.excess, x.s} < std::pair{y.excess, y.s};
    });
    if (best == pending[L].end()) {
        throw std::runtime_error("realize_word: no admissible realization found for '" + to_text(w) + "'");
    }
    Realization out;
    out.estimated_length = arena[static_cast<std::size_t>(*best)].s;
    std::vector<LiftedDisk> disks;
    std::vector<std::size_t> cell_index;
    for (int i = *best; i >= 0; i = arena[static_cast<std::size_t>(i)].parent) {
        disks.push_back(arena[static_cast<std::size_t>(i)].disk);
        cell_index.push_back(arena[static_cast<std::size_t>(i)].cell);
    }
    std::reverse(disks.begin(), disks.end());
    std::reverse(cell_index.begin(), cell_index.end());
    for (std::size_t i = 1; i < cell_index.size(); ++i) out.helpers += cell_index[i] == cell_index[i - 1];
    out.sequence = check_sequence(table, disks);
    out.cell_index = std::move(cell_index);
    return out;
}

}  // namespace lorentz
