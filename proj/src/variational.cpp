#include "lorentz/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "lorentz/flow.hpp"
#include "lorentz/rotation_vector.hpp"

namespace lorentz {

namespace {

constexpr double kSqrt5 = 2.2360679774997896964;
constexpr double kSqrt2 = 1.4142135623730950488;

std::size_t chords_of(std::size_t N, PathMode mode) {
    if (mode == PathMode::Periodic) return N;
    return N >= 1 ? N - 1 : 0;
}

struct Geometry {
    std::vector<Vec2> centers;
    Vec2 shift;  ///< periodic translation
    double r;
};

Geometry geometry_of(const BilliardTable& table, const std::vector<LiftedDisk>& disks, const PathSpec& spec) {
    Geometry g;
    g.r = table.r();
    g.centers.reserve(disks.size());
    for (const auto& d : disks) g.centers.push_back(table.center(d));
    g.shift = {static_cast<double>(spec.a), static_cast<double>(spec.b)};
    return g;
}

Vec2 vertex(const Geometry& g, const std::vector<double>& theta, std::size_t i) {
    return g.centers[i] + g.r * unit_from_angle(theta[i]);
}

// Chord k joins vertex k to vertex k + 1, wrapping with the translation.
std::pair<std::size_t, Vec2> chord_end(const Geometry& g, const std::vector<double>& theta, std::size_t k) {
    const std::size_t N = g.centers.size();
    if (k + 1 < N) return {k + 1, vertex(g, theta, k + 1)};
    return {0, vertex(g, theta, 0) + g.shift};
}

struct Derivatives {
    double length{0.0};
    std::vector<double> grad;
    std::vector<double> diag;
    std::vector<double> off;  ///< off[i] = H(i, i+1)
    double corner{0.0};       ///< H(0, N-1) from the closing chord
};

Derivatives derivatives(const Geometry& g, const std::vector<double>& theta, PathMode mode, bool hessian) {
    const std::size_t N = g.centers.size();
    Derivatives D;
    D.grad.assign(N, 0.0);
    if (hessian) {
        D.diag.assign(N, 0.0);
        D.off.assign(N > 0 ? N - 1 : 0, 0.0);
    }
    const double r = g.r;
    for (std::size_t k = 0; k < chords_of(N, mode); ++k) {
        const std::size_t i = k;
        const auto [j, vj] = chord_end(g, theta, k);
        const Vec2 vi = vertex(g, theta, i);
        const Vec2 delta = vj - vi;
        const double d = delta.norm();
        D.length += d;
        if (d == 0.0) continue;
        const Vec2 e = delta * (1.0 / d);
        const Vec2 wi = r * Vec2{-std::sin(theta[i]), std::cos(theta[i])};
        const Vec2 wj = r * Vec2{-std::sin(theta[j]), std::cos(theta[j])};
        D.grad[i] -= e.dot(wi);
        D.grad[j] += e.dot(wj);
        if (!hessian) continue;
        const Vec2 ni = unit_from_angle(theta[i]);
        const Vec2 nj = unit_from_angle(theta[j]);
        const double ewi = e.dot(wi);
        const double ewj = e.dot(wj);
        D.diag[i] += (r * r - ewi * ewi) / d + r * e.dot(ni);
        D.diag[j] += (r * r - ewj * ewj) / d - r * e.dot(nj);
        const double mixed = -(wi.dot(wj) - ewi * ewj) / d;
        if (i == j) {
            // A single-disk period: both ends move together.
            D.diag[i] += 2.0 * mixed;
        } else if (j == i + 1) {
            D.off[i] += mixed;
        } else if (N == 2) {
            D.off[0] += mixed;
        } else {
            D.corner += mixed;
        }
    }
    return D;
}

// Cholesky solve of (A + mu I) x = rhs for a symmetric tridiagonal matrix with
// an optional corner entry A(0, N-1). The factor has the tridiagonal band
// plus a dense last row. Returns false when the matrix is not positive definite.
bool solve_cyclic_spd(const std::vector<double>& diag, const std::vector<double>& off, double corner, double mu,
                      const std::vector<double>& rhs, std::vector<double>& x) {
    const std::size_t N = diag.size();
    x.assign(N, 0.0);
    if (N == 0) return true;
    if (N == 1) {
        const double a = diag[0] + mu;
        if (!(a > 0.0)) return false;
        x[0] = rhs[0] / a;
        return true;
    }
    const std::size_t last = N - 1;
    std::vector<double> l(N, 0.0);    // diagonal of the factor
    std::vector<double> sub(N, 0.0);  // sub[i] = L(i+1, i) for i + 1 < last
    std::vector<double> z(N, 0.0);    // z[i] = L(last, i)
    const auto last_row = [&](std::size_t i) {
        double v = 0.0;
        if (i == 0) v += corner;
        if (i + 1 == last) v += off[i];
        return v;
    };
    for (std::size_t i = 0; i < last; ++i) {
        double s = diag[i] + mu;
        if (i > 0) s -= sub[i - 1] * sub[i - 1];
        if (!(s > 0.0)) return false;
        l[i] = std::sqrt(s);
        if (i + 1 < last) sub[i] = off[i] / l[i];
        z[i] = (last_row(i) - (i > 0 ? z[i - 1] * sub[i - 1] : 0.0)) / l[i];
    }
    double s = diag[last] + mu;
    for (std::size_t i = 0; i < last; ++i) s -= z[i] * z[i];
    if (!(s > 0.0)) return false;
    l[last] = std::sqrt(s);

    std::vector<double> y(N);
    for (std::size_t i = 0; i < last; ++i) y[i] = (rhs[i] - (i > 0 ? sub[i - 1] * y[i - 1] : 0.0)) / l[i];
    double acc = rhs[last];
    for (std::size_t i = 0; i < last; ++i) acc -= z[i] * y[i];
    y[last] = acc / l[last];

    x[last] = y[last] / l[last];
    for (std::size_t k = last; k-- > 0;) {
        double v = y[k] - z[k] * x[last];
        if (k + 1 < last) v -= sub[k] * x[k + 1];
        x[k] = v / l[k];
    }
    return true;
}

std::vector<bool> free_mask(std::size_t N, const PathSpec& spec) {
    std::vector<bool> mask(N, true);
    if (spec.mode == PathMode::Pinned && N > 0) {
        mask[0] = false;
        mask[N - 1] = false;
    }
    if (spec.mode == PathMode::PinnedFirst && N > 0) mask[0] = false;
    return mask;
}

double max_abs_free(const std::vector<double>& v, const std::vector<bool>& mask) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (mask[i]) m = std::max(m, std::abs(v[i]));
    }
    return m;
}

double signed_angle(Vec2 from, Vec2 to) { return std::atan2(from.cross(to), from.dot(to)); }

// Any lifted disk whose open interior meets the chord.
bool chord_cuts_disk(const BilliardTable& table, Vec2 p, Vec2 q) {
    const double r = table.r();
    const double tol = 1e-10;
    const auto q0 = static_cast<std::int64_t>(std::ceil(std::min(p.y, q.y) - r));
    const auto q1 = static_cast<std::int64_t>(std::floor(std::max(p.y, q.y) + r));
    const double dy = q.y - p.y;
    for (std::int64_t row = q0; row <= q1; ++row) {
        double s_lo = 0.0;
        double s_hi = 1.0;
        if (dy != 0.0) {
            const double sa = (static_cast<double>(row) - r - p.y) / dy;
            const double sb = (static_cast<double>(row) + r - p.y) / dy;
            s_lo = std::max(0.0, std::min(sa, sb));
            s_hi = std::min(1.0, std::max(sa, sb));
            if (s_lo > s_hi) continue;
        }
        const double xa = p.x + s_lo * (q.x - p.x);
        const double xb = p.x + s_hi * (q.x - p.x);
        const auto j0 = static_cast<std::int64_t>(std::floor((std::min(xa, xb) - r) * table.n()));
        const auto j1 = static_cast<std::int64_t>(std::ceil((std::max(xa, xb) + r) * table.n()));
        for (std::int64_t j = j0; j <= j1; ++j) {
            const Vec2 c{static_cast<double>(j) / table.n(), static_cast<double>(row)};
            if (point_segment_distance(c, p, q) < r - tol) return true;
        }
    }
    return false;
}

}  // namespace

std::size_t BrokenPath::chord_count() const { return chords_of(disks.size(), spec.mode); }

std::pair<Vec2, Vec2> BrokenPath::chord(std::size_t i) const {
    if (i + 1 < vertices.size()) return {vertices[i], vertices[i + 1]};
    return {vertices[i], vertices[0] + Vec2{static_cast<double>(spec.a), static_cast<double>(spec.b)}};
}

double BrokenPath::max_residual() const {
    double m = 0.0;
    for (double v : residuals) m = std::max(m, v);
    return m;
}

double path_length(const BilliardTable& table, const std::vector<LiftedDisk>& disks, const PathSpec& spec,
                   const std::vector<double>& theta) {
    return derivatives(geometry_of(table, disks, spec), theta, spec.mode, false).length;
}

std::vector<double> path_gradient(const BilliardTable& table, const std::vector<LiftedDisk>& disks,
                                  const PathSpec& spec, const std::vector<double>& theta) {
    return derivatives(geometry_of(table, disks, spec), theta, spec.mode, false).grad;
}

double path_hessian_quadratic(const BilliardTable& table, const std::vector<LiftedDisk>& disks, const PathSpec& spec,
                              const std::vector<double>& theta, const std::vector<double>& u) {
    const auto D = derivatives(geometry_of(table, disks, spec), theta, spec.mode, true);
    const std::size_t N = u.size();
    double q = 0.0;
    for (std::size_t i = 0; i < N; ++i) q += D.diag[i] * u[i] * u[i];
    for (std::size_t i = 0; i + 1 < N; ++i) q += 2.0 * D.off[i] * u[i] * u[i + 1];
    if (N > 2) q += 2.0 * D.corner * u[0] * u[N - 1];
    return q;
}

std::vector<double> initial_angles(const BilliardTable& table, const std::vector<LiftedDisk>& disks,
                                   const PathSpec& spec) {
    const auto g = geometry_of(table, disks, spec);
    const std::size_t N = disks.size();
    std::vector<double> theta(N, 0.0);
    const bool periodic = spec.mode == PathMode::Periodic;
    for (std::size_t i = 0; i < N; ++i) {
        std::vector<Vec2> nbrs;
        if (i > 0) {
            nbrs.push_back(g.centers[i - 1]);
        } else if (periodic) {
            nbrs.push_back(g.centers[N - 1] - g.shift);
        }
        if (i + 1 < N) {
            nbrs.push_back(g.centers[i + 1]);
        } else if (periodic) {
            nbrs.push_back(g.centers[0] + g.shift);
        }
        Vec2 target{0.0, 0.0};
        for (const auto& p : nbrs) target += p;
        Vec2 dir{1.0, 0.0};
        if (!nbrs.empty()) {
            dir = target * (1.0 / static_cast<double>(nbrs.size())) - g.centers[i];
            if (dir.norm() < 1e-12 && nbrs.size() == 2) {
                const Vec2 along = nbrs[1] - nbrs[0];
                dir = {-along.y, along.x};
            }
        }
        theta[i] = std::atan2(dir.y, dir.x);
    }
    if (spec.mode == PathMode::Pinned && N > 0) {
        theta[0] = spec.theta_first;
        theta[N - 1] = spec.theta_last;
    }
    if (spec.mode == PathMode::PinnedFirst && N > 0) theta[0] = spec.theta_first;
    return theta;
}

void evaluate_path(const BilliardTable& table, BrokenPath& path) {
    const auto g = geometry_of(table, path.disks, path.spec);
    const std::size_t N = path.disks.size();
    path.vertices.resize(N);
    for (std::size_t i = 0; i < N; ++i) path.vertices[i] = vertex(g, path.theta, i);
    const auto D = derivatives(g, path.theta, path.spec.mode, false);
    path.length = D.length;
    path.gradient_norm = max_abs_free(D.grad, free_mask(N, path.spec));

    path.residuals.clear();
    path.left_admissible_class = false;
    const std::size_t chords = path.chord_count();
    const bool periodic = path.spec.mode == PathMode::Periodic;
    for (std::size_t i = 0; i < N; ++i) {
        const bool has_in = i > 0 || periodic;
        const bool has_out = i + 1 < N || periodic;
        if (!has_in || !has_out) continue;
        const auto [a0, a1] = path.chord(i > 0 ? i - 1 : chords - 1);
        const auto [b0, b1] = path.chord(i);
        const Vec2 n = unit_from_angle(path.theta[i]);
        const Vec2 back = (a0 - a1).normalized();
        const Vec2 out = (b1 - b0).normalized();
        path.residuals.push_back(std::abs(signed_angle(n, back) + signed_angle(n, out)));
    }
    for (std::size_t k = 0; k < chords; ++k) {
        const auto [p, q] = path.chord(k);
        if ((q - p).norm() == 0.0 || chord_cuts_disk(table, p, q)) path.left_admissible_class = true;
    }
}

BrokenPath minimize_path(const BilliardTable& table, const std::vector<LiftedDisk>& disks, const PathSpec& spec,
                         const MinimizeOptions& options, std::optional<std::vector<double>> start) {
    const std::size_t N = disks.size();
    if (spec.mode == PathMode::Periodic ? N < 1 : N < 2) {
        throw std::invalid_argument("minimize_path: sequence too short for the requested mode");
    }
    const auto g = geometry_of(table, disks, spec);
    BrokenPath path;
    path.disks = disks;
    path.spec = spec;
    path.theta = start ? *start : initial_angles(table, disks, spec);
    if (path.theta.size() != N) throw std::invalid_argument("minimize_path: start angles do not match the sequence");
    const auto mask = free_mask(N, spec);

    auto D = derivatives(g, path.theta, spec.mode, true);
    double scale = 1.0;
    for (double d : D.diag) scale = std::max(scale, std::abs(d));
    double mu = 1e-8 * scale;
    std::vector<double> rhs(N);
    std::vector<double> step;
    std::size_t it = 0;
    int polish = 0;
    for (; it < options.max_iterations; ++it) {
        const double gnorm = max_abs_free(D.grad, mask);
        // Two extra Newton steps past the tolerance cost little and keep the
        // reflection residual small when r or cos phi is small.
        if (gnorm < options.gradient_tolerance) {
            path.converged = true;
            if (polish >= 2 || gnorm < 1e-3 * options.gradient_tolerance) break;
            ++polish;
        }
        auto diag = D.diag;
        auto off = D.off;
        double corner = D.corner;
        for (std::size_t i = 0; i < N; ++i) {
            rhs[i] = mask[i] ? -D.grad[i] : 0.0;
            if (!mask[i]) {
                diag[i] = 1.0;
                if (i > 0) off[i - 1] = 0.0;
                if (i < off.size()) off[i] = 0.0;
                corner = 0.0;
            }
        }
        if (!solve_cyclic_spd(diag, off, corner, mu, rhs, step)) {
            mu = std::max(mu * 10.0, 1e-10 * scale);
            continue;
        }
        double big = 0.0;
        for (double s : step) big = std::max(big, std::abs(s));
        if (big > 0.5) {
            for (double& s : step) s *= 0.5 / big;
        }
        std::vector<double> trial = path.theta;
        for (std::size_t i = 0; i < N; ++i) trial[i] += step[i];
        auto Dt = derivatives(g, trial, spec.mode, true);
        const double slack = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + D.length);
        const bool better = Dt.length < D.length - slack ||
                            (Dt.length <= D.length + slack && max_abs_free(Dt.grad, mask) < gnorm);
        if (better) {
            path.theta = std::move(trial);
            D = std::move(Dt);
            mu = mu * 0.2;
        } else {
            mu = std::max(mu * 4.0, 1e-12 * scale);
            if (mu > 1e12 * scale) break;
        }
    }
    path.iterations = it;
    for (double& t : path.theta) t = std::remainder(t, 2.0 * std::numbers::pi);
    evaluate_path(table, path);
    if (path.gradient_norm < options.gradient_tolerance) path.converged = true;
    return path;
}

OrbitCrossings path_crossings(const BilliardTable& table, const BrokenPath& path) {
    OrbitCrossings out;
    double t = 0.0;
    for (std::size_t k = 0; k < path.chord_count(); ++k) {
        const auto [p, q] = path.chord(k);
        const double len = (q - p).norm();
        const auto wc = wall_crossings(p, q, table);
        for (std::size_t i = 0; i < wc.letters.size(); ++i) {
            out.letters.push_back(wc.letters[i]);
            out.times.push_back(t + wc.params[i] * len);
        }
        t += len;
    }
    return out;
}

std::vector<double> passage_times(const OrbitCrossings& crossings) {
    std::vector<double> out;
    for (std::size_t i = 1; i < crossings.times.size(); ++i) out.push_back(crossings.times[i] - crossings.times[i - 1]);
    return out;
}

RealizedOrbit realize_orbit(const BilliardTable& table, const ReducedWord& w) {
    // window, beam, helper width, helpers per cell, letters per chord, slack, straight margin, max passage, wall margin
    static const RealizeOptions attempts[] = {
        {6, 16, 4, 3, 3, 0.5, 0.002, 4.0, 1e-6},
        {8, 32, 8, 4, 3, 0.5, 0.004, 5.0, 1e-5},
        {10, 64, 16, 5, 4, 0.3, 0.008, 6.0, 1e-4},
    };
    std::string last_error = "no attempt made";
    std::size_t count = 0;
    for (const auto& opt : attempts) {
        ++count;
        Realization real;
        try {
            real = realize_word(table, w, opt);
        } catch (const std::runtime_error& e) {
            last_error = e.what();
            continue;
        }
        if (!real.sequence.admissible()) {
            last_error = "construction not admissible at " + real.sequence.certificate.first_failure();
            continue;
        }
        BrokenPath path = minimize_path(table, real.sequence.disks, PathSpec::free());
        if (!path.converged || path.left_admissible_class) {
            last_error = "minimizer did not converge inside the admissible class";
            continue;
        }
        OrbitCrossings cr = path_crossings(table, path);
        const auto target = w.letters();
        if (cr.letters.size() != target.size() || !std::equal(cr.letters.begin(), cr.letters.end(), target.begin())) {
            last_error = "orbit word '" + to_text(cr.letters) + "' differs from the target";
            continue;
        }
        return {std::move(real), std::move(path), std::move(cr), count};
    }
    throw std::runtime_error("realize_orbit failed for '" + to_text(w) + "': " + last_error);
}

PeriodicOrbit doubling_orbit(const BilliardTable& table, const BrokenPath& free_path) {
    if (free_path.spec.mode != PathMode::Free) throw std::invalid_argument("doubling needs a free-mode path");
    PeriodicOrbit out;
    out.path = free_path;
    out.closure = PeriodicOrbit::Closure::Doubling;
    out.period = 2.0 * free_path.length;
    const auto cr = path_crossings(table, free_path);
    out.word = cr.letters;
    for (auto it = cr.letters.rbegin(); it != cr.letters.rend(); ++it) out.word.push_back(it->inverse());
    return out;
}

namespace {

double lattice_distance(Vec2 c, Vec2 c0) {
    const double dx = c.x - c0.x;
    const double dy = c.y - c0.y;
    return std::hypot(dx - std::round(dx), dy - std::round(dy));
}

}  // namespace

PeriodicOrbit periodic_closure(const BilliardTable& table, const std::vector<LiftedDisk>& seq, std::size_t K) {
    const std::size_t N = seq.size();
    if (N < 2) throw std::invalid_argument("periodic_closure needs at least two disks");
    const LiftedDisk x0 = seq[0];
    const LiftedDisk x1 = seq[1];
    const Vec2 c0 = table.center(x0);

    const auto seam_ok = [&](const LiftedDisk& before, const LiftedDisk& end) {
        const std::int64_t a = end.p - x0.p;
        const std::int64_t b = end.q - x0.q;
        return check_triple(table, before, end, x1.translated(a, b));
    };

    std::vector<LiftedDisk> extension;
    bool found = false;
    const LiftedDisk& tail = seq[N - 1];
    if (N >= 3 && tail.disk_id == x0.disk_id && (tail.p != x0.p || tail.q != x0.q) && seam_ok(seq[N - 2], tail)) {
        found = true;
    }
    if (!found) {
        struct Item {
            double f;
            double g;
            std::vector<LiftedDisk> path;
            bool operator>(const Item& o) const { return f > o.f; }
        };
        std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
        open.push({lattice_distance(table.center(tail), c0), 0.0, {}});
        std::set<std::tuple<LiftedDisk, LiftedDisk, std::size_t>> closed;
        std::size_t expansions = 0;
        while (!open.empty() && expansions < 200000) {
            Item item = open.top();
            open.pop();
            const LiftedDisk cur = item.path.empty() ? tail : item.path.back();
            const LiftedDisk prev =
                item.path.size() >= 2 ? item.path[item.path.size() - 2] : (item.path.empty() ? seq[N - 2] : tail);
            if (!item.path.empty() && cur.disk_id == x0.disk_id && seam_ok(prev, cur)) {
                extension = item.path;
                found = true;
                break;
            }
            if (item.path.size() >= K) continue;
            if (!closed.insert({prev, cur, item.path.size()}).second) continue;
            ++expansions;
            const Vec2 cc = table.center(cur);
            for (const auto& next : disks_near(table, cur, 1.6)) {
                if (next == prev) continue;
                if (!check_pair(table, cur, next) || !check_triple(table, prev, cur, next)) continue;
                Item child{0.0, item.g + (table.center(next) - cc).norm(), item.path};
                child.path.push_back(next);
                child.f = child.g + lattice_distance(table.center(next), c0);
                open.push(std::move(child));
            }
        }
    }
    if (!found) throw std::runtime_error("periodic_closure: no admissible extension within K");

    std::vector<LiftedDisk> period(seq.begin(), seq.end());
    LiftedDisk end;
    if (extension.empty()) {
        end = period.back();
        period.pop_back();
    } else {
        end = extension.back();
        period.insert(period.end(), extension.begin(), extension.end() - 1);
    }
    const std::int64_t a = end.p - x0.p;
    const std::int64_t b = end.q - x0.q;
    const auto cyc = check_cyclic_sequence(table, period, a, b);
    if (!cyc.admissible()) {
        throw std::runtime_error("periodic_closure: closed itinerary fails at " + cyc.certificate.first_failure());
    }
    PeriodicOrbit out;
    out.path = minimize_path(table, period, PathSpec::periodic(a, b));
    out.closure = PeriodicOrbit::Closure::Translation;
    out.period = out.path.length;
    out.word = path_crossings(table, out.path).letters;
    out.extension = extension.size();
    return out;
}

std::vector<PassageCase> passage_time_table(const BilliardTable& table) {
    const int n = table.n();
    if (n < 2) throw std::invalid_argument("passage_time_table needs n >= 2");
    const std::int64_t h = n / 2;
    const auto col = [&](std::int64_t j, std::int64_t row) { return table.disk_at_column(j, row); };
    std::vector<PassageCase> cases;
    // a then b_n: enter through x = 0 high up, bounce on the floor disk h, leave through gap n.
    cases.push_back({"a then b_n", "a b" + std::to_string(n), 0.0, kSqrt5,
                     {col(-h, 0), col(0, 1), col(h, 0), col(n + h - 1, 2)}});
    // b_1 then b_n^-1: up through gap 1, ceiling bounce at disk h, down through gap n.
    cases.push_back({"b_1 then b_n^-1", "b1 B" + std::to_string(n), 0.0, kSqrt5,
                     {col(h + 1, -1), col(0, 0), col(h, 1), col(n, 0), col(n - h - 1, -1)}});
    // a then a: diagonal zigzag between corner disks.
    cases.push_back({"a then a", "a a", 0.0, kSqrt2, {col(-n, 0), col(0, 1), col(n, 0), col(2 * n, 1)}});
    // b_1 then b_n: diagonal across the cell between opposite corners.
    cases.push_back({"b_1 then b_n", "b1 b" + std::to_string(n), 0.0, kSqrt2,
                     {col(h, -1), col(0, 0), col(n, 1), col(h, 2)}});
    for (auto& c : cases) {
        const auto seq = check_sequence(table, c.disks);
        if (!seq.admissible()) {
            throw std::runtime_error("passage instance '" + c.name + "' is not admissible at " +
                                     seq.certificate.first_failure());
        }
        const auto path = minimize_path(table, c.disks, PathSpec::free());
        if (!path.converged || path.left_admissible_class) {
            throw std::runtime_error("passage instance '" + c.name + "' did not minimize cleanly");
        }
        const auto cr = path_crossings(table, path);
        const auto target = parse_letters(c.letters, n);
        bool located = false;
        for (std::size_t i = 0; i + 1 < cr.letters.size() && !located; ++i) {
            if (cr.letters[i] == target[0] && cr.letters[i + 1] == target[1]) {
                c.time = cr.times[i + 1] - cr.times[i];
                located = true;
            }
        }
        if (!located) {
            throw std::runtime_error("passage instance '" + c.name + "' crosses '" + to_text(cr.letters) +
                                     "' instead of '" + c.letters + "'");
        }
    }
    return cases;
}

std::string orbit_to_json(const BilliardTable& table, const PeriodicOrbit& orbit) {
    nlohmann::json j;
    j["n"] = table.n();
    j["r"] = table.r();
    j["closure"] = orbit.closure == PeriodicOrbit::Closure::Doubling ? "doubling" : "translation";
    j["translation"] = {orbit.path.spec.a, orbit.path.spec.b};
    nlohmann::json disks = nlohmann::json::array();
    for (const auto& d : orbit.path.disks) disks.push_back({d.disk_id, d.p, d.q});
    j["disks"] = disks;
    j["angles"] = orbit.path.theta;
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : orbit.path.vertices) verts.push_back({v.x, v.y});
    j["vertices"] = verts;
    j["length"] = orbit.path.length;
    j["period"] = orbit.period;
    j["word"] = to_text(orbit.word);
    j["extension"] = orbit.extension;
    const auto rot = periodic_rotation(orbit.word, orbit.period);
    j["rotation"] = {{"speed", rot.speed}, {"direction", to_text(rot.direction)}};
    return j.dump(2);
}

PeriodicOrbit orbit_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    PeriodicOrbit out;
    out.closure = j.at("closure").get<std::string>() == "doubling" ? PeriodicOrbit::Closure::Doubling
                                                                  : PeriodicOrbit::Closure::Translation;
    const auto tr = j.at("translation");
    out.path.spec = out.closure == PeriodicOrbit::Closure::Doubling
                        ? PathSpec::free()
                        : PathSpec::periodic(tr[0].get<std::int64_t>(), tr[1].get<std::int64_t>());
    for (const auto& d : j.at("disks")) {
        out.path.disks.push_back({d[0].get<int>(), d[1].get<std::int64_t>(), d[2].get<std::int64_t>()});
    }
    out.path.theta = j.at("angles").get<std::vector<double>>();
    for (const auto& v : j.at("vertices")) out.path.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    out.path.length = j.at("length").get<double>();
    out.period = j.at("period").get<double>();
    out.word = parse_letters(j.at("word").get<std::string>());
    out.extension = j.at("extension").get<std::size_t>();
    return out;
}

}  // namespace lorentz
