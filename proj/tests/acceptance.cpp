// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
// Exit status 0 only when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lorentz/entropy.hpp"
#include "lorentz/flow.hpp"
#include "lorentz/parallel.hpp"
#include "lorentz/rotation.hpp"
#include "lorentz/variational.hpp"
#include "oracles.hpp"

using namespace lorentz;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt5 = std::sqrt(5.0);

// 1, 2: speed bound and block inequalities.
constexpr std::size_t kRotationSamples = 10000;
constexpr double kRotationT = 500.0;
constexpr double kSpeedTolerance = 0.05;
// 3: construction.
constexpr std::size_t kConstructionWords = 100;
constexpr std::size_t kConstructionLength = 200;
constexpr double kStraightTolerance = 1e-6;
constexpr std::size_t kStabilityWords = 3;
constexpr double kStabilityFactor = 2.0;  // max c / min c over n
// 4: variational.
constexpr std::size_t kVariationalSequences = 100;
constexpr double kResidualTolerance = 1e-8;
constexpr double kGradientTolerance = 1e-6;
constexpr double kOracleTolerance = 1e-6;
// 5: density.
constexpr std::size_t kDensitySamples = 20;
constexpr std::size_t kClosureK = 10;
// 6: entropy band.
constexpr double kBandSlack = 0.02;
constexpr std::size_t kFitLength = 200;
constexpr std::size_t kFitLength64 = 50;
constexpr std::size_t kFitWords64 = 2;
constexpr std::size_t kItinerarySamples = 10000;
constexpr double kItineraryT = 10.0;
// 7: generating partition.
constexpr std::size_t kPairs = 1000;
constexpr double kPairT = 2.0;
constexpr double kPairPerturbation = 1e-3;
// 8: scaling.
constexpr std::size_t kMinCollisions = 100000;
constexpr double kScalingFactor = 2.0;
constexpr double kBandFactor = 2.0;  // max / min of h_map / log n

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("criterion %d [%s] %s: %s\n", id, pass ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

ReducedWord random_word(int n, std::size_t length, Rng& rng) {
    std::vector<Letter> out;
    while (out.size() < length) {
        const auto pick = rng.below(static_cast<std::uint64_t>(2 * (n + 1)));
        const int sign = pick % 2 == 0 ? 1 : -1;
        const int idx = static_cast<int>(pick / 2);
        const Letter l = idx == 0 ? Letter::a(sign) : Letter::b(idx, sign);
        if (!out.empty() && l.is_inverse_of(out.back())) continue;
        out.push_back(l);
    }
    return ReducedWord::from_letters(out);
}

struct WordRun {
    bool ok{false};
    bool equal{false};
    double max_passage{0.0};   // over passages other than a-a
    double max_straight{0.0};  // a-a passages
    double speed{0.0};         // letters per unit length of the free orbit
    std::string error;
};

WordRun run_word(const BilliardTable& t, const ReducedWord& w) {
    WordRun out;
    try {
        const auto orbit = realize_orbit(t, w);
        out.ok = true;
        out.equal = reduce(orbit.crossings.letters) == w && orbit.crossings.letters.size() == w.size() &&
                    orbit.realization.sequence.admissible() && !orbit.path.left_admissible_class;
        const auto times = passage_times(orbit.crossings);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const Letter& x = orbit.crossings.letters[i];
            const Letter& y = orbit.crossings.letters[i + 1];
            if (x == y && x.kind == Letter::Kind::A) {
                out.max_straight = std::max(out.max_straight, times[i]);
            } else {
                out.max_passage = std::max(out.max_passage, times[i]);
            }
        }
        out.speed = static_cast<double>(w.size()) / orbit.path.length;
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

std::vector<WordRun> run_words(int n, std::size_t count, std::size_t length, std::uint64_t seed) {
    const BilliardTable t(n, 1.0 / (10.0 * n));
    std::vector<WordRun> runs(count);
    parallel_for(count, 0, [&](std::size_t i) {
        Rng rng(derive_seed(seed, i));
        runs[i] = run_word(t, random_word(n, length, rng));
    });
    return runs;
}

double fitted_c(int n, const std::vector<WordRun>& runs) {
    double worst = 0.0;
    for (const auto& r : runs) worst = std::max(worst, r.max_passage);
    return n * std::max(0.0, worst - kSqrt5);
}

double mean_speed(const std::vector<WordRun>& runs) {
    double s = 0.0;
    std::size_t k = 0;
    for (const auto& r : runs) {
        if (!r.ok) continue;
        s += r.speed;
        ++k;
    }
    return k ? s / static_cast<double>(k) : 0.0;
}

void speed_and_blocks() {
    bool bound_ok = true;
    bool speed_ok = true;
    bool blocks_ok = true;
    std::string detail1;
    std::string detail2;
    std::size_t checked = 0;
    for (const int n : {2, 5, 10}) {
        const BilliardTable t(n, 1.0 / (4.0 * n));
        const auto set = sample_rotation_set(t, kRotationSamples, kRotationT, 1000 + static_cast<std::uint64_t>(n));
        double max_s = 0.0;
        std::size_t word_violations = 0;
        std::size_t block_violations = 0;
        for (const auto& s : set.samples) {
            const double trunc = static_cast<double>(s.truncated_letters);
            if (static_cast<double>(s.word_len) > 2.0 * kSqrt2 * kRotationT + 2.0 + trunc) ++word_violations;
            max_s = std::max(max_s, s.rotation.speed);
            const double slack = 2.0 * trunc;
            if (s.abs_dx < static_cast<double>(s.k) - static_cast<double>(s.s) - slack ||
                s.abs_dy < static_cast<double>(s.m) - 1.0 - slack) {
                ++block_violations;
            }
            ++checked;
        }
        bound_ok = bound_ok && word_violations == 0 && set.samples.size() == kRotationSamples;
        speed_ok = speed_ok && max_s <= 2.0 * kSqrt2 + kSpeedTolerance;
        blocks_ok = blocks_ok && block_violations == 0;
        detail1 += fmt("n=%d max s %.4f, |W| violations %zu (resampled %zu); ", n, max_s, word_violations,
                       set.resampled);
        detail2 += fmt("n=%d violations %zu/%zu; ", n, block_violations, set.samples.size());
    }
    report(1, "speed bound", bound_ok && speed_ok,
           detail1 + fmt("limit 2 sqrt 2 + %.2f = %.4f", kSpeedTolerance, 2.0 * kSqrt2 + kSpeedTolerance));
    report(2, "block inequalities", blocks_ok, detail2 + fmt("%zu segments", checked));
}

// Realized words for n = 8, 16, 32 feed both the stability check and the
// entropy fit.
std::map<int, std::vector<WordRun>> stability_runs;

void construction() {
    const auto runs = run_words(10, kConstructionWords, kConstructionLength, 3);
    std::size_t realized = 0;
    std::size_t equal = 0;
    double straight = 0.0;
    std::string first_error;
    for (const auto& r : runs) {
        realized += r.ok;
        equal += r.equal;
        straight = std::max(straight, r.max_straight);
        if (!r.ok && first_error.empty()) first_error = r.error;
    }
    const double c10 = fitted_c(10, runs);
    std::string detail = fmt("n=10: %zu/%zu realized, %zu words equal, c=%.3f, max a-a %.9f (limit sqrt 2 + %.0e); ",
                             realized, runs.size(), equal, c10, straight, kStraightTolerance);
    bool pass = equal == runs.size() && straight <= kSqrt2 + kStraightTolerance && std::isfinite(c10);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const int n : {8, 16, 32}) {
        stability_runs[n] = run_words(n, kStabilityWords, kFitLength, 30 + static_cast<std::uint64_t>(n));
        const auto& rs = stability_runs[n];
        const double c = fitted_c(n, rs);
        std::size_t ok = 0;
        for (const auto& r : rs) {
            ok += r.equal;
            straight = std::max(straight, r.max_straight);
        }
        pass = pass && ok == rs.size() && std::isfinite(c);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
        detail += fmt("n=%d c=%.3f (%zu/%zu equal); ", n, c, ok, rs.size());
    }
    const bool stable = lo > 0.0 ? hi / lo <= kStabilityFactor : hi == 0.0;
    pass = pass && stable && straight <= kSqrt2 + kStraightTolerance;
    detail += fmt("stability max/min %.2f (limit %.1f)", lo > 0.0 ? hi / lo : 0.0, kStabilityFactor);
    if (!first_error.empty()) detail += "; first failure: " + first_error;
    report(3, "construction", pass, detail);
}

void variational() {
    const BilliardTable t(6, 0.05);
    std::vector<double> residual(kVariationalSequences);
    std::vector<double> grad_err(kVariationalSequences);
    std::vector<double> oracle_err(kVariationalSequences);
    std::vector<int> converged(kVariationalSequences);
    parallel_for(kVariationalSequences, 0, [&](std::size_t i) {
        Rng rng(derive_seed(4, i));
        const auto seq = random_admissible_sequence(t, 10, rng);
        const auto path = minimize_path(t, seq, PathSpec::free());
        converged[i] = path.converged && !path.left_admissible_class;
        residual[i] = path.max_residual();
        std::vector<double> theta(seq.size());
        for (auto& a : theta) a = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const auto g = path_gradient(t, seq, PathSpec::free(), theta);
        double err = 0.0;
        for (std::size_t k = 0; k < seq.size(); ++k) {
            const double h = 1e-6;
            auto up = theta;
            auto dn = theta;
            up[k] += h;
            dn[k] -= h;
            const double fd =
                (path_length(t, seq, PathSpec::free(), up) - path_length(t, seq, PathSpec::free(), dn)) / (2 * h);
            err = std::max(err, std::abs(g[k] - fd));
        }
        grad_err[i] = err;
        oracle_err[i] = std::abs(path.length - oracle::grid_oracle_length(t, seq));
    });
    const double r = *std::max_element(residual.begin(), residual.end());
    const double g = *std::max_element(grad_err.begin(), grad_err.end());
    const double o = *std::max_element(oracle_err.begin(), oracle_err.end());
    const auto conv = static_cast<std::size_t>(std::count(converged.begin(), converged.end(), 1));
    report(4, "variational", conv == kVariationalSequences && r < kResidualTolerance && g < kGradientTolerance &&
                                 o < kOracleTolerance,
           fmt("%zu/%zu converged, max residual %.2e (limit %.0e), max gradient error %.2e (limit %.0e), max "
               "oracle gap %.2e (limit %.0e)",
               conv, kVariationalSequences, r, kResidualTolerance, g, kGradientTolerance, o, kOracleTolerance));
}

// Free orbit through a random admissible walk, cut at the first vertex past
// arc length T.
BrokenPath admissible_segment(const BilliardTable& t, double T, Rng& rng) {
    auto seq = random_admissible_sequence(t, static_cast<std::size_t>(4 * T), rng);
    const auto full = minimize_path(t, seq, PathSpec::free());
    double arc = 0.0;
    std::size_t cut = 0;
    while (cut + 1 < full.vertices.size() && arc < T) {
        arc += (full.vertices[cut + 1] - full.vertices[cut]).norm();
        ++cut;
    }
    seq.resize(cut + 1);
    return minimize_path(t, seq, PathSpec::free());
}

void density() {
    const BilliardTable t(5, 0.04);
    std::vector<double> gaps;
    std::vector<double> depths;
    std::string detail;
    for (const double T : {30.0, 60.0, 120.0}) {
        std::vector<double> gap(kDensitySamples);
        std::vector<double> depth(kDensitySamples);
        parallel_for(kDensitySamples, 0, [&](std::size_t i) {
            Rng rng(derive_seed(7, i, static_cast<std::uint64_t>(T)));
            const auto path = admissible_segment(t, T, rng);
            const auto d = density_check(t, path, kClosureK);
            gap[i] = d.speed_gap;
            depth[i] = static_cast<double>(d.prefix_depth);
        });
        double g = 0.0;
        double dp = 0.0;
        for (std::size_t i = 0; i < kDensitySamples; ++i) {
            g += gap[i];
            dp += depth[i];
        }
        gaps.push_back(g / kDensitySamples);
        depths.push_back(dp / kDensitySamples);
        detail += fmt("T=%g mean gap %.4f depth %.1f; ", T, gaps.back(), depths.back());
    }
    const bool pass = gaps[0] > gaps[1] && gaps[1] > gaps[2] && depths[0] <= depths[1] && depths[1] <= depths[2];
    report(5, "density trend", pass, detail + fmt("n=5, %zu segments per T, K=%zu", kDensitySamples, kClosureK));
}

void entropy_band() {
    const double lo = 1.0 / kSqrt5 - kBandSlack;
    const double hi = 2.0 * kSqrt2 + kBandSlack;
    bool in_band = true;
    bool estimate_ok = true;
    std::string detail;
    for (const int n : {8, 16, 32, 64}) {
        if (!stability_runs.count(n)) stability_runs[n] = run_words(n, kFitWords64, kFitLength64, 60);
        const double speed = mean_speed(stability_runs.at(n));
        const double c = n * (1.0 / kSqrt5 - speed);
        const auto b = htop_bounds(n, c);
        const double ln = std::log(static_cast<double>(n));
        const double rl = b.lower / ln;
        const double ru = b.upper / ln;
        in_band = in_band && rl >= lo && rl <= hi && ru >= lo && ru <= hi;
        const BilliardTable t(n, 1.0 / (4.0 * n));
        const auto count = count_itineraries(t, t.r() / 10.0, kItinerarySamples, kItineraryT, 600 + n);
        estimate_ok = estimate_ok && count.htop_lower_estimate <= b.upper;
        detail += fmt("n=%d c=%.2f lower/log n %.3f upper/log n %.3f estimate %.3f <= %.3f; ", n, c, rl, ru,
                      count.htop_lower_estimate, b.upper);
    }
    report(6, "entropy band", in_band && estimate_ok, detail + fmt("band [%.3f, %.3f]", lo, hi));
}

PhasePoint perturbed(const BilliardTable& t, const PhasePoint& p, double d, Rng& rng) {
    for (;;) {
        PhasePoint q = p;
        q.position.x += rng.uniform(-d, d);
        q.position.y += rng.uniform(-d, d);
        const double a = rng.uniform(-d, d);
        q.velocity = {p.velocity.x * std::cos(a) - p.velocity.y * std::sin(a),
                      p.velocity.x * std::sin(a) + p.velocity.y * std::cos(a)};
        if (!t.inside_obstacle(q.position)) return q;
    }
}

void generating_partition() {
    const BilliardTable t(4, 0.05);
    const double eps0 = t.r() / 10.0;
    Rng rng(8);
    std::size_t pairs = 0;
    std::size_t coinciding = 0;
    std::size_t ties = 0;
    std::size_t counterexamples = 0;
    while (pairs < kPairs) {
        const auto p = sample_liouville(t, rng);
        const auto q = perturbed(t, p, kPairPerturbation, rng);
        const auto s1 = simulate(t, p, StopRule::at_time(kPairT));
        const auto s2 = simulate(t, q, StopRule::at_time(kPairT));
        if (s1.degenerate || s2.degenerate) continue;
        ++pairs;
        const auto i1 = itinerary_of(t, eps0, s1);
        const auto i2 = itinerary_of(t, eps0, s2);
        if (i1.tie || i2.tie) {
            ++ties;
            continue;
        }
        if (i1.key() != i2.key()) continue;
        ++coinciding;
        if (!(i1.word == i2.word)) ++counterexamples;
    }
    report(7, "generating partition", counterexamples == 0 && coinciding > 0,
           fmt("n=4, %zu pairs, %zu identical itineraries, %zu counterexamples, %zu tie-flagged", pairs, coinciding,
               counterexamples, ties));
}

void scaling() {
    std::string detail = "n=5: ";
    bool flow_ok = true;
    double prev = 0.0;
    for (const int k : {40, 80, 160, 320}) {
        const double r = 1.0 / k;
        const BilliardTable t(5, r);
        const double T = 10.0 / r;
        const auto samples = static_cast<std::size_t>(
            1.2 * static_cast<double>(kMinCollisions) * mean_free_time_formula(t) / T) + 1;
        const auto s = metric_entropy(t, T, samples, 800 + static_cast<std::uint64_t>(k), kMinCollisions);
        const double ratio = s.lambda / (-r * std::log(r));
        if (prev > 0.0) flow_ok = flow_ok && std::max(ratio / prev, prev / ratio) <= kScalingFactor;
        prev = ratio;
        detail += fmt("r=1/%d lambda/(-r log r) %.2f (%zu collisions); ", k, ratio, s.collisions);
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    detail += "r=1/(4n): ";
    for (const int n : {5, 10, 20, 40}) {
        const BilliardTable t(n, 1.0 / (4.0 * n));
        const double T = 250.0;
        const auto samples = static_cast<std::size_t>(
            1.2 * static_cast<double>(kMinCollisions) * mean_free_time_formula(t) / T) + 1;
        const auto s = metric_entropy(t, T, samples, 900 + static_cast<std::uint64_t>(n), kMinCollisions);
        const double ratio = s.h_map / std::log(static_cast<double>(n));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        detail += fmt("n=%d h_map/log n %.3f (%zu collisions); ", n, ratio, s.collisions);
    }
    detail += fmt("band [%.3f, %.3f], max/min %.2f (limit %.1f); consecutive flow ratios within %.1f", lo, hi,
                  hi / lo, kBandFactor, kScalingFactor);
    report(8, "entropy scaling", flow_ok && hi / lo <= kBandFactor, detail);
}

void oracles() {
    std::size_t reduce_bad = 0;
    std::mt19937_64 gen(9);
    for (int i = 0; i < 1000; ++i) {
        std::uniform_int_distribution<int> pick(0, 5);
        std::vector<Letter> w;
        for (int k = 0; k < 200; ++k) {
            const int c = pick(gen);
            const int sign = c % 2 == 0 ? 1 : -1;
            w.push_back(c / 2 == 0 ? Letter::a(sign) : Letter::b(c / 2, sign));
        }
        const auto r = reduce(w);
        if (std::vector<Letter>(r.letters().begin(), r.letters().end()) != oracle::scan_reduce(w)) ++reduce_bad;
    }

    const BilliardTable t(3, 0.05);
    Rng rng(10);
    std::size_t collision_bad = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto p = sample_liouville(t, rng);
        const double horizon = 0.5 + 6.0 * rng.uniform();
        const auto ev = next_collision(t, p, horizon);
        const auto ref = oracle::brute_force_hit(t, p.position, p.velocity, horizon);
        if (ev.has_value() != ref.has_value()) {
            ++collision_bad;
        } else if (ev && (!(ev->disk == ref->second) || std::abs(ev->time - ref->first) > 1e-12)) {
            ++collision_bad;
        }
    }

    std::size_t stadium_bad = 0;
    std::size_t stadium_checked = 0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (stadium_checked < 1000) {
        const double r = 0.03 + 0.07 * u(gen);
        const Vec2 c1{u(gen), u(gen)};
        const Vec2 c2{u(gen), u(gen)};
        if ((c2 - c1).norm() < 1e-3) continue;
        const Vec2 mid = 0.5 * (c1 + c2);
        const Vec2 other{mid.x + (u(gen) - 0.5) * 0.8, mid.y + (u(gen) - 0.5) * 0.8};
        if (std::abs(point_segment_distance(other, c1, c2) - 2 * r) < 1e-5) continue;
        ++stadium_checked;
        if (disk_meets_stadium(other, c1, c2, r) != oracle::sampled_meets_stadium(other, c1, c2, r, gen)) {
            ++stadium_bad;
        }
    }

    std::size_t count_bad = 0;
    for (int L = 0; L <= 4; ++L) count_bad += word_count(2, L) != oracle::enumerate_reduced(2, L);

    report(9, "oracle equivalences", reduce_bad + collision_bad + stadium_bad + count_bad == 0,
           fmt("reduction %zu/1000 mismatches, next_collision %zu/2000, stadium %zu/%zu, word_count %zu/5", reduce_bad,
               collision_bad, stadium_bad, stadium_checked, count_bad));
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    const auto timed = [&](void (*fn)()) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        std::printf("  (%.1f s)\n", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    };
    timed(speed_and_blocks);
    timed(construction);
    timed(variational);
    timed(density);
    timed(entropy_band);
    timed(generating_partition);
    timed(scaling);
    timed(oracles);
    std::printf("%d criteria failed; total %.1f s\n", failures,
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return failures == 0 ? 0 : 1;
}
