#include "lorentz/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "lorentz/csv.hpp"
#include "lorentz/parallel.hpp"

namespace lorentz {

namespace {

double frac(double x) { return x - std::floor(x); }

void check_eps0(const BilliardTable& table, double eps0) {
    if (!(eps0 > 0.0) || !(eps0 < table.r())) throw std::invalid_argument("partition needs 0 < eps0 < r");
}

void append_cell(Itinerary& it, const CellLookup& c) {
    it.tie = it.tie || c.tie;
    if (it.cells.empty() || !(it.cells.back() == c.cell)) it.cells.push_back(c.cell);
}

// Parameters in (0, 1) where the chord p -> q meets x = v for v = base + m + offset, any integer m.
void line_hits(double p, double q, double offset, int family, std::vector<std::pair<double, int>>& out) {
    if (p == q) return;
    const double lo = std::min(p, q);
    const double hi = std::max(p, q);
    for (double m = std::ceil(lo - offset); m + offset <= hi; m += 1.0) {
        const double t = (m + offset - p) / (q - p);
        if (t > 0.0 && t < 1.0) out.emplace_back(t, family);
    }
}

void chord_cells(const BilliardTable& table, double eps0, Vec2 p, Vec2 q, Itinerary& it) {
    std::vector<std::pair<double, int>> hits;
    line_hits(p.x, q.x, eps0, 0, hits);
    line_hits(p.x, q.x, 1.0 - eps0, 0, hits);
    for (int k = 0; k < table.n(); ++k) line_hits(p.x, q.x, static_cast<double>(k) / table.n(), 0, hits);
    line_hits(p.y, q.y, 0.0, 1, hits);
    line_hits(p.y, q.y, eps0, 1, hits);
    line_hits(p.y, q.y, 1.0 - eps0, 1, hits);
    std::sort(hits.begin(), hits.end());
    const double len = (q - p).norm();
    std::vector<double> cuts{0.0};
    for (std::size_t i = 0; i < hits.size(); ++i) {
        // A chord through a corner of two boundary families is ambiguous.
        if (i > 0 && hits[i].second != hits[i - 1].second &&
            (hits[i].first - hits[i - 1].first) * len < kPartitionTieTolerance) {
            it.tie = true;
        }
        cuts.push_back(hits[i].first);
    }
    cuts.push_back(1.0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] <= 0.0) continue;
        const double t = 0.5 * (cuts[i] + cuts[i + 1]);
        append_cell(it, partition_cell(table, eps0, p + t * (q - p)));
    }
}

}  // namespace

std::string to_string(const PartitionCell& c) {
    switch (c.tag) {
        case PartitionCell::Tag::Dplus:
            return "D+" + std::to_string(c.k);
        case PartitionCell::Tag::Dminus:
            return "D-" + std::to_string(c.k);
        case PartitionCell::Tag::Splus:
            return "S+";
        case PartitionCell::Tag::Sminus:
            return "S-";
        case PartitionCell::Tag::Bulk:
            break;
    }
    return "B";
}

CellLookup partition_cell(const BilliardTable& table, double eps0, Vec2 q) {
    check_eps0(table, eps0);
    const double f1 = frac(q.x);
    const double f2 = frac(q.y);
    const int n = table.n();
    const auto near = [](double a, double b) { return std::abs(a - b) < kPartitionTieTolerance; };
    CellLookup out;
    // The fractional part wraps, so 0 and 1 are the same boundary.
    const bool on_s = near(f1, eps0) || near(f1, 1.0 - eps0) || near(f1, 0.0) || near(f1, 1.0);
    if (f1 < eps0) {
        out.cell = {PartitionCell::Tag::Splus, 0};
        out.tie = on_s;
        return out;
    }
    if (f1 > 1.0 - eps0) {
        out.cell = {PartitionCell::Tag::Sminus, 0};
        out.tie = on_s;
        return out;
    }
    const int k = std::clamp(static_cast<int>(std::floor(f1 * n)), 0, n - 1);
    const bool on_column = near(f1 * n, std::round(f1 * n)) || on_s;
    const bool on_row = near(f2, eps0) || near(f2, 1.0 - eps0) || near(f2, 0.0) || near(f2, 1.0);
    if (f2 < eps0) {
        out.cell = {PartitionCell::Tag::Dplus, k};
        out.tie = on_column || on_row;
    } else if (f2 > 1.0 - eps0) {
        out.cell = {PartitionCell::Tag::Dminus, k};
        out.tie = on_column || on_row;
    } else {
        out.cell = {PartitionCell::Tag::Bulk, 0};
        out.tie = on_s || on_row;
    }
    return out;
}

std::string Itinerary::key() const {
    std::string out;
    out.reserve(cells.size() * 2);
    for (const auto& c : cells) {
        // Varint of 5k + tag: one byte per cell for n <= 25.
        auto v = static_cast<std::uint32_t>(c.k) * 5u + static_cast<std::uint32_t>(c.tag);
        while (v >= 0x80u) {
            out.push_back(static_cast<char>((v & 0x7Fu) | 0x80u));
            v >>= 7;
        }
        out.push_back(static_cast<char>(v));
    }
    return out;
}

Itinerary itinerary_of(const BilliardTable& table, double eps0, const TrajectorySegment& seg) {
    check_eps0(table, eps0);
    Itinerary it;
    it.word = seg.word();
    Vec2 from = seg.initial.position;
    for (const auto& c : seg.collisions) {
        chord_cells(table, eps0, from, c.point, it);
        from = c.point;
    }
    chord_cells(table, eps0, from, seg.final.position, it);
    return it;
}

Itinerary collision_itinerary(const BilliardTable& table, double eps0, const TrajectorySegment& seg) {
    check_eps0(table, eps0);
    Itinerary it;
    it.word = seg.word();
    for (const auto& c : seg.collisions) {
        const CellLookup l = partition_cell(table, eps0, c.point);
        it.tie = it.tie || l.tie;
        it.cells.push_back(l.cell);
    }
    return it;
}

ItineraryCount count_itineraries(const BilliardTable& table, double eps0, std::size_t N, double T, std::uint64_t seed,
                                 std::size_t threads) {
    check_eps0(table, eps0);
    if (N == 0 || !(T > 0.0)) throw std::invalid_argument("count_itineraries needs N > 0 and T > 0");
    ItineraryCount out;
    out.samples = N;
    out.T = T;
    std::unordered_set<std::string> seen;
    constexpr std::size_t kChunk = 4096;
    for (std::size_t start = 0; start < N; start += kChunk) {
        const std::size_t len = std::min(kChunk, N - start);
        std::vector<std::string> keys(len);
        std::vector<char> ties(len, 0);
        std::vector<std::size_t> retries(len, 0);
        parallel_for(len, threads, [&](std::size_t j) {
            for (std::uint64_t attempt = 0;; ++attempt) {
                Rng rng(derive_seed(seed, start + j, attempt));
                const auto seg = simulate(table, sample_liouville(table, rng), StopRule::at_time(T));
                if (seg.degenerate) {
                    ++retries[j];
                    continue;
                }
                const Itinerary it = itinerary_of(table, eps0, seg);
                keys[j] = it.key();
                ties[j] = it.tie ? 1 : 0;
                return;
            }
        });
        for (std::size_t j = 0; j < len; ++j) {
            seen.insert(std::move(keys[j]));
            out.ties += static_cast<std::size_t>(ties[j]);
            out.resampled += retries[j];
        }
    }
    out.distinct = seen.size();
    out.htop_lower_estimate = std::log(static_cast<double>(out.distinct)) / T;
    return out;
}

std::uint64_t word_count(int n, int L) { return reduced_word_count(n, L); }

EntropyBounds htop_bounds(int n, double c) {
    if (n < 2) throw std::invalid_argument("htop_bounds needs n >= 2");
    const double base = std::log(2.0 * n + 1.0);
    return {(1.0 / std::sqrt(5.0) - c / n) * base, 2.0 * std::numbers::sqrt2 * base};
}

namespace {

LyapunovSummary run_lyapunov(const BilliardTable& table, StopRule stop, std::size_t samples, std::uint64_t seed,
                             std::size_t min_collisions, std::size_t threads) {
    if (samples == 0) throw std::invalid_argument("metric entropy needs samples > 0");
    std::vector<double> log_expansion(samples, 0.0);
    std::vector<double> time(samples, 0.0);
    std::vector<std::size_t> collisions(samples, 0);
    std::vector<std::size_t> retries(samples, 0);
    parallel_for(samples, threads, [&](std::size_t i) {
        for (std::uint64_t attempt = 0;; ++attempt) {
            Rng rng(derive_seed(seed, i, attempt));
            const auto seg = simulate(table, sample_liouville(table, rng), stop);
            if (seg.degenerate || seg.corridor_trapped) {
                ++retries[i];
                continue;
            }
            const auto est = lyapunov_accumulate(table, {0.0, 0.0}, seg);
            log_expansion[i] = est.final_front.log_expansion;
            time[i] = est.total_time;
            collisions[i] = est.collisions;
            return;
        }
    });
    LyapunovSummary out;
    out.samples = samples;
    double total_time = 0.0;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double lambda = time[i] > 0.0 ? log_expansion[i] / time[i] : 0.0;
        sum += lambda;
        sum_sq += lambda * lambda;
        total_time += time[i];
        out.collisions += collisions[i];
        out.resampled += retries[i];
    }
    if (out.collisions < min_collisions) {
        throw std::runtime_error("metric entropy: " + std::to_string(out.collisions) + " collisions, need " +
                                 std::to_string(min_collisions));
    }
    const auto N = static_cast<double>(samples);
    out.lambda = sum / N;
    if (samples > 1) {
        const double var = std::max(0.0, (sum_sq - sum * sum / N) / (N - 1.0));
        out.standard_error = std::sqrt(var / N);
    }
    out.mean_free_time = total_time / static_cast<double>(out.collisions);
    out.h_map = out.lambda * out.mean_free_time;
    return out;
}

}  // namespace

LyapunovSummary metric_entropy(const BilliardTable& table, double T, std::size_t samples, std::uint64_t seed,
                               std::size_t min_collisions, std::size_t threads) {
    if (!(T > 0.0)) throw std::invalid_argument("metric entropy needs T > 0");
    return run_lyapunov(table, StopRule::at_time(T), samples, seed, min_collisions, threads);
}

double metric_entropy_flow(const BilliardTable& table, double T, std::size_t samples, std::uint64_t seed,
                           std::size_t threads) {
    return metric_entropy(table, T, samples, seed, 10000, threads).lambda;
}

double metric_entropy_map(const BilliardTable& table, std::size_t collisions, std::size_t samples,
                          std::uint64_t seed, std::size_t threads) {
    if (collisions == 0) throw std::invalid_argument("metric entropy needs collisions > 0");
    return run_lyapunov(table, StopRule::after_collisions(collisions), samples, seed, 10000, threads).h_map;
}

double mean_free_time_formula(const BilliardTable& table) {
    const double n = table.n();
    const double r = table.r();
    return (1.0 - n * std::numbers::pi * r * r) / (2.0 * n * r);
}

std::string entropy_csv(const std::vector<EntropyRow>& rows) {
    std::ostringstream os;
    os << "n,r,eps0,T,samples,distinct,htop_lower_est,htop_upper_formula,lambda_flow,mean_free_time,h_map_est\n";
    for (const auto& r : rows) {
        os << r.n << ',' << format_double(r.r) << ',' << format_double(r.eps0) << ',' << format_double(r.T) << ','
           << r.samples << ',' << r.distinct << ',' << format_double(r.htop_lower_est) << ','
           << format_double(r.htop_upper_formula) << ',' << format_double(r.lambda_flow) << ','
           << format_double(r.mean_free_time) << ',' << format_double(r.h_map_est) << '\n';
    }
    return os.str();
}

}  // namespace lorentz
