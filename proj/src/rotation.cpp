#include "lorentz/rotation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lorentz/csv.hpp"
#include "lorentz/parallel.hpp"

namespace lorentz {

namespace {

RotationVector word_rotation(const ReducedWord& w, double T, std::size_t depth) {
    RotationVector out;
    if (!(T > 0.0) || w.empty()) return out;
    out.speed = static_cast<double>(w.size()) / T;
    out.direction = w.prefix(depth);
    return out;
}

RotationVector orbit_rotation(const PeriodicOrbit& orbit, std::size_t depth) {
    return periodic_rotation(orbit.word, orbit.period, depth);
}

void require_admissible(const BilliardTable& table, const std::vector<LiftedDisk>& seq) {
    const auto checked = check_sequence(table, seq);
    if (!checked.admissible()) {
        throw std::invalid_argument("density_check: sequence not admissible at " + checked.certificate.first_failure());
    }
}

DensityResult compare(const BilliardTable& table, const std::vector<LiftedDisk>& seq, const ReducedWord& word,
                      double T, std::size_t K) {
    DensityResult out;
    out.segment = word_rotation(word, T, kDefaultPrefixDepth);
    out.segment_letters = word.size();
    out.orbit = periodic_closure(table, seq, K);
    out.periodic = orbit_rotation(out.orbit, kDefaultPrefixDepth);
    out.speed_gap = std::abs(out.periodic.speed - out.segment.speed);
    const auto long_direction = periodic_rotation(out.orbit.word, out.orbit.period, word.size());
    out.prefix_depth = common_prefix_length(word, long_direction.direction);
    return out;
}

}  // namespace

RotationVector rotation_of_segment(const TrajectorySegment& seg, std::size_t depth) {
    return word_rotation(seg.word(), seg.duration, depth);
}

RotationVector rotation_of_path(const BilliardTable& table, const BrokenPath& path, std::size_t depth) {
    return word_rotation(reduce(path_crossings(table, path).letters), path.length, depth);
}

RotationSet sample_rotation_set(const BilliardTable& table, std::size_t N, double T, std::uint64_t seed,
                                std::size_t threads) {
    if (!(T > 0.0)) throw std::invalid_argument("sample_rotation_set needs T > 0");
    RotationSet out;
    out.T = T;
    out.samples.resize(N);
    std::vector<std::size_t> retries(N, 0);
    parallel_for(N, threads, [&](std::size_t i) {
        for (std::uint64_t attempt = 0;; ++attempt) {
            const std::uint64_t s = derive_seed(seed, i, attempt);
            Rng rng(s);
            const PhasePoint p = sample_liouville(table, rng);
            const TrajectorySegment seg = simulate(table, p, StopRule::at_time(T));
            if (seg.degenerate) {
                ++retries[i];
                continue;
            }
            const ReducedWord w = seg.word();
            const auto blocks = block_decomposition(w);
            RotationSample& r = out.samples[i];
            r.seed = s;
            r.collisions = seg.collisions.size();
            r.word_len = w.size();
            r.truncated_letters = blocks.truncated_letters();
            r.k = blocks.k;
            r.m = blocks.m;
            r.s = blocks.s;
            r.abs_dx = seg.abs_dx;
            r.abs_dy = seg.abs_dy;
            r.rotation = word_rotation(w, seg.duration, kDefaultPrefixDepth);
            return;
        }
    });
    for (const auto c : retries) out.resampled += c;
    return out;
}

std::string rotation_csv(const BilliardTable& table, const RotationSet& set) {
    std::ostringstream os;
    os << "seed,n,r,T,collisions,word_len,truncated_letters,speed,prefix\n";
    for (const auto& s : set.samples) {
        os << s.seed << ',' << table.n() << ',' << format_double(table.r()) << ',' << format_double(set.T) << ','
           << s.collisions << ',' << s.word_len << ',' << s.truncated_letters << ','
           << format_double(s.rotation.speed) << ',' << to_text(s.rotation.direction) << '\n';
    }
    return os.str();
}

double admissible_speed_limit(int n) { return 1.0 / std::sqrt(5.0) - 0.5 / n; }

AdmissibleVector admissible_vector(const BilliardTable& table, const ReducedWord& w, double target_speed,
                                   const AdmissibleVectorOptions& options) {
    const int n = table.n();
    if (n < 2) throw std::invalid_argument("admissible_vector needs n >= 2");
    const double limit = admissible_speed_limit(n);
    if (!(target_speed >= 0.0) || target_speed > limit) {
        std::ostringstream msg;
        msg << "admissible_vector: target speed " << target_speed
            << " outside the guaranteed range [0, 1/sqrt 5 - 0.5/n] = [0, " << limit << "]";
        throw std::invalid_argument(msg.str());
    }
    AdmissibleVector out;
    out.letters = w.size();
    if (target_speed == 0.0) {
        const LiftedDisk floor = table.disk_at_column(n / 2, 0);
        const std::vector<LiftedDisk> period{floor, floor.translated(0, 1)};
        out.orbit.path = minimize_path(table, period, PathSpec::periodic(0, 0));
        out.orbit.period = out.orbit.path.length;
        out.orbit.word = path_crossings(table, out.orbit.path).letters;
        out.achieved = orbit_rotation(out.orbit, kDefaultPrefixDepth);
        out.target_reached = out.achieved.speed == 0.0;
        return out;
    }

    const RealizedOrbit real = realize_orbit(table, w);
    out.free_time = real.path.length;
    const std::vector<LiftedDisk>& base = real.realization.sequence.disks;
    out.orbit = periodic_closure(table, base, options.closure_K);
    out.achieved = orbit_rotation(out.orbit, kDefaultPrefixDepth);
    const auto close_enough = [&](double s) {
        return std::abs(s - target_speed) <= options.speed_tolerance * target_speed;
    };
    if (close_enough(out.achieved.speed)) {
        out.target_reached = true;
        return out;
    }
    if (out.achieved.speed < target_speed) return out;

    // Each idle bounce adds a nearly fixed time; start from the vertical gap
    // estimate and correct with the measured increment.
    const double letters = out.achieved.speed * out.orbit.period;
    const double base_period = out.orbit.period;
    double per_bounce = 2.0 * (1.0 - 2.0 * table.r());
    for (std::size_t round = 0; round < options.max_rounds; ++round) {
        const double want = letters / target_speed - base_period;
        const auto count = static_cast<std::size_t>(std::max(1.0, std::round(want / per_bounce)));
        const auto seq = insert_idle_runs(table, base, count);
        PeriodicOrbit orbit = periodic_closure(table, seq, options.closure_K);
        const RotationVector rv = orbit_rotation(orbit, kDefaultPrefixDepth);
        out.orbit = std::move(orbit);
        out.achieved = rv;
        out.idle_bounces = count;
        if (close_enough(rv.speed)) {
            out.target_reached = true;
            return out;
        }
        if (out.orbit.period > base_period) per_bounce = (out.orbit.period - base_period) / static_cast<double>(count);
    }
    return out;
}

DensityResult density_check(const BilliardTable& table, const TrajectorySegment& seg, std::size_t K) {
    std::vector<LiftedDisk> seq;
    if (const auto d = table.disk_containing(seg.initial.position)) seq.push_back(*d);
    for (const auto& c : seg.collisions) seq.push_back(c.disk);
    require_admissible(table, seq);
    return compare(table, seq, seg.word(), seg.duration, K);
}

DensityResult density_check(const BilliardTable& table, const BrokenPath& path, std::size_t K) {
    if (path.spec.mode != PathMode::Free) throw std::invalid_argument("density_check needs a free-mode path");
    require_admissible(table, path.disks);
    return compare(table, path.disks, reduce(path_crossings(table, path).letters), path.length, K);
}

}  // namespace lorentz
