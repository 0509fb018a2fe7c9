#pragma once
/**
 * @file rotation.hpp
 * @brief Rotation vectors of trajectory segments and periodic orbits:
 * sampling of the rotation set, constructed admissible rotation vectors, and
 * the periodic-closure density check.
 */

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lorentz/flow.hpp"
#include "lorentz/rotation_vector.hpp"
#include "lorentz/variational.hpp"

namespace lorentz {

/// s = |reduced crossing word| / T, e = the word's leading prefix.
RotationVector rotation_of_segment(const TrajectorySegment& seg, std::size_t depth = kDefaultPrefixDepth);

/// Same for a free-mode broken path, with T its length.
RotationVector rotation_of_path(const BilliardTable& table, const BrokenPath& path,
                                std::size_t depth = kDefaultPrefixDepth);

struct RotationSample {
    std::uint64_t seed{0};  ///< seed of the accepted draw
    std::size_t collisions{0};
    std::size_t word_len{0};
    std::size_t truncated_letters{0};
    std::size_t k{0};  ///< a-letters of the kept blocks
    std::size_t m{0};  ///< b-letters of the kept blocks
    std::size_t s{0};  ///< a-blocks
    double abs_dx{0.0};
    double abs_dy{0.0};
    RotationVector rotation;
};

struct RotationSet {
    double T{0.0};
    std::vector<RotationSample> samples;
    std::size_t resampled{0};  ///< degenerate draws replaced by a fresh draw
};

/**
 * N Liouville samples, each simulated for time T. Sample i draws from
 * derive_seed(seed, i, attempt); a degenerate segment moves to the next
 * attempt and is counted in `resampled`. Output does not depend on the thread
 * count (0 means the default).
 */
RotationSet sample_rotation_set(const BilliardTable& table, std::size_t N, double T, std::uint64_t seed,
                                std::size_t threads = 0);

/// CSV with header seed,n,r,T,collisions,word_len,truncated_letters,speed,prefix.
std::string rotation_csv(const BilliardTable& table, const RotationSet& set);

/// Largest target speed admissible_vector accepts: 1/sqrt 5 - 0.5/n.
double admissible_speed_limit(int n);

struct AdmissibleVectorOptions {
    std::size_t closure_K{10};
    double speed_tolerance{0.05};  ///< relative
    std::size_t max_rounds{6};
};

struct AdmissibleVector {
    PeriodicOrbit orbit;
    RotationVector achieved;
    std::size_t idle_bounces{0};
    std::size_t letters{0};   ///< |w|
    double free_time{0.0};    ///< length of the realized free path (T_m before closing)
    bool target_reached{false};
};

/**
 * Periodic orbit with rotation vector close to (target_speed, w): realize_orbit
 * on w, idle bounces inserted at the rate that brings the speed down to the
 * target, then periodic_closure. target_speed = 0 gives the pure idle orbit
 * (vertical bounce between a floor and a ceiling disk). When the realization
 * is already slower than the target, it is returned with target_reached
 * false. Throws std::invalid_argument for targets outside
 * [0, admissible_speed_limit(n)].
 */
AdmissibleVector admissible_vector(const BilliardTable& table, const ReducedWord& w, double target_speed,
                                   const AdmissibleVectorOptions& options = {});

struct DensityResult {
    RotationVector segment;
    RotationVector periodic;
    double speed_gap{0.0};
    std::size_t prefix_depth{0};  ///< common prefix of the segment word and the periodic direction
    std::size_t segment_letters{0};
    PeriodicOrbit orbit;
};

/**
 * Closes the segment's scatterer sequence (the disk under the initial point,
 * when it starts on a boundary, then every collision) with periodic_closure
 * and compares rotation vectors. Throws std::invalid_argument when the
 * sequence is not admissible.
 */
DensityResult density_check(const BilliardTable& table, const TrajectorySegment& seg, std::size_t K = 10);

/// Same for a free-mode broken path through an admissible sequence.
DensityResult density_check(const BilliardTable& table, const BrokenPath& path, std::size_t K = 10);

}  // namespace lorentz
