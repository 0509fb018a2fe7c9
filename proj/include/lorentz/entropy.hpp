#pragma once
/**
 * @file entropy.hpp
 * @brief The generating partition P of Q_n, itinerary counting, reduced-word
 * counting, entropy bounds and Lyapunov-based metric entropy estimates.
 *
 * With {x} the fractional part and 0 < eps0 < r, the cells are
 *   D+_k : k/n < {q1} < (k+1)/n and {q2} < eps0       (just above a row line)
 *   D-_k : k/n < {q1} < (k+1)/n and {q2} > 1 - eps0   (just below a row line)
 *   S+   : {q1} < eps0,  S- : {q1} > 1 - eps0         (beside a column line)
 *   Bulk : everything else.
 * S+ and S- take precedence over D+_k and D-_k where they overlap.
 */

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lorentz/flow.hpp"

namespace lorentz {

/// Boundary distance below which a point counts as a tie.
inline constexpr double kPartitionTieTolerance = 1e-12;

struct PartitionCell {
    enum class Tag : std::uint8_t { Dplus, Dminus, Splus, Sminus, Bulk };
    Tag tag{Tag::Bulk};
    int k{0};  ///< column index for Dplus and Dminus, 0 otherwise

    friend bool operator==(const PartitionCell&, const PartitionCell&) = default;
};

std::string to_string(const PartitionCell& c);

struct CellLookup {
    PartitionCell cell;
    bool tie{false};  ///< q lies within kPartitionTieTolerance of a cell boundary
};

/// Cell of position q. Throws std::invalid_argument unless 0 < eps0 < r.
CellLookup partition_cell(const BilliardTable& table, double eps0, Vec2 q);

struct Itinerary {
    std::vector<PartitionCell> cells;
    ReducedWord word;  ///< reduced crossing word of the segment
    bool tie{false};

    /// Compact byte string, equal exactly when the cell sequences are equal.
    std::string key() const;
};

/// Cells visited along the segment's flights, consecutive repeats collapsed.
Itinerary itinerary_of(const BilliardTable& table, double eps0, const TrajectorySegment& seg);

/// Cells of the collision points, in order (collision-map version).
Itinerary collision_itinerary(const BilliardTable& table, double eps0, const TrajectorySegment& seg);

struct ItineraryCount {
    std::size_t samples{0};
    std::size_t distinct{0};
    std::size_t ties{0};        ///< samples whose itinerary carries a tie flag
    std::size_t resampled{0};   ///< degenerate draws replaced
    double T{0.0};
    double htop_lower_estimate{0.0};  ///< log(distinct) / T
};

/**
 * Distinct flow itineraries over N Liouville samples of duration T (sample i
 * from derive_seed(seed, i, attempt)). Sampling can only under-count, so the
 * estimate is a lower bound. Throws std::invalid_argument unless N, T > 0.
 */
ItineraryCount count_itineraries(const BilliardTable& table, double eps0, std::size_t N, double T, std::uint64_t seed,
                                 std::size_t threads = 0);

/// Number of reduced words of length L over 2n+2 letters.
std::uint64_t word_count(int n, int L);

struct EntropyBounds {
    double lower{0.0};
    double upper{0.0};
};

/// lower = (1/sqrt 5 - c/n) log(2n+1), upper = 2 sqrt 2 log(2n+1). Requires n >= 2.
EntropyBounds htop_bounds(int n, double c);

struct LyapunovSummary {
    double lambda{0.0};          ///< mean positive exponent of the flow
    double standard_error{0.0};  ///< of the mean over samples
    double mean_free_time{0.0};  ///< total time / total collisions
    double h_map{0.0};           ///< lambda * mean_free_time
    std::size_t samples{0};
    std::size_t collisions{0};
    std::size_t resampled{0};
};

/**
 * Flow exponent from lyapunov_accumulate (front starting flat) averaged over
 * `samples` Liouville segments of duration T; equals the metric entropy by the
 * Pesin identity. The map entropy is the flow value times the mean free time.
 * Throws std::runtime_error when fewer than min_collisions collisions occur
 * in total.
 */
LyapunovSummary metric_entropy(const BilliardTable& table, double T, std::size_t samples, std::uint64_t seed,
                               std::size_t min_collisions = 10000, std::size_t threads = 0);

/// Flow estimate only.
double metric_entropy_flow(const BilliardTable& table, double T, std::size_t samples, std::uint64_t seed,
                           std::size_t threads = 0);

/// Map estimate: runs segments of `collisions` collisions each.
double metric_entropy_map(const BilliardTable& table, std::size_t collisions, std::size_t samples,
                          std::uint64_t seed, std::size_t threads = 0);

/// Mean free time (pi |Q| / |dQ|) of the flow: (1 - n pi r^2) / (2 n r).
double mean_free_time_formula(const BilliardTable& table);

struct EntropyRow {
    int n{0};
    double r{0.0};
    double eps0{0.0};
    double T{0.0};
    std::size_t samples{0};
    std::size_t distinct{0};
    double htop_lower_est{0.0};
    double htop_upper_formula{0.0};
    double lambda_flow{0.0};
    double mean_free_time{0.0};
    double h_map_est{0.0};
};

/// CSV with header n,r,eps0,T,samples,distinct,htop_lower_est,htop_upper_formula,lambda_flow,mean_free_time,h_map_est.
std::string entropy_csv(const std::vector<EntropyRow>& rows);

}  // namespace lorentz
