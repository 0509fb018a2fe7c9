#pragma once
/**
 * @file admissibility.hpp
 * @brief Admissible scatterer sequences and their construction from words.
 *
 * A sequence of lifted disks is admissible when the convex hull of every
 * consecutive pair misses all other disks, and no disk meets the hull of its
 * two neighbours in the sequence. For such sequences the shortest broken line
 * through the disks is a genuine billiard orbit.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lorentz/geometry.hpp"
#include "lorentz/random.hpp"
#include "lorentz/symbolic.hpp"

namespace lorentz {

/// Per-index outcome of the pair and triple tests.
struct AdmissibilityCertificate {
    std::vector<bool> pair_ok;    ///< pair_ok[i] covers (sigma_i, sigma_{i+1})
    std::vector<bool> triple_ok;  ///< triple_ok[i] covers (sigma_i, sigma_{i+1}, sigma_{i+2})

    bool admissible() const;
    /// Index of the first failing pair or triple, as text, or empty when admissible.
    std::string first_failure() const;
};

struct AdmissibleSequence {
    std::vector<LiftedDisk> disks;
    AdmissibilityCertificate certificate;

    bool admissible() const { return certificate.admissible(); }
};

/// Hull of the two disks misses every other lifted disk (tangency allowed).
bool check_pair(const BilliardTable& table, const LiftedDisk& d1, const LiftedDisk& d2);

/// The middle disk does not meet the hull of its two neighbours.
bool check_triple(const BilliardTable& table, const LiftedDisk& prev, const LiftedDisk& mid, const LiftedDisk& next);

/// Certificate for every consecutive pair and triple; throws std::invalid_argument below length 2.
AdmissibleSequence check_sequence(const BilliardTable& table, const std::vector<LiftedDisk>& disks);

/// Cyclic version for a periodic itinerary sigma_0..sigma_{P-1} continued by
/// sigma_0 + (a, b): also checks the seam pair and the two seam triples.
AdmissibleSequence check_cyclic_sequence(const BilliardTable& table, const std::vector<LiftedDisk>& period,
                                         std::int64_t a, std::int64_t b);

/// Lifted disks other than d whose centres lie within `radius` of d's centre.
std::vector<LiftedDisk> disks_near(const BilliardTable& table, const LiftedDisk& d, double radius);

/// Cell (floor x, floor y) visited after each letter, starting from (0, 0).
std::vector<std::pair<std::int64_t, std::int64_t>> cell_path(std::span<const Letter> word);

/// Lifted disks whose boundaries reach into cell (cx, cy): both rows, corners included.
std::vector<LiftedDisk> cell_disks(const BilliardTable& table, std::int64_t cx, std::int64_t cy);

struct RealizeOptions {
    std::size_t window{6};  ///< vertices re-minimized when the path is extended
    std::size_t beam_width{16};  ///< nodes expanded per batch and level
    std::size_t helper_width{4};  ///< nodes per round of extra bounces inside a cell
    std::size_t max_helpers_per_cell{3};
    int max_letters_per_chord{3};
    double passage_slack{0.5};      ///< preferred: passages below sqrt 5 + passage_slack / n
    double straight_margin{0.002};  ///< a-a passages stay this far below sqrt 2
    double max_passage{4.0};        ///< hard limit on any passage
    double wall_margin{1e-6};       ///< min distance of a bounce point from the wall lines
    std::size_t expansion_budget{0};  ///< node expansions before giving up; 0 means 50 beams per letter
};

struct Realization {
    AdmissibleSequence sequence;
    std::vector<std::size_t> cell_index;  ///< index j of the cell C_j holding each bounce
    std::size_t helpers{0};               ///< bounces that cross no wall
    double estimated_length{0.0};
};

/**
 * Lifted disk sequence whose shortest broken line crosses exactly the
 * letters of w, in order.
 *
 * Search over the cells C_0, C_1, ... visited by w. Each step either crosses
 * the next letters with one chord or adds a bounce that stays in the current
 * cell. Every extension re-minimizes the last `window` vertices (the first of
 * them held fixed, the new end free) and keeps the child only when each
 * bounce lies inside its expected cell and each chord crosses exactly the
 * letters assigned to it, and a-a passages stay below sqrt 2 -
 * straight_margin. Nodes are expanded level by level in batches of
 * beam_width, followed by rounds of helper_width in-cell bounces, ranked by
 * their summed overshoot of the preferred passage caps, then the time since
 * the last crossing, then length; a level whose successors all die is
 * revisited with its next batch. The result is
 * certified by check_sequence; the word is confirmed by the caller after
 * minimizing the whole path. Throws std::runtime_error when the budget runs
 * out.
 */
Realization realize_word(const BilliardTable& table, const ReducedWord& w, const RealizeOptions& options = {});

/**
 * Disk that an idle bounce X, Y, X can use at position k (0 < k < size-1),
 * chosen as the disk in the same column on the other row of the cell of the
 * estimated bounce at X. Corner disks never idle. The pair and both new
 * triples must be admissible and the bounce at X must keep its cell.
 */
std::optional<LiftedDisk> idle_partner(const BilliardTable& table, const std::vector<LiftedDisk>& disks,
                                       std::size_t k, double angle_margin = 0.1);

/// Inserts `count` idle bounces spread evenly over the positions that admit one.
/// Returns the new sequence; throws std::runtime_error when no position admits one.
std::vector<LiftedDisk> insert_idle_runs(const BilliardTable& table, const std::vector<LiftedDisk>& disks,
                                         std::size_t count, double angle_margin = 0.1);

/// Admissible random walk of the given length; each step picks uniformly
/// among admissible disks within max_step of the current one.
std::vector<LiftedDisk> random_admissible_sequence(const BilliardTable& table, std::size_t length, Rng& rng,
                                                   double max_step = 1.5);

/// JSON text [[disk_id, p, q], ...].
std::string sequence_to_json(const std::vector<LiftedDisk>& disks);
std::vector<LiftedDisk> sequence_from_json(const std::string& text);

}  // namespace lorentz
