#pragma once
/**
 * @file flow.hpp
 * @brief Event-driven billiard flow on the lifted table.
 *
 * Motion is piecewise linear at unit speed, so free flights are integrated
 * exactly; the only numerical work is locating the next collision. The
 * collision search walks the horizontal bands |y - q| <= r that contain the
 * scatterer rows, in temporal order, and inside a band scans columns in the
 * direction of motion.
 */

#include <cstddef>
#include <optional>
#include <vector>

#include "lorentz/geometry.hpp"
#include "lorentz/random.hpp"
#include "lorentz/symbolic.hpp"

namespace lorentz {

/// Free-flight search horizon used when the caller has no natural bound.
inline constexpr double kDefaultHorizon = 1e3;

struct PhasePoint {
    Vec2 position;
    Vec2 velocity;  ///< unit
    double time{0.0};
};

struct CollisionEvent {
    double time{0.0};
    LiftedDisk disk;
    Vec2 point;
    double cos_phi{1.0};  ///< cosine between outgoing velocity and outward normal
};

/// Earliest collision within `horizon` time units, nullopt when the ray stays free.
std::optional<CollisionEvent> next_collision(const BilliardTable& table, const PhasePoint& p, double horizon);

/// Ordered wall crossings of the straight chord from `from` to `to`.
struct WallCrossings {
    std::vector<Letter> letters;
    std::vector<double> params;  ///< chord parameter in [0, 1] of each crossing
    bool touches_wall{false};    ///< an endpoint lies on a wall line within 1e-12
};

/**
 * Letters crossed by the chord, ordered along it.
 *
 * A point belongs to cell (floor x, floor y); a line is crossed when the
 * cell index changes between the endpoints. Endpoints exactly on a line are
 * reported through touches_wall and assigned by the same floor rule, which
 * keeps consecutive chords consistent.
 */
WallCrossings wall_crossings(Vec2 from, Vec2 to, const BilliardTable& table);

struct StopRule {
    enum class Kind { Time, Collisions };
    Kind kind{Kind::Time};
    double time{0.0};
    std::size_t collisions{0};

    static StopRule at_time(double t) { return {Kind::Time, t, 0}; }
    static StopRule after_collisions(std::size_t count) { return {Kind::Collisions, 0.0, count}; }
};

struct TrajectorySegment {
    PhasePoint initial;
    PhasePoint final;
    std::vector<CollisionEvent> collisions;
    std::vector<Letter> crossings;       ///< raw wall-crossing letters in temporal order
    std::vector<double> crossing_times;  ///< flow time of each crossing
    double duration{0.0};
    double abs_dx{0.0};  ///< sum over flights of |delta x_1|
    double abs_dy{0.0};  ///< sum over flights of |delta x_2|
    bool degenerate{false};        ///< stopped on a grazing collision
    bool corridor_trapped{false};  ///< a free flight reached the default horizon
    bool touches_wall{false};      ///< some chord endpoint sat on a wall line

    ReducedWord word() const { return reduce(crossings); }
};

/// Alternates next_collision and reflect until the stop rule is met.
TrajectorySegment simulate(const BilliardTable& table, const PhasePoint& p0, StopRule stop,
                           double horizon = kDefaultHorizon);

/// Phase point with the velocity reversed (time stays put).
PhasePoint reversed(const PhasePoint& p);

/// Uniform position on the table (rejection against the disks) and uniform direction.
PhasePoint sample_liouville(const BilliardTable& table, Rng& rng);

/// Collision-space coordinates: a lifted disk, the boundary angle psi and the
/// outgoing unit velocity.
struct BoundaryState {
    LiftedDisk disk;
    double psi{0.0};
    Vec2 velocity;
};

Vec2 boundary_point(const BilliardTable& table, const BoundaryState& s);

/// One step of the collision map: free flight plus reflection. nullopt when
/// the orbit escapes into a corridor within the horizon; throws
/// GrazingCollision on a degenerate hit.
std::optional<BoundaryState> collision_map(const BilliardTable& table, const BoundaryState& s,
                                           double horizon = kDefaultHorizon);

/// Time reversal on collision space: same point, outgoing velocity replaced by
/// the reversed incoming one.
BoundaryState time_reversed(const BilliardTable& table, const BoundaryState& s);

/// Curvature of the expanding orthogonal front carried along a trajectory.
struct FrontState {
    double kappa{0.0};
    double log_expansion{0.0};
};

struct LyapunovEstimate {
    double lambda{0.0};
    double total_time{0.0};
    std::size_t collisions{0};
    FrontState final_front;
    bool degenerate{false};
};

/**
 * Accumulates log front dilation along the segment.
 *
 * Free flight of length tau: dilation 1 + tau*kappa, kappa -> kappa / (1 + tau*kappa).
 * Collision at incidence phi on a radius-r disk: kappa -> kappa + 2 / (r cos phi).
 */
LyapunovEstimate lyapunov_accumulate(const BilliardTable& table, FrontState initial, const TrajectorySegment& seg);

}  // namespace lorentz
