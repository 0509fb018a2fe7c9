#pragma once
/**
 * @file variational.hpp
 * @brief Shortest broken lines through admissible disk sequences.
 *
 * Vertex i sits at c_i + r (cos theta_i, sin theta_i). The length
 * L(theta) = sum |v_{i+1} - v_i| is minimized by damped Newton steps with the
 * analytic gradient and the (cyclic) tridiagonal Hessian. With t_i the unit
 * tangent, n_i the outward normal, w_i = r t_i, e the unit chord direction,
 * d its length and P = I - e e^T:
 *
 *   dL/dtheta_i            = r t_i . (e_{i-1} - e_i)
 *   d2 d / dtheta_i^2      = w_i^T P w_i / d + r e . n_i
 *   d2 d / dtheta_{i+1}^2  = w_{i+1}^T P w_{i+1} / d - r e . n_{i+1}
 *   d2 d / dtheta_i dtheta_{i+1} = -w_i^T P w_{i+1} / d
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lorentz/admissibility.hpp"
#include "lorentz/geometry.hpp"
#include "lorentz/symbolic.hpp"

namespace lorentz {

enum class PathMode { Free, Periodic, Pinned, PinnedFirst };

struct PathSpec {
    PathMode mode{PathMode::Free};
    std::int64_t a{0};  ///< periodic translation: v_N = v_0 + (a, b)
    std::int64_t b{0};
    double theta_first{0.0};  ///< pinned endpoint angles
    double theta_last{0.0};

    static PathSpec free() { return {}; }
    static PathSpec periodic(std::int64_t a, std::int64_t b) { return {PathMode::Periodic, a, b, 0.0, 0.0}; }
    static PathSpec pinned(double first, double last) { return {PathMode::Pinned, 0, 0, first, last}; }
    /// First angle fixed, last end free.
    static PathSpec pinned_first(double first) { return {PathMode::PinnedFirst, 0, 0, first, 0.0}; }
};

struct MinimizeOptions {
    std::size_t max_iterations{10000};
    double gradient_tolerance{1e-10};
};

struct BrokenPath {
    std::vector<LiftedDisk> disks;
    PathSpec spec;
    std::vector<double> theta;
    std::vector<Vec2> vertices;  ///< one per disk; periodic paths close at vertices[0] + (a, b)
    double length{0.0};
    std::vector<double> residuals;  ///< |phi_in + phi_out| per interior vertex (every vertex when periodic)
    double gradient_norm{0.0};      ///< max-norm of the free components
    std::size_t iterations{0};
    bool converged{false};
    bool left_admissible_class{false};  ///< a chord cuts an open disk or a bounce is not a genuine reflection

    std::size_t chord_count() const;
    /// End points of chord i.
    std::pair<Vec2, Vec2> chord(std::size_t i) const;
    double max_residual() const;
};

double path_length(const BilliardTable& table, const std::vector<LiftedDisk>& disks, const PathSpec& spec,
                   const std::vector<double>& theta);

/// Analytic gradient dL/dtheta (pinned components included, unprojected).
std::vector<double> path_gradient(const BilliardTable& table, const std::vector<LiftedDisk>& disks,
                                  const PathSpec& spec, const std::vector<double>& theta);

/// Second directional derivative of L along u, from the analytic Hessian.
double path_hessian_quadratic(const BilliardTable& table, const std::vector<LiftedDisk>& disks, const PathSpec& spec,
                              const std::vector<double>& theta, const std::vector<double>& u);

/// Initial angles pointing at the midpoint of the two neighbour centres.
std::vector<double> initial_angles(const BilliardTable& table, const std::vector<LiftedDisk>& disks,
                                   const PathSpec& spec);

/// Local minimum of the length. Throws std::invalid_argument when the
/// sequence is too short for the mode.
BrokenPath minimize_path(const BilliardTable& table, const std::vector<LiftedDisk>& disks, const PathSpec& spec,
                         const MinimizeOptions& options = {}, std::optional<std::vector<double>> start = std::nullopt);

/// Fills vertices, length, residuals and the admissibility flag from theta.
void evaluate_path(const BilliardTable& table, BrokenPath& path);

struct OrbitCrossings {
    std::vector<Letter> letters;
    std::vector<double> times;  ///< arc length from vertex 0
};

/// Wall crossings of all chords of the path, in order.
OrbitCrossings path_crossings(const BilliardTable& table, const BrokenPath& path);

/// Times between consecutive crossings.
std::vector<double> passage_times(const OrbitCrossings& crossings);

/// Free-mode orbit whose crossing word equals w, with its realization data.
struct RealizedOrbit {
    Realization realization;
    BrokenPath path;
    OrbitCrossings crossings;
    std::size_t attempts{0};
};

/**
 * realize_word followed by minimize_path in free mode; accepted when the
 * orbit crosses exactly the letters of w and stays in the admissible class.
 * Retries with wider windows, beams and wall margins. Throws
 * std::runtime_error when every attempt fails.
 */
RealizedOrbit realize_orbit(const BilliardTable& table, const ReducedWord& w);

struct PeriodicOrbit {
    BrokenPath path;
    enum class Closure { Doubling, Translation } closure{Closure::Translation};
    double period{0.0};
    std::vector<Letter> word;  ///< crossing letters of one period from vertex 0
    std::size_t extension{0};  ///< disks added to close the input sequence
};

/// Orbit x(t) = x(2A - t) of a free-mode path: period 2A, word w w^{-1}.
PeriodicOrbit doubling_orbit(const BilliardTable& table, const BrokenPath& free_path);

/**
 * Closes an admissible sequence sigma_0..sigma_{N-1} into a periodic
 * itinerary: appends at most K disks Y_1..Y_m so that Y_m = sigma_0 + (a, b)
 * and the seam (Y_{m-1}, Y_m, sigma_1 + (a, b)) is admissible (m = 0 when
 * sigma_{N-1} already is such a translate), then minimizes in translation
 * mode. Best-first search over disks within 1.6 of the current one, guided by
 * the distance to the nearest translate of sigma_0. Throws std::runtime_error
 * when no extension of length <= K exists.
 */
PeriodicOrbit periodic_closure(const BilliardTable& table, const std::vector<LiftedDisk>& seq, std::size_t K = 10);

struct PassageCase {
    std::string name;
    std::string letters;  ///< the two letters of the passage, text form
    double time{0.0};
    double bound{0.0};  ///< the constant of the bound (sqrt 5 or sqrt 2)
    std::vector<LiftedDisk> disks;
};

/**
 * Worst-case passage instances on cell [0,1]^2: a then b_n, b_1 then b_n^{-1},
 * a then a, b_1 then b_n. Each is minimized in free mode and the time between
 * the two target crossings is reported. Requires n >= 2.
 */
std::vector<PassageCase> passage_time_table(const BilliardTable& table);

std::string orbit_to_json(const BilliardTable& table, const PeriodicOrbit& orbit);
PeriodicOrbit orbit_from_json(const std::string& text);

}  // namespace lorentz
