#pragma once
// Experiment driver behind the lorentz command line tool.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace lorentz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Invalid configuration; the message names the violated precondition.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string experiment;  ///< simulate, rotation-set, realize, orbit, passages, entropy, lyapunov, sweep
    int n{5};
    std::optional<double> r;
    std::optional<std::string> r_rule;  ///< "1/(Kn)"; see radius_for for the default
    double T{100.0};
    std::size_t samples{1000};
    std::uint64_t seed{1};
    std::optional<double> eps0;  ///< default r/10
    std::string output{"out"};
    std::size_t threads{0};  ///< 0: LORENTZ_THREADS or the hardware concurrency

    std::string word;                  ///< realize, orbit
    double speed{0.0};                 ///< orbit
    std::vector<int> ns;               ///< sweep over n (r from the rule or r)
    std::vector<double> rs;            ///< sweep over r at fixed n
    std::optional<double> x, y, angle;  ///< simulate start; Liouville sample from seed when absent
    std::size_t collisions{0};         ///< simulate: stop after this many collisions instead of at T
};

/// Radius for a given n: the explicit value, else the rule. Without either,
/// 1/(10n) for realize, orbit and passages (the construction regime) and
/// 1/(4n) otherwise.
double radius_for(const ExperimentConfig& c, int n);

/// Reads the keys of ExperimentConfig (r_rule, eps0, output, ... as named there) from a JSON object.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

/// Throws ConfigError naming the first violated precondition.
void validate(const ExperimentConfig& c);

/// Validates, runs, writes artifacts and manifest.json into c.output. Returns
/// the exit code; messages go to `log`.
int run(const ExperimentConfig& c, std::ostream& log);

/// Command line entry point.
int main_entry(int argc, char** argv);

}  // namespace lorentz::cli
