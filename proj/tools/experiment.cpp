#include "experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "lorentz/csv.hpp"
#include "lorentz/entropy.hpp"
#include "lorentz/parallel.hpp"
#include "lorentz/rotation.hpp"
#include "svg.hpp"

namespace lorentz::cli {

namespace {

const std::vector<std::string> kExperiments{"simulate", "rotation-set", "realize", "orbit",
                                            "passages", "entropy",      "lyapunov", "sweep"};

constexpr const char* kVersion = "0.1.0";
constexpr const char* kDefaultRule = "1/(4n)";
constexpr const char* kConstructionRule = "1/(10n)";

const double kInvSqrt5 = 1.0 / std::sqrt(5.0);
const double kTwoSqrt2 = 2.0 * std::numbers::sqrt2;

std::optional<double> rule_factor(const std::string& rule) {
    static const std::regex pattern(R"(^\s*1\s*/\s*\(\s*([0-9]+(\.[0-9]+)?)\s*\*?\s*n\s*\)\s*$)");
    std::smatch m;
    if (!std::regex_match(rule, m, pattern)) return std::nullopt;
    return std::stod(m[1].str());
}

std::vector<int> n_values(const ExperimentConfig& c) {
    if (!c.ns.empty()) return c.ns;
    return {c.n};
}

struct Point {
    int n;
    double r;
};

std::vector<Point> sweep_points(const ExperimentConfig& c) {
    std::vector<Point> out;
    if (!c.rs.empty()) {
        for (double r : c.rs) out.push_back({c.n, r});
    } else {
        for (int n : n_values(c)) out.push_back({n, radius_for(c, n)});
    }
    return out;
}

double eps0_for(const ExperimentConfig& c, double r) { return c.eps0 ? *c.eps0 : r / 10.0; }

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid config: " + what);
}

class Artifacts {
public:
    explicit Artifacts(std::filesystem::path dir) : dir_(std::move(dir)) {}

    void write(const std::string& name, const std::string& content) {
        std::ofstream out(dir_ / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
        out << content;
        names_.push_back(name);
    }

    const std::vector<std::string>& names() const { return names_; }

private:
    std::filesystem::path dir_;
    std::vector<std::string> names_;
};

nlohmann::json segment_json(const BilliardTable& table, const TrajectorySegment& seg) {
    nlohmann::json j;
    j["n"] = table.n();
    j["r"] = table.r();
    j["initial"] = {{"position", {seg.initial.position.x, seg.initial.position.y}},
                    {"velocity", {seg.initial.velocity.x, seg.initial.velocity.y}}};
    j["final"] = {{"position", {seg.final.position.x, seg.final.position.y}},
                  {"velocity", {seg.final.velocity.x, seg.final.velocity.y}},
                  {"time", seg.final.time}};
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& ev : seg.collisions) {
        cols.push_back({{"time", ev.time},
                        {"disk", {ev.disk.disk_id, ev.disk.p, ev.disk.q}},
                        {"point", {ev.point.x, ev.point.y}},
                        {"cos_phi", ev.cos_phi}});
    }
    j["collisions"] = cols;
    j["crossings"] = to_text(seg.crossings);
    j["crossing_times"] = seg.crossing_times;
    j["word"] = to_text(seg.word());
    j["duration"] = seg.duration;
    j["abs_dx"] = seg.abs_dx;
    j["abs_dy"] = seg.abs_dy;
    j["degenerate"] = seg.degenerate;
    j["corridor_trapped"] = seg.corridor_trapped;
    const auto rv = rotation_of_segment(seg);
    j["rotation"] = {{"speed", rv.speed}, {"direction", to_text(rv.direction)}};
    return j;
}

void run_simulate(const ExperimentConfig& c, Artifacts& art, nlohmann::json& counts) {
    const BilliardTable table(c.n, radius_for(c, c.n));
    PhasePoint p;
    if (c.x) {
        p.position = {*c.x, *c.y};
        p.velocity = unit_from_angle(*c.angle);
    } else {
        Rng rng(derive_seed(c.seed, 0));
        p = sample_liouville(table, rng);
    }
    const StopRule stop = c.collisions > 0 ? StopRule::after_collisions(c.collisions) : StopRule::at_time(c.T);
    const auto seg = simulate(table, p, stop);
    counts["degenerate"] = seg.degenerate ? 1 : 0;
    art.write("simulate.json", segment_json(table, seg).dump(2) + "\n");
}

void run_rotation_set(const ExperimentConfig& c, Artifacts& art, nlohmann::json& counts) {
    const BilliardTable table(c.n, radius_for(c, c.n));
    const auto set = sample_rotation_set(table, c.samples, c.T, c.seed, c.threads);
    counts["samples"] = set.samples.size();
    counts["degenerate_resampled"] = set.resampled;
    art.write("rotation_set.csv", rotation_csv(table, set));
    std::vector<double> speeds;
    double max_speed = 0.0;
    for (const auto& s : set.samples) {
        speeds.push_back(s.rotation.speed);
        max_speed = std::max(max_speed, s.rotation.speed);
    }
    counts["max_speed"] = max_speed;
    std::ostringstream title;
    title << "Escape speed, n = " << c.n << ", r = " << table.r() << ", T = " << c.T << ", " << c.samples
          << " samples";
    art.write("speed_histogram.svg", histogram_svg(speeds, 60, 0.0, 3.0,
                                                   {{kInvSqrt5, "1/sqrt 5"}, {kTwoSqrt2, "2 sqrt 2"}}, title.str(),
                                                   "speed s = |W| / T"));
}

void run_realize(const ExperimentConfig& c, Artifacts& art, nlohmann::json& counts) {
    const BilliardTable table(c.n, radius_for(c, c.n));
    const ReducedWord w = parse_word(c.word, c.n);
    const RealizedOrbit orbit = realize_orbit(table, w);
    const auto passages = passage_times(orbit.crossings);
    nlohmann::json j;
    j["n"] = table.n();
    j["r"] = table.r();
    j["word"] = to_text(w);
    nlohmann::json disks = nlohmann::json::array();
    for (const auto& d : orbit.path.disks) disks.push_back({d.disk_id, d.p, d.q});
    j["disks"] = disks;
    j["angles"] = orbit.path.theta;
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : orbit.path.vertices) verts.push_back({v.x, v.y});
    j["vertices"] = verts;
    j["length"] = orbit.path.length;
    j["crossings"] = to_text(orbit.crossings.letters);
    j["crossing_times"] = orbit.crossings.times;
    j["passage_times"] = passages;
    j["max_passage"] = passages.empty() ? 0.0 : *std::max_element(passages.begin(), passages.end());
    j["max_residual"] = orbit.path.max_residual();
    j["helpers"] = orbit.realization.helpers;
    j["attempts"] = orbit.attempts;
    counts["attempts"] = orbit.attempts;
    art.write("realize.json", j.dump(2) + "\n");
}

void run_orbit(const ExperimentConfig& c, Artifacts& art, nlohmann::json& counts) {
    const BilliardTable table(c.n, radius_for(c, c.n));
    const ReducedWord w = parse_word(c.word, c.n);
    const auto v = admissible_vector(table, w, c.speed);
    auto j = nlohmann::json::parse(orbit_to_json(table, v.orbit));
    j["target_speed"] = c.speed;
    j["achieved"] = {{"speed", v.achieved.speed}, {"direction", to_text(v.achieved.direction)}};
    j["target_reached"] = v.target_reached;
    j["idle_bounces"] = v.idle_bounces;
    counts["target_reached"] = v.target_reached;
    art.write("orbit.json", j.dump(2) + "\n");
}

void run_passages(const ExperimentConfig& c, Artifacts& art, nlohmann::json&) {
    const BilliardTable table(c.n, radius_for(c, c.n));
    const auto cases = passage_time_table(table);
    std::ostringstream os;
    os << "n,r,case,letters,time,constant,n_times_excess\n";
    for (const auto& pc : cases) {
        os << c.n << ',' << format_double(table.r()) << ',' << pc.name << ',' << pc.letters << ','
           << format_double(pc.time) << ',' << format_double(pc.bound) << ','
           << format_double(c.n * (pc.time - pc.bound)) << '\n';
    }
    art.write("passages.csv", os.str());
}

EntropyRow entropy_row(const ExperimentConfig& c, int n, double r, nlohmann::json& counts) {
    const BilliardTable table(n, r);
    const double eps0 = eps0_for(c, r);
    const auto count = count_itineraries(table, eps0, c.samples, c.T, c.seed, c.threads);
    const auto lyap = metric_entropy(table, c.T, c.samples, c.seed, 10000, c.threads);
    const std::string key = "n=" + std::to_string(n) + ",r=" + format_double(r);
    counts[key] = {{"itinerary_ties", count.ties},
                   {"itinerary_resampled", count.resampled},
                   {"lyapunov_resampled", lyap.resampled},
                   {"collisions", lyap.collisions}};
    EntropyRow row;
    row.n = n;
    row.r = r;
    row.eps0 = eps0;
    row.T = c.T;
    row.samples = c.samples;
    row.distinct = count.distinct;
    row.htop_lower_est = count.htop_lower_estimate;
    row.htop_upper_formula = kTwoSqrt2 * std::log(2.0 * n + 1.0);
    row.lambda_flow = lyap.lambda;
    row.mean_free_time = lyap.mean_free_time;
    row.h_map_est = lyap.h_map;
    return row;
}

void run_entropy(const ExperimentConfig& c, Artifacts& art, nlohmann::json& counts) {
    art.write("entropy.csv", entropy_csv({entropy_row(c, c.n, radius_for(c, c.n), counts)}));
}

void run_lyapunov(const ExperimentConfig& c, Artifacts& art, nlohmann::json& counts) {
    std::ostringstream os;
    os << "n,r,T,samples,collisions,lambda_flow,standard_error,mean_free_time,mean_free_time_formula,h_map_est\n";
    for (const auto& [n, r] : sweep_points(c)) {
        const BilliardTable table(n, r);
        const auto s = metric_entropy(table, c.T, c.samples, c.seed, 10000, c.threads);
        counts["n=" + std::to_string(n) + ",r=" + format_double(r)] = {{"resampled", s.resampled},
                                                                       {"collisions", s.collisions}};
        os << n << ',' << format_double(r) << ',' << format_double(c.T) << ',' << c.samples << ',' << s.collisions
           << ',' << format_double(s.lambda) << ',' << format_double(s.standard_error) << ','
           << format_double(s.mean_free_time) << ',' << format_double(mean_free_time_formula(table)) << ','
           << format_double(s.h_map) << '\n';
    }
    art.write("lyapunov.csv", os.str());
}

void run_sweep(const ExperimentConfig& c, Artifacts& art, nlohmann::json& counts) {
    std::vector<EntropyRow> rows;
    for (const auto& [n, r] : sweep_points(c)) rows.push_back(entropy_row(c, n, r, counts));
    art.write("entropy.csv", entropy_csv(rows));
    Series upper{"upper formula / log n", {}};
    Series lower{"sampled itineraries / log n", {}};
    Series map{"h_map / log n", {}};
    for (const auto& row : rows) {
        const double ln = std::log(static_cast<double>(row.n));
        if (ln <= 0.0) continue;
        upper.points.emplace_back(row.n, row.htop_upper_formula / ln);
        lower.points.emplace_back(row.n, row.htop_lower_est / ln);
        map.points.emplace_back(row.n, row.h_map_est / ln);
    }
    art.write("entropy_scaling.svg", line_chart_svg({upper, lower, map}, kInvSqrt5, kTwoSqrt2,
                                                    "Entropy / log n (band: 1/sqrt 5 to 2 sqrt 2)", "n", "h / log n"));
}

}  // namespace

double radius_for(const ExperimentConfig& c, int n) {
    if (c.r) return *c.r;
    const bool construction = c.experiment == "realize" || c.experiment == "orbit" || c.experiment == "passages";
    const auto k = rule_factor(c.r_rule ? *c.r_rule : (construction ? kConstructionRule : kDefaultRule));
    if (!k) throw ConfigError("invalid config: r_rule must read 1/(K n), e.g. 1/(4n)");
    return 1.0 / (*k * n);
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("invalid config: top level must be a JSON object");
    static const std::vector<std::string> known{"experiment", "n",   "r",     "r_rule", "T",    "samples",
                                                "seed",       "eps0", "output", "threads", "word", "speed",
                                                "ns",         "rs",  "x",     "y",      "angle", "collisions"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("invalid config: unknown key '" + key + "'");
        }
    }
    ExperimentConfig c;
    try {
        if (j.contains("experiment")) c.experiment = j["experiment"].get<std::string>();
        if (j.contains("n")) c.n = j["n"].get<int>();
        if (j.contains("r")) c.r = j["r"].get<double>();
        if (j.contains("r_rule")) c.r_rule = j["r_rule"].get<std::string>();
        if (j.contains("T")) c.T = j["T"].get<double>();
        if (j.contains("samples")) c.samples = j["samples"].get<std::size_t>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("eps0")) c.eps0 = j["eps0"].get<double>();
        if (j.contains("output")) c.output = j["output"].get<std::string>();
        if (j.contains("threads")) c.threads = j["threads"].get<std::size_t>();
        if (j.contains("word")) c.word = j["word"].get<std::string>();
        if (j.contains("speed")) c.speed = j["speed"].get<double>();
        if (j.contains("ns")) c.ns = j["ns"].get<std::vector<int>>();
        if (j.contains("rs")) c.rs = j["rs"].get<std::vector<double>>();
        if (j.contains("x")) c.x = j["x"].get<double>();
        if (j.contains("y")) c.y = j["y"].get<double>();
        if (j.contains("angle")) c.angle = j["angle"].get<double>();
        if (j.contains("collisions")) c.collisions = j["collisions"].get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["experiment"] = c.experiment;
    j["n"] = c.n;
    if (c.r) j["r"] = *c.r;
    if (c.r_rule) j["r_rule"] = *c.r_rule;
    j["T"] = c.T;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    if (c.eps0) j["eps0"] = *c.eps0;
    j["output"] = c.output;
    j["threads"] = c.threads;
    if (!c.word.empty()) j["word"] = c.word;
    if (c.experiment == "orbit") j["speed"] = c.speed;
    if (!c.ns.empty()) j["ns"] = c.ns;
    if (!c.rs.empty()) j["rs"] = c.rs;
    if (c.x) j["x"] = *c.x;
    if (c.y) j["y"] = *c.y;
    if (c.angle) j["angle"] = *c.angle;
    if (c.collisions > 0) j["collisions"] = c.collisions;
    return j;
}

void validate(const ExperimentConfig& c) {
    const std::string& e = c.experiment;
    require(std::find(kExperiments.begin(), kExperiments.end(), e) != kExperiments.end(),
            "experiment must be one of simulate, rotation-set, realize, orbit, passages, entropy, lyapunov, sweep");
    require(!(c.r && c.r_rule), "r and r_rule are mutually exclusive");
    if (c.r_rule) require(rule_factor(*c.r_rule).has_value(), "r_rule must read 1/(K n), e.g. 1/(4n)");
    require(c.ns.empty() || c.rs.empty(), "ns and rs are mutually exclusive");
    require(c.ns.empty() || e == "sweep" || e == "lyapunov", "ns is only used by sweep and lyapunov");
    require(c.rs.empty() || e == "sweep" || e == "lyapunov", "rs is only used by sweep and lyapunov");
    require(!c.output.empty(), "output directory must be non-empty");

    const bool needs_two = e == "realize" || e == "orbit" || e == "passages" || e == "entropy" || e == "sweep";
    std::vector<Point> points;
    if (!c.rs.empty()) {
        for (double r : c.rs) points.push_back({c.n, r});
    } else {
        for (int n : n_values(c)) {
            require(n >= 1, "n >= 1");
            points.push_back({n, c.r ? *c.r : radius_for(c, n)});
        }
    }
    for (const auto& [n, r] : points) {
        require(n >= 1, "n >= 1");
        require(!needs_two || n >= 2, "n >= 2 for " + e);
        require(r > 0.0 && r < 1.0 / (2.0 * n), "0 < r < 1/(2n) (n = " + std::to_string(n) + ")");
        if (c.eps0) require(*c.eps0 > 0.0 && *c.eps0 < r, "0 < eps0 < r");
    }
    require(c.T > 0.0 && std::isfinite(c.T), "T > 0");
    if (e == "entropy" || e == "lyapunov" || e == "sweep") require(c.samples > 0, "samples > 0 for " + e);
    if (e == "realize" || e == "orbit") {
        require(!c.word.empty() || e == "orbit", "word is required for realize");
        try {
            parse_letters(c.word, c.n);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(std::string("invalid config: word: ") + ex.what());
        }
    }
    if (e == "orbit") {
        const double limit = admissible_speed_limit(c.n);
        require(c.speed >= 0.0 && c.speed <= limit,
                "0 <= speed <= 1/sqrt 5 - 0.5/n = " + format_double(limit) + " (the guaranteed radius)");
        require(c.speed == 0.0 || !c.word.empty(), "word is required for a positive speed");
    }
    if (e == "simulate") {
        const bool any = c.x || c.y || c.angle;
        const bool all = c.x && c.y && c.angle;
        require(!any || all, "x, y and angle must be given together");
        if (all) {
            const BilliardTable table(c.n, radius_for(c, c.n));
            require(!table.inside_obstacle({*c.x, *c.y}), "start point outside the scatterers");
        }
    }
}

int run(const ExperimentConfig& c, std::ostream& log) {
    try {
        validate(c);
    } catch (const ConfigError& e) {
        log << e.what() << '\n';
        return kExitConfig;
    }
    const auto start = std::chrono::steady_clock::now();
    const std::filesystem::path dir(c.output);
    nlohmann::json counts = nlohmann::json::object();
    try {
        std::filesystem::create_directories(dir);
        Artifacts art(dir);
        if (c.experiment == "simulate") run_simulate(c, art, counts);
        if (c.experiment == "rotation-set") run_rotation_set(c, art, counts);
        if (c.experiment == "realize") run_realize(c, art, counts);
        if (c.experiment == "orbit") run_orbit(c, art, counts);
        if (c.experiment == "passages") run_passages(c, art, counts);
        if (c.experiment == "entropy") run_entropy(c, art, counts);
        if (c.experiment == "lyapunov") run_lyapunov(c, art, counts);
        if (c.experiment == "sweep") run_sweep(c, art, counts);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        nlohmann::json manifest;
        manifest["experiment"] = c.experiment;
        manifest["config"] = config_to_json(c);
        manifest["version"] = kVersion;
        manifest["compiler"] = __VERSION__;
        manifest["threads"] = c.threads == 0 ? default_thread_count() : c.threads;
        manifest["wall_time_seconds"] = wall;
        manifest["artifacts"] = art.names();
        manifest["counts"] = counts;
        std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
        for (const auto& name : art.names()) log << (dir / name).string() << '\n';
        return kExitOk;
    } catch (const ConfigError& e) {
        log << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        log << "invalid config: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        log << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Billiard experiments on the torus with n disks in one row"};
    app.fallthrough();
    app.require_subcommand(1);
    std::string config_path;
    ExperimentConfig flags;
    double r = 0.0;
    std::string r_rule;
    double eps0 = 0.0;
    double x = 0.0;
    double y = 0.0;
    double angle = 0.0;
    app.add_option("--config", config_path, "JSON config file; flags override its keys");
    auto* o_n = app.add_option("--n", flags.n, "number of scatterers");
    auto* o_r = app.add_option("--r", r, "scatterer radius");
    auto* o_rule = app.add_option("--r-rule", r_rule, "radius rule 1/(K n), e.g. 1/(4n)");
    auto* o_T = app.add_option("--T", flags.T, "trajectory duration");
    auto* o_samples = app.add_option("--samples", flags.samples, "number of samples");
    auto* o_seed = app.add_option("--seed", flags.seed, "master seed");
    auto* o_eps0 = app.add_option("--eps0", eps0, "partition strip width (default r/10)");
    auto* o_out = app.add_option("--out", flags.output, "output directory");
    auto* o_threads = app.add_option("--threads", flags.threads, "worker threads (default LORENTZ_THREADS or all)");
    auto* o_word = app.add_option("--word", flags.word, "reduced word, e.g. \"a b3 B1\"");
    auto* o_speed = app.add_option("--speed", flags.speed, "target speed for orbit");
    auto* o_ns = app.add_option("--ns", flags.ns, "comma separated n values")->delimiter(',');
    auto* o_rs = app.add_option("--rs", flags.rs, "comma separated r values at fixed n")->delimiter(',');
    auto* o_x = app.add_option("--x", x, "simulate: start x");
    auto* o_y = app.add_option("--y", y, "simulate: start y");
    auto* o_angle = app.add_option("--angle", angle, "simulate: start direction angle");
    auto* o_coll = app.add_option("--collisions", flags.collisions, "simulate: stop after this many collisions");
    std::vector<CLI::App*> subs;
    subs.push_back(app.add_subcommand("simulate", "one trajectory segment as JSON"));
    subs.push_back(app.add_subcommand("rotation-set", "sampled rotation vectors (CSV) and speed histogram (SVG)"));
    subs.push_back(app.add_subcommand("realize", "orbit crossing a given reduced word (JSON)"));
    subs.push_back(app.add_subcommand("orbit", "periodic orbit with a target rotation vector (JSON)"));
    subs.push_back(app.add_subcommand("passages", "worst-case passage times (CSV)"));
    subs.push_back(app.add_subcommand("entropy", "itinerary count and Lyapunov entropy (CSV)"));
    subs.push_back(app.add_subcommand("lyapunov", "Lyapunov exponent and mean free time (CSV)"));
    subs.push_back(app.add_subcommand("sweep", "entropy over several n or r (CSV and SVG)"));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    ExperimentConfig c;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("invalid config: cannot read " + config_path);
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(std::string("invalid config: ") + e.what());
            }
            c = config_from_json(j);
        }
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    }
    for (auto* s : subs) {
        if (s->parsed()) c.experiment = s->get_name();
    }
    if (o_n->count()) c.n = flags.n;
    if (o_r->count()) {
        c.r = r;
        c.r_rule.reset();
    }
    if (o_rule->count()) {
        c.r_rule = r_rule;
        if (!o_r->count()) c.r.reset();
    }
    if (o_T->count()) c.T = flags.T;
    if (o_samples->count()) c.samples = flags.samples;
    if (o_seed->count()) c.seed = flags.seed;
    if (o_eps0->count()) c.eps0 = eps0;
    if (o_out->count()) c.output = flags.output;
    if (o_threads->count()) c.threads = flags.threads;
    if (o_word->count()) c.word = flags.word;
    if (o_speed->count()) c.speed = flags.speed;
    if (o_ns->count()) c.ns = flags.ns;
    if (o_rs->count()) c.rs = flags.rs;
    if (o_x->count()) c.x = x;
    if (o_y->count()) c.y = y;
    if (o_angle->count()) c.angle = angle;
    if (o_coll->count()) c.collisions = flags.collisions;
    return run(c, std::cerr);
}

}  // namespace lorentz::cli
