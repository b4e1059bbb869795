#pragma once

#include "hauv/planners.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hauv {

enum class EnvSource {
  Random,  ///< seeded random Gaussian features and vortices
  Bands,   ///< air information in one x band, sea information in another
  File,    ///< ingested IPGRID file
};

struct ScenarioSpec {
  int id = 0;
  std::string name;
  EnvSource source = EnvSource::Random;
  std::uint64_t env_seed = 1;
  std::filesystem::path env_file;  ///< File source
  RandomEnvConfig env{};           ///< kappas here are ignored; see kappa_air / kappa_sea
  bool slope = false;              ///< continental-slope obstacle on the seabed
  Task task{};
  double kappa_air = 1.0;
  double kappa_sea = 1.0;
  std::vector<Algorithm> algorithms{std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
  int repetitions = 10;
  std::uint64_t base_seed = 1;
  VehicleParams vehicle{};
  PlannerConfig planner{};
  PsoConfig pso{};

  /// Throws std::invalid_argument on bad counts, weights or budgets.
  void validate() const;
};

/// Built-in scenarios 1..5. Throws std::out_of_range otherwise.
ScenarioSpec builtin_scenario(int id);

/// Committed ingested grid used by scenario 2.
std::filesystem::path default_scenario2_grid();

/// Stacked seabed boxes rising towards +x.
ObstacleSet continental_slope(const Workspace& ws);

/// Information features for the band layout: air features centered in
/// x in [3, 5] km, sea features in x in [1, 3] km.
std::vector<GaussianFeature> band_features(std::uint64_t seed, const Workspace& ws);

/// Also checks that both endpoints lie inside the workspace and outside
/// obstacles (std::invalid_argument).
Environment build_environment(const ScenarioSpec& spec);

std::uint64_t splitmix64(std::uint64_t x);
/// Seed of one trial; injective over (algorithm, repetition) for a fixed base.
std::uint64_t child_seed(std::uint64_t base, Algorithm a, int repetition);

/// Dispatches to the planner for `a` with the given seed.
PlannerResult run_planner(Algorithm a, const Environment& env, const VehicleParams& vehicle, const Task& task,
                          const PlannerConfig& planner, const PsoConfig& pso, std::uint64_t seed);

struct RunRecord {
  int scenario = 0;
  Algorithm algorithm = Algorithm::RastIE;
  int repetition = 0;
  std::uint64_t seed = 0;
  double best_ig = 0.0;
  int iterations = 0;
  double energy = 0.0;  ///< e_max units
  double time = 0.0;    ///< mission time, s
  double wall_time = 0.0;
  std::size_t evaluations = 0;
  std::uint64_t env_hash = 0;
  std::vector<double> bestsol;
  std::vector<Vec3> control;
  SmoothPath path;
  bool failed = false;  ///< planner could not start (PSO initialization)
  std::string error;

  bool feasible() const { return best_ig > 0.0; }
  /// path_<algo>_<seed>.csv for feasible runs, empty otherwise.
  std::string path_ref() const;
};

using ProgressFn = std::function<void(const RunRecord&)>;

/// Every algorithm x repetition of the spec, ordered by algorithm then
/// repetition regardless of how many worker threads run the trials.
std::vector<RunRecord> run_scenario(const ScenarioSpec& spec, const Environment& env, unsigned threads = 1,
                                    const ProgressFn& progress = {});
std::vector<RunRecord> run_scenario(const ScenarioSpec& spec, unsigned threads = 1, const ProgressFn& progress = {});

struct AlgorithmMetrics {
  Algorithm algorithm = Algorithm::RastIE;
  int n = 0;
  double i_mean = 0.0;
  std::optional<double> i_std;  ///< undefined for a single sample
  double mean_iterations = 0.0;
  double mean_wall_time = 0.0;
  double mean_energy = 0.0;  ///< over feasible runs
  double mean_time = 0.0;    ///< over feasible runs
  int feasible = 0;
  int failed = 0;
};

double sample_mean(std::span<const double> v);
/// N - 1 normalized; nullopt for fewer than two samples.
std::optional<double> sample_std(std::span<const double> v);

/// One entry per algorithm, in first-appearance order.
std::vector<AlgorithmMetrics> compute_metrics(std::span<const RunRecord> records);

// ---------------------------------------------------------------------------
// Independent constraint checker

struct CheckReport {
  double energy = 0.0;
  double time = 0.0;
  int transitions = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Re-derives time and energy of a discretized path with a bisection root
/// finder and checks endpoints, workspace bounds, obstacles (samples and
/// segment midpoints), per-segment reachability and both budgets. Budgets
/// are compared with relative slack `rel_tol`, endpoints with `pos_tol` m.
CheckReport check_path(std::span<const Vec3> samples, const Environment& env, const VehicleParams& vehicle,
                       const Task& task, double rel_tol = 1e-9, double pos_tol = 1e-6);

/// Largest ground speed s with |s * dir - v_c| = v_hauv by bisection, or
/// nullopt when none is positive.
std::optional<double> ground_speed_bisect(const Vec3& dir, const Vec3& v_c, double v_hauv);

// ---------------------------------------------------------------------------
// Robustness study

enum class RobustnessFamily {
  Unbounded,   ///< t_max unbounded
  TimeWindow,  ///< t_max uniform in [1 h, 3 h]
  Weighted,    ///< t_max = 3 h, integer kappas in [1, 5]
};

std::string to_string(RobustnessFamily f);
std::optional<RobustnessFamily> parse_family(std::string_view s);

struct RobustnessConfig {
  RobustnessFamily family = RobustnessFamily::Unbounded;
  int maps = 30;
  std::uint64_t base_seed = 1;
  std::vector<Algorithm> algorithms{std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
  RandomEnvConfig env{};
  VehicleParams vehicle{};
  PlannerConfig planner{};
  PsoConfig pso{};
  double min_separation = 2000.0;  ///< m between random endpoints
  double max_separation = 4000.0;
};

struct MapOutcome {
  int map = 0;
  std::uint64_t seed = 0;
  std::uint64_t env_hash = 0;
  Task task{};
  double kappa_air = 1.0;
  double kappa_sea = 1.0;
  std::vector<double> best_ig;  ///< per algorithm
  std::vector<double> wins;     ///< per algorithm, sums to 1 unless excluded
  bool excluded = false;
};

struct RobustnessResult {
  RobustnessFamily family = RobustnessFamily::Unbounded;
  std::vector<Algorithm> algorithms;
  std::vector<double> wins;
  std::vector<int> excluded_maps;
  std::vector<MapOutcome> maps;
};

/// Fractional win split: each algorithm tied at the maximum gets 1/k.
/// All zeros means no algorithm found a path and yields an empty vector.
std::vector<double> split_wins(std::span<const double> best_ig);

/// Seed, endpoints, budget and weights of one map.
MapOutcome draw_map(const RobustnessConfig& cfg, int map);

using MapProgressFn = std::function<void(const MapOutcome&)>;
RobustnessResult robustness_experiment(const RobustnessConfig& cfg, unsigned threads = 1,
                                       const MapProgressFn& progress = {});

// ---------------------------------------------------------------------------
// Emission. All numbers use six significant digits.

std::string format_number(double v);

std::string records_csv(std::span<const RunRecord> records);
std::string metrics_csv(std::span<const AlgorithmMetrics> metrics);
std::string bestsol_csv(const RunRecord& record);
std::string path_csv(const RunRecord& record);
std::string robustness_csv(const RobustnessResult& result);

/// Writes records.csv, metrics.csv, bestsol_*.csv, path_*.csv and
/// summary.json. Throws std::runtime_error naming the path on I/O failure.
void emit_results(std::span<const RunRecord> records, std::span<const AlgorithmMetrics> metrics,
                  const ScenarioSpec& spec, const std::filesystem::path& out_dir);

void emit_robustness(const RobustnessResult& result, const RobustnessConfig& cfg,
                     const std::filesystem::path& out_dir);

/// Reads x,y,z columns of a path CSV written by path_csv().
std::vector<Vec3> read_path_csv(const std::filesystem::path& file);

void write_text_file(const std::filesystem::path& file, std::string_view text);

// ---------------------------------------------------------------------------
// JSON configuration (schema in docs/config.md)

/// Overlays the keys present in `json` onto `spec`.
void apply_scenario_config(std::string_view json, ScenarioSpec& spec);
void apply_robustness_config(std::string_view json, RobustnessConfig& cfg);
std::string scenario_to_json(const ScenarioSpec& spec);
std::string read_text_file(const std::filesystem::path& file);

}  // namespace hauv
