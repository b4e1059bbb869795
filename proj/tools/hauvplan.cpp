// hauvplan: scenario runner and result checker.

#include "hauv/bench.hpp"
#include "hauv/ingest.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace hauv;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "results";
  std::vector<std::string> algos;
  int scenario = 1;
  std::string env_file;
  std::optional<int> max_it;
  std::optional<int> it_stop;
  unsigned threads = 1;
  bool quiet = false;
};

std::vector<Algorithm> parse_algos(const std::vector<std::string>& names) {
  std::vector<Algorithm> out;
  for (const auto& n : names) {
    std::stringstream ss(n);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part == "all") {
        out.assign(std::begin(kAllAlgorithms), std::end(kAllAlgorithms));
        continue;
      }
      auto a = parse_algorithm(part);
      if (!a) throw std::invalid_argument("unknown algorithm '" + part + "'");
      out.push_back(*a);
    }
  }
  return out;
}

void apply_limits(const Globals& g, PlannerConfig& p, PsoConfig& s) {
  if (g.max_it) p.max_it = s.max_it = *g.max_it;
  if (g.it_stop) p.it_stop = s.it_stop = *g.it_stop;
}

ScenarioSpec make_spec(const Globals& g) {
  ScenarioSpec spec = builtin_scenario(g.scenario);
  if (!g.config.empty()) apply_scenario_config(read_text_file(g.config), spec);
  if (!g.env_file.empty()) {
    spec.source = EnvSource::File;
    spec.env_file = g.env_file;
  }
  if (g.seed) spec.base_seed = *g.seed;
  if (!g.algos.empty()) spec.algorithms = parse_algos(g.algos);
  apply_limits(g, spec.planner, spec.pso);
  return spec;
}

void print_metrics(std::span<const AlgorithmMetrics> metrics) {
  std::printf("%-10s %4s %12s %12s %10s %10s\n", "algorithm", "n", "i_mean", "i_std", "iters", "wall_s");
  for (const auto& m : metrics) {
    std::printf("%-10s %4d %12s %12s %10s %10s\n", display_name(m.algorithm).c_str(), m.n,
                format_number(m.i_mean).c_str(), m.i_std ? format_number(*m.i_std).c_str() : "NA",
                format_number(m.mean_iterations).c_str(), format_number(m.mean_wall_time).c_str());
  }
}

int cmd_gen_env(const Globals& g, double spacing_xy, const std::string& file) {
  ScenarioSpec spec = make_spec(g);
  if (spec.source == EnvSource::File) throw std::invalid_argument("gen-env needs an analytic environment source");
  if (g.seed) spec.env_seed = *g.seed;
  const Environment env = build_environment(spec);
  const double cell = env.workspace().cell();
  const auto raw = ingest::sample_environment(env, Vec3(spacing_xy, spacing_xy, cell));
  ingest::write_forecast_grid(raw, file);
  std::cout << "wrote " << file << " (" << raw.nx << "x" << raw.ny << "x" << raw.nz << ", env seed " << spec.env_seed
            << ")\n";
  return kExitOk;
}

int cmd_plan(const Globals& g, int repetition) {
  ScenarioSpec spec = make_spec(g);
  if (spec.algorithms.size() != 1 && g.algos.empty()) spec.algorithms = {Algorithm::RastIE};
  if (spec.algorithms.size() != 1) throw std::invalid_argument("plan runs exactly one algorithm (--algo)");
  const Environment env = build_environment(spec);
  const Algorithm a = spec.algorithms.front();
  RunRecord r;
  r.scenario = spec.id;
  r.algorithm = a;
  r.repetition = repetition;
  r.seed = child_seed(spec.base_seed, a, repetition);
  r.env_hash = env.fingerprint();
  try {
    auto res = run_planner(a, env, spec.vehicle, spec.task, spec.planner, spec.pso, r.seed);
    r.best_ig = res.best_ig;
    r.iterations = res.iterations;
    r.energy = res.best_e;
    r.time = res.best_t;
    r.wall_time = res.wall_time;
    r.evaluations = res.evaluations;
    r.bestsol = std::move(res.bestsol);
    r.control = std::move(res.best_control);
    r.path = std::move(res.best_path);
  } catch (const PlannerInitError& e) {
    r.failed = true;
    r.error = e.what();
    std::cerr << "warning: " << e.what() << "\n";
  }
  const std::vector<RunRecord> records{r};
  const auto metrics = compute_metrics(records);
  emit_results(records, metrics, spec, g.out);
  std::cout << display_name(a) << " seed " << r.seed << ": best_ig " << format_number(r.best_ig) << ", E "
            << format_number(r.energy) << ", T " << format_number(r.time) << " s, " << r.iterations
            << " iterations, " << format_number(r.wall_time) << " s wall\n";
  return r.feasible() ? kExitOk : kExitInfeasible;
}

int cmd_bench(const Globals& g, std::optional<int> reps) {
  ScenarioSpec spec = make_spec(g);
  if (reps) spec.repetitions = *reps;
  const Environment env = build_environment(spec);
  auto progress = [&](const RunRecord& r) {
    if (!g.quiet)
      std::cerr << display_name(r.algorithm) << " rep " << r.repetition << ": " << format_number(r.best_ig) << " ("
                << format_number(r.wall_time) << " s)\n";
  };
  const auto records = run_scenario(spec, env, g.threads, progress);
  const auto metrics = compute_metrics(records);
  emit_results(records, metrics, spec, g.out);
  print_metrics(metrics);
  const bool any = std::any_of(records.begin(), records.end(), [](const auto& r) { return r.feasible(); });
  return any ? kExitOk : kExitInfeasible;
}

int cmd_robustness(const Globals& g, const std::string& family, std::optional<int> maps) {
  RobustnessConfig cfg;
  if (!g.config.empty()) apply_robustness_config(read_text_file(g.config), cfg);
  if (!family.empty()) {
    auto f = parse_family(family);
    if (!f) throw std::invalid_argument("unknown family '" + family + "'");
    cfg.family = *f;
  }
  if (maps) cfg.maps = *maps;
  if (g.seed) cfg.base_seed = *g.seed;
  if (!g.algos.empty()) cfg.algorithms = parse_algos(g.algos);
  apply_limits(g, cfg.planner, cfg.pso);
  auto progress = [&](const MapOutcome& m) {
    if (g.quiet) return;
    std::cerr << "map " << m.map << (m.excluded ? " excluded" : "") << ":";
    for (double v : m.best_ig) std::cerr << ' ' << format_number(v);
    std::cerr << '\n';
  };
  const auto res = robustness_experiment(cfg, g.threads, progress);
  emit_robustness(res, cfg, g.out);
  std::cout << "family " << to_string(res.family) << ", " << cfg.maps << " maps, " << res.excluded_maps.size()
            << " excluded\n";
  for (std::size_t a = 0; a < res.algorithms.size(); ++a)
    std::printf("%-10s %s\n", display_name(res.algorithms[a]).c_str(), format_number(res.wins[a]).c_str());
  return kExitOk;
}

int cmd_verify(const Globals& g, const std::string& path_file, double tol) {
  const ScenarioSpec spec = make_spec(g);
  const Environment env = build_environment(spec);
  const auto samples = read_path_csv(path_file);
  // Emitted coordinates carry six significant digits.
  const double pos_tol = 1e-5 * env.workspace().upper().x();
  const auto rep = check_path(samples, env, spec.vehicle, spec.task, tol, pos_tol);
  std::cout << path_file << ": E " << format_number(rep.energy) << ", T " << format_number(rep.time) << " s, "
            << rep.transitions << " transitions\n";
  for (const auto& v : rep.violations) std::cout << "  violation: " << v << '\n';
  std::cout << (rep.ok() ? "OK\n" : "FAILED\n");
  return rep.ok() ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-driven path planning for a hybrid aerial-underwater vehicle"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "JSON configuration file (see docs/config.md)")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Base seed (environment seed for gen-env)");
  app.add_option("--out", g.out, "Output directory (output file for gen-env)");
  app.add_option("--algo", g.algos, "Algorithm(s): rast-ie, rast-i, rast, rrst, rigt, pso, all")->delimiter(',');
  app.add_option("--scenario", g.scenario, "Built-in scenario 1..5")->check(CLI::Range(1, 5));
  app.add_option("--env-file", g.env_file, "Use an ingested IPGRID environment")->check(CLI::ExistingFile);
  app.add_option("--max-it", g.max_it, "Iteration cap")->check(CLI::PositiveNumber);
  app.add_option("--it-stop", g.it_stop, "Stall window")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads for bench and robustness")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", g.quiet, "No per-run progress");

  auto* gen = app.add_subcommand("gen-env", "Write an analytic environment to an IPGRID file");
  double spacing = 250.0;
  gen->add_option("--spacing", spacing, "Horizontal grid spacing (m)")->check(CLI::PositiveNumber);

  auto* plan = app.add_subcommand("plan", "Run one planner");
  int repetition = 0;
  plan->add_option("--rep", repetition, "Repetition index used to derive the planner seed");

  auto* bench = app.add_subcommand("bench", "Scenario x repetitions");
  std::optional<int> reps;
  bench->add_option("--reps", reps, "Repetitions per algorithm")->check(CLI::PositiveNumber);

  auto* robust = app.add_subcommand("robustness", "Random-map win counts");
  std::string family;
  std::optional<int> maps;
  robust->add_option("--family", family, "unbounded, time-window or weighted");
  robust->add_option("--maps", maps, "Number of random maps")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Re-check an emitted path against the constraints");
  std::string path_file;
  double tol = 1e-4;
  verify->add_option("path", path_file, "path_<algo>_<seed>.csv")->required()->check(CLI::ExistingFile);
  verify->add_option("--tol", tol, "Relative budget tolerance");

  for (auto* sub : {gen, plan, bench, robust, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*gen) {
      if (g.out == "results") g.out = "environment.ipgrid";
      return cmd_gen_env(g, spacing, g.out);
    }
    if (*plan) return cmd_plan(g, repetition);
    if (*bench) return cmd_bench(g, reps);
    if (*robust) return cmd_robustness(g, family, maps);
    if (*verify) return cmd_verify(g, path_file, tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
