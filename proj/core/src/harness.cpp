#include "hauv/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

namespace hauv {

namespace {

// Runs job(i) for i in [0, n) on up to `threads` workers.
template <class Job>
void parallel_for(std::size_t n, unsigned threads, Job job) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

RunRecord run_trial(const ScenarioSpec& spec, const Environment& env, std::uint64_t env_hash, Algorithm a,
                    int rep) {
  RunRecord r;
  r.scenario = spec.id;
  r.algorithm = a;
  r.repetition = rep;
  r.seed = child_seed(spec.base_seed, a, rep);
  r.env_hash = env_hash;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto res = run_planner(a, env, spec.vehicle, spec.task, spec.planner, spec.pso, r.seed);
    r.best_ig = res.best_ig;
    r.iterations = res.iterations;
    r.energy = res.best_e;
    r.time = res.best_t;
    r.evaluations = res.evaluations;
    r.bestsol = std::move(res.bestsol);
    r.control = std::move(res.best_control);
    r.path = std::move(res.best_path);
  } catch (const PlannerInitError& e) {
    r.failed = true;
    r.error = e.what();
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

std::string RunRecord::path_ref() const {
  if (!feasible()) return {};
  return "path_" + to_string(algorithm) + "_" + std::to_string(seed) + ".csv";
}

std::vector<RunRecord> run_scenario(const ScenarioSpec& spec, const Environment& env, unsigned threads,
                                    const ProgressFn& progress) {
  spec.validate();
  const std::uint64_t hash = env.fingerprint();
  const std::size_t reps = static_cast<std::size_t>(spec.repetitions);
  std::vector<RunRecord> out(spec.algorithms.size() * reps);
  std::mutex progress_mu;
  parallel_for(out.size(), threads, [&](std::size_t i) {
    out[i] = run_trial(spec, env, hash, spec.algorithms[i / reps], static_cast<int>(i % reps));
    if (progress) {
      std::lock_guard lock(progress_mu);
      progress(out[i]);
    }
  });
  return out;
}

std::vector<RunRecord> run_scenario(const ScenarioSpec& spec, unsigned threads, const ProgressFn& progress) {
  const Environment env = build_environment(spec);
  return run_scenario(spec, env, threads, progress);
}

double sample_mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::optional<double> sample_std(std::span<const double> v) {
  if (v.size() < 2) return std::nullopt;
  const double mean = sample_mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::vector<AlgorithmMetrics> compute_metrics(std::span<const RunRecord> records) {
  std::vector<AlgorithmMetrics> out;
  for (const auto& r : records) {
    if (std::none_of(out.begin(), out.end(), [&](const auto& m) { return m.algorithm == r.algorithm; })) {
      out.push_back({});
      out.back().algorithm = r.algorithm;
    }
  }
  for (auto& m : out) {
    std::vector<double> ig;
    double iters = 0.0, wall = 0.0, e = 0.0, t = 0.0;
    for (const auto& r : records) {
      if (r.algorithm != m.algorithm) continue;
      ig.push_back(r.best_ig);
      iters += r.iterations;
      wall += r.wall_time;
      if (r.feasible()) {
        ++m.feasible;
        e += r.energy;
        t += r.time;
      }
      if (r.failed) ++m.failed;
    }
    m.n = static_cast<int>(ig.size());
    m.i_mean = sample_mean(ig);
    m.i_std = sample_std(ig);
    m.mean_iterations = iters / m.n;
    m.mean_wall_time = wall / m.n;
    if (m.feasible > 0) {
      m.mean_energy = e / m.feasible;
      m.mean_time = t / m.feasible;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(RobustnessFamily f) {
  switch (f) {
    case RobustnessFamily::Unbounded: return "unbounded";
    case RobustnessFamily::TimeWindow: return "time-window";
    case RobustnessFamily::Weighted: return "weighted";
  }
  return "?";
}

std::optional<RobustnessFamily> parse_family(std::string_view s) {
  for (auto f : {RobustnessFamily::Unbounded, RobustnessFamily::TimeWindow, RobustnessFamily::Weighted})
    if (s == to_string(f)) return f;
  return std::nullopt;
}

std::vector<double> split_wins(std::span<const double> best_ig) {
  const auto top = std::max_element(best_ig.begin(), best_ig.end());
  if (top == best_ig.end() || !(*top > 0.0)) return {};
  const double k = static_cast<double>(std::count(best_ig.begin(), best_ig.end(), *top));
  std::vector<double> wins(best_ig.size(), 0.0);
  for (std::size_t i = 0; i < best_ig.size(); ++i)
    if (best_ig[i] == *top) wins[i] = 1.0 / k;
  return wins;
}

MapOutcome draw_map(const RobustnessConfig& cfg, int map) {
  MapOutcome m;
  m.map = map;
  m.seed = splitmix64(cfg.base_seed ^ (0x5EEDULL << 48) ^ static_cast<std::uint64_t>(map));
  Rng rng(splitmix64(m.seed));
  const Workspace ws = Workspace::standard();
  const double margin = 10 * ws.cell();
  std::uniform_real_distribution<double> ux(ws.lower().x() + margin, ws.upper().x() - margin);
  std::uniform_real_distribution<double> uy(ws.lower().y() + margin, ws.upper().y() - margin);
  for (;;) {
    m.task.q_init = Vec3(ux(rng), uy(rng), 0.0);
    m.task.q_final = Vec3(ux(rng), uy(rng), 0.0);
    const double d = (m.task.q_final - m.task.q_init).norm();
    if (d >= cfg.min_separation && d <= cfg.max_separation) break;
  }
  switch (cfg.family) {
    case RobustnessFamily::Unbounded:
      break;
    case RobustnessFamily::TimeWindow:
      m.task.t_max = std::uniform_real_distribution<double>(3600.0, 10800.0)(rng);
      break;
    case RobustnessFamily::Weighted: {
      m.task.t_max = 10800.0;
      std::uniform_int_distribution<int> k(1, 5);
      m.kappa_air = k(rng);
      m.kappa_sea = k(rng);
      break;
    }
  }
  return m;
}

RobustnessResult robustness_experiment(const RobustnessConfig& cfg, unsigned threads, const MapProgressFn& progress) {
  if (cfg.maps < 1) throw std::invalid_argument("robustness: maps must be >= 1");
  if (cfg.algorithms.empty()) throw std::invalid_argument("robustness: no algorithms selected");
  RobustnessResult res;
  res.family = cfg.family;
  res.algorithms = cfg.algorithms;
  res.wins.assign(cfg.algorithms.size(), 0.0);
  res.maps.resize(static_cast<std::size_t>(cfg.maps));

  const std::size_t na = cfg.algorithms.size();
  const std::size_t n = res.maps.size();
  std::vector<std::optional<Environment>> envs(n);
  std::mutex progress_mu;
  std::vector<std::atomic<int>> remaining(n);
  for (auto& r : remaining) r = static_cast<int>(na);
  for (std::size_t m = 0; m < n; ++m) {
    res.maps[m] = draw_map(cfg, static_cast<int>(m));
    res.maps[m].best_ig.assign(na, 0.0);
  }

  // Environments are built lazily per map so memory stays bounded when
  // running serially.
  std::vector<std::once_flag> built(n);
  parallel_for(n * na, threads, [&](std::size_t job) {
    const std::size_t m = job / na;
    const std::size_t a = job % na;
    auto& map = res.maps[m];
    std::call_once(built[m], [&] {
      RandomEnvConfig ec = cfg.env;
      ec.kappa_air = map.kappa_air;
      ec.kappa_sea = map.kappa_sea;
      envs[m].emplace(generate_random_environment(map.seed, ec));
      map.env_hash = envs[m]->fingerprint();
    });
    try {
      auto r = run_planner(cfg.algorithms[a], *envs[m], cfg.vehicle, map.task, cfg.planner, cfg.pso,
                           child_seed(map.seed, cfg.algorithms[a], 0));
      map.best_ig[a] = r.best_ig;
    } catch (const PlannerInitError&) {
      map.best_ig[a] = 0.0;
    }
    if (--remaining[m] == 0) {
      envs[m].reset();
      map.wins = split_wins(map.best_ig);
      map.excluded = map.wins.empty();
      if (progress) {
        std::lock_guard lock(progress_mu);
        progress(map);
      }
    }
  });

  for (const auto& map : res.maps) {
    if (map.excluded) {
      res.excluded_maps.push_back(map.map);
      continue;
    }
    for (std::size_t a = 0; a < na; ++a) res.wins[a] += map.wins[a];
  }
  return res;
}

}  // namespace hauv
