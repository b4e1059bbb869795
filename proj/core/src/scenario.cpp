#include "hauv/bench.hpp"
#include "hauv/ingest.hpp"

#include <cmath>
#include <stdexcept>

#ifndef HAUV_DATA_DIR
#define HAUV_DATA_DIR "data"
#endif

namespace hauv {

namespace {

constexpr double kHour = 3600.0;

ScenarioSpec base_spec(int id, Vec3 q_init, Vec3 q_final, double t_max) {
  ScenarioSpec s;
  s.id = id;
  s.name = "scenario" + std::to_string(id);
  s.task.q_init = q_init;
  s.task.q_final = q_final;
  s.task.t_max = t_max;
  s.env_seed = 1000 + static_cast<std::uint64_t>(id);
  s.base_seed = 7 * static_cast<std::uint64_t>(id) + 1;
  return s;
}

void check_endpoint(const Vec3& q, const Environment& env, const char* which) {
  if (!env.workspace().contains(q))
    throw std::invalid_argument(std::string(which) + " lies outside the workspace");
  if (env.obstacles().is_obstructed(q)) throw std::invalid_argument(std::string(which) + " is inside an obstacle");
}

}  // namespace

void ScenarioSpec::validate() const {
  if (repetitions < 1) throw std::invalid_argument("scenario: repetitions must be >= 1");
  if (algorithms.empty()) throw std::invalid_argument("scenario: no algorithms selected");
  if (!(kappa_air >= 0.0) || !(kappa_sea >= 0.0)) throw std::invalid_argument("scenario: kappa must be >= 0");
  if (!(task.t_max > 0.0)) throw std::invalid_argument("scenario: t_max must be positive");
  if (!(task.e_max > 0.0)) throw std::invalid_argument("scenario: e_max must be positive");
  if (source == EnvSource::File && env_file.empty()) throw std::invalid_argument("scenario: env_file not set");
  vehicle.validate();
  planner.validate();
  pso.validate();
}

ScenarioSpec builtin_scenario(int id) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (id) {
    case 1: {
      auto s = base_spec(1, {1000, 3750, 0}, {4000, 3750, 0}, inf);
      s.slope = true;
      return s;
    }
    case 2: {
      auto s = base_spec(2, {500, 2500, 0}, {4500, 2500, 0}, 3 * kHour);
      s.source = EnvSource::File;
      s.env_file = default_scenario2_grid();
      return s;
    }
    case 3: {
      auto s = base_spec(3, {500, 2500, 0}, {4500, 2500, 0}, kHour);
      s.source = EnvSource::Bands;
      return s;
    }
    case 4: {
      auto s = builtin_scenario(1);
      s.id = 4;
      s.name = "scenario4";
      s.kappa_air = 1.0;
      s.kappa_sea = 3.0;
      s.base_seed = 29;
      return s;
    }
    case 5: {
      auto s = builtin_scenario(1);
      s.id = 5;
      s.name = "scenario5";
      s.kappa_air = 3.0;
      s.kappa_sea = 1.0;
      s.base_seed = 36;
      return s;
    }
    default:
      throw std::out_of_range("no built-in scenario " + std::to_string(id) + " (expected 1..5)");
  }
}

std::filesystem::path default_scenario2_grid() {
  return std::filesystem::path(HAUV_DATA_DIR) / "scenario2.ipgrid";
}

ObstacleSet continental_slope(const Workspace& ws) {
  ObstacleSet obs;
  const double x_hi = ws.upper().x();
  const double z0 = ws.lower().z();
  for (int i = 0; i < 5; ++i) {
    const double x_lo = x_hi / 2.0 + i * x_hi / 10.0;
    obs.add_box({Vec3(x_lo, 0.0, z0), Vec3(x_hi, ws.upper().y(), z0 + (i + 1) * ws.cell())});
  }
  return obs;
}

std::vector<GaussianFeature> band_features(std::uint64_t seed, const Workspace& ws) {
  Rng rng(seed);
  const Vec3 lo = ws.lower();
  const Vec3 hi = ws.upper();
  std::uniform_real_distribution<double> uy(lo.y() + 0.2 * (hi.y() - lo.y()), hi.y() - 0.2 * (hi.y() - lo.y()));
  std::uniform_real_distribution<double> ug(1.0, 10.0);
  std::uniform_int_distribution<int> count(3, 5);

  std::vector<GaussianFeature> out;
  auto add_band = [&](double x_lo, double x_hi, double z_lo, double z_hi) {
    std::uniform_real_distribution<double> ux(x_lo, x_hi);
    std::uniform_real_distribution<double> uz(z_lo, z_hi);
    const int n = count(rng);
    for (int b = 0; b < n; ++b) {
      GaussianFeature f;
      f.mu = Vec3(ux(rng), uy(rng), uz(rng));
      f.sigma = random_covariance(rng);
      f.g = ug(rng);
      out.push_back(f);
    }
  };
  add_band(0.6 * hi.x(), hi.x(), ws.cell(), hi.z());  // atmosphere
  add_band(0.2 * hi.x(), 0.6 * hi.x(), lo.z(), 0.0);  // ocean
  return out;
}

Environment build_environment(const ScenarioSpec& spec) {
  const Workspace ws = Workspace::standard();
  ObstacleSet obstacles = spec.slope ? continental_slope(ws) : ObstacleSet{};
  auto make = [&]() -> Environment {
    switch (spec.source) {
      case EnvSource::Random: {
        RandomEnvConfig cfg = spec.env;
        cfg.kappa_air = spec.kappa_air;
        cfg.kappa_sea = spec.kappa_sea;
        return generate_random_environment(spec.env_seed, cfg, ws, std::move(obstacles));
      }
      case EnvSource::Bands: {
        auto features = band_features(spec.env_seed, ws);
        Rng rng(splitmix64(spec.env_seed));
        auto vortices = random_vortices(rng, ws, spec.env);
        return Environment(build_info_map(features, ws, spec.kappa_air, spec.kappa_sea),
                           VelocityField::analytic(ws, std::move(vortices)), std::move(obstacles));
      }
      case EnvSource::File:
        return ingest::make_environment(ingest::load_forecast_grid(spec.env_file), ws, spec.kappa_air,
                                        spec.kappa_sea, std::move(obstacles));
    }
    throw std::logic_error("unknown environment source");
  };
  Environment env = make();
  check_endpoint(spec.task.q_init, env, "q_init");
  check_endpoint(spec.task.q_final, env, "q_final");
  return env;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t child_seed(std::uint64_t base, Algorithm a, int repetition) {
  const auto tag = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(repetition);
  return splitmix64(base ^ tag);
}

PlannerResult run_planner(Algorithm a, const Environment& env, const VehicleParams& vehicle, const Task& task,
                          const PlannerConfig& planner, const PsoConfig& pso, std::uint64_t seed) {
  switch (a) {
    case Algorithm::Pso: {
      PsoConfig cfg = pso;
      cfg.seed = seed;
      return plan_pso(env, vehicle, task, cfg);
    }
    case Algorithm::Rigt: {
      PlannerConfig cfg = planner;
      cfg.variant = a;
      cfg.seed = seed;
      return plan_rigt(env, vehicle, task, cfg);
    }
    default: {
      PlannerConfig cfg = planner;
      cfg.variant = a;
      cfg.seed = seed;
      return plan_rast_family(env, vehicle, task, cfg);
    }
  }
}

}  // namespace hauv
