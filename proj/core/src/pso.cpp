#include "hauv/planners.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace hauv {

namespace {

std::vector<Vec3> particle_polyline(const Task& task, std::span<const Vec3> ctrl) {
  std::vector<Vec3> poly;
  poly.reserve(ctrl.size() + 2);
  poly.push_back(task.q_init);
  poly.insert(poly.end(), ctrl.begin(), ctrl.end());
  poly.push_back(task.q_final);
  return poly;
}

// Proposal for the rejection-sampled initial swarm: control points scattered
// around the straight start-goal line with a spread that shrinks as attempts
// fail, and a vertical mode (mixed, all air, all sea) drawn per attempt.
std::vector<Vec3> propose(const Task& task, const Workspace& ws, int n, int attempt, std::mt19937_64& rng) {
  const double spread = std::max(0.05, std::pow(0.995, attempt));
  const Vec3 lo = ws.lower();
  const Vec3 hi = ws.upper();
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> mode_pick(0, 2);
  const int mode = mode_pick(rng);
  const double air_lo = std::min(hi.z(), ws.z_of(ws.sea_level_index() + std::min(1, ws.nz() - 1 - ws.sea_level_index())));
  std::vector<Vec3> pts(n);
  for (int j = 0; j < n; ++j) {
    const double t = static_cast<double>(j + 1) / (n + 1);
    const Vec3 base = task.q_init + t * (task.q_final - task.q_init);
    Vec3 p;
    p.x() = base.x() + spread * unit(rng) * (hi.x() - lo.x());
    p.y() = base.y() + spread * unit(rng) * (hi.y() - lo.y());
    const double u = 0.5 * (unit(rng) + 1.0);
    switch (mode) {
      case 1: p.z() = air_lo + u * (hi.z() - air_lo); break;
      case 2: p.z() = lo.z() + u * (0.0 - lo.z()); break;
      default: p.z() = lo.z() + u * (hi.z() - lo.z()); break;
    }
    pts[j] = ws.clamp(p);
  }
  return pts;
}

}  // namespace

void pso_step(Particle& p, std::span<const Vec3> gbest, double w, const PsoConfig& cfg, const Workspace& ws,
              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double vmax = cfg.v_max_m(ws);
  for (std::size_t j = 0; j < p.position.size(); ++j) {
    for (int a = 0; a < 3; ++a) {
      const double r1 = unit(rng);
      const double r2 = unit(rng);
      double v = w * p.velocity[j][a] + cfg.c1 * r1 * (p.pbest[j][a] - p.position[j][a]) +
                 cfg.c2 * r2 * (gbest[j][a] - p.position[j][a]);
      v = std::clamp(v, -vmax, vmax);
      p.velocity[j][a] = v;
    }
    p.position[j] = ws.clamp(p.position[j] + p.velocity[j]);
  }
}

PlannerResult plan_pso(const Environment& env, const VehicleParams& vehicle, const Task& task,
                       const PsoConfig& config, std::vector<Particle>* swarm_out) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const Workspace& ws = env.workspace();
  std::mt19937_64 rng(config.seed);
  PathEvaluator evaluator(env, vehicle, task, config.eval);
  PlannerResult result;

  std::vector<Particle> swarm(config.particles);
  std::vector<FitnessResult> pbest_fit(config.particles);
  for (int k = 0; k < config.particles; ++k) {
    bool ok = false;
    for (int attempt = 0; attempt < config.init_attempts && !ok; ++attempt) {
      auto ctrl = propose(task, ws, config.control_points, attempt, rng);
      auto fit = evaluator.evaluate(particle_polyline(task, ctrl));
      ++result.evaluations;
      if (!fit.feasible) continue;
      auto& p = swarm[k];
      p.position = ctrl;
      p.velocity.assign(ctrl.size(), Vec3::Zero());
      p.pbest = ctrl;
      p.pbest_ig = fit.ig;
      pbest_fit[k] = std::move(fit);
      ok = true;
    }
    if (!ok) {
      throw PlannerInitError("pso: no feasible initial path for particle " + std::to_string(k) + " after " +
                             std::to_string(config.init_attempts) +
                             " attempts; raise the budget or move the endpoints closer");
    }
  }

  std::size_t g = 0;
  for (int k = 1; k < config.particles; ++k)
    if (swarm[k].pbest_ig > swarm[g].pbest_ig) g = k;
  std::vector<Vec3> gbest = swarm[g].pbest;
  double gbest_ig = swarm[g].pbest_ig;
  FitnessResult gbest_fit = pbest_fit[g];

  double w = config.w0;
  for (int it = 1; it <= config.max_it; ++it) {
    for (auto& p : swarm) {
      pso_step(p, gbest, w, config, ws, rng);
      auto fit = evaluator.evaluate(particle_polyline(task, p.position));
      ++result.evaluations;
      if (fit.feasible && fit.ig > p.pbest_ig) {
        p.pbest = p.position;
        p.pbest_ig = fit.ig;
        if (fit.ig > gbest_ig) {
          gbest = p.position;
          gbest_ig = fit.ig;
          gbest_fit = std::move(fit);
        }
      }
    }
    w *= config.w_damp;
    result.bestsol.push_back(gbest_ig);
    result.iterations = it;
    if (stalled(result.bestsol, config.it_stop)) break;
  }

  result.best_ig = gbest_ig;
  if (gbest_ig > 0.0) {
    result.best_e = gbest_fit.e;
    result.best_t = gbest_fit.t;
    result.best_control = particle_polyline(task, gbest);
    result.best_path = std::move(gbest_fit.path);
  }
  result.tree_size = swarm.size();
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (swarm_out) *swarm_out = std::move(swarm);
  return result;
}

}  // namespace hauv
