#include "hauv/planners.hpp"

#include <chrono>
#include <limits>

namespace hauv {

namespace {

double heuristic(Algorithm variant, const FitnessResult& f) {
  if (variant == Algorithm::RastI) return f.ig;
  if (f.e > 0.0) return f.ig / f.e;
  return f.ig > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

PlannerResult plan_rast_family(const Environment& env, const VehicleParams& vehicle, const Task& task,
                               const PlannerConfig& config, SamplingTree* tree_out) {
  config.validate();
  if (config.variant == Algorithm::Rigt || config.variant == Algorithm::Pso)
    throw std::invalid_argument("plan_rast_family: variant must be a RAST-family algorithm");
  const auto start = std::chrono::steady_clock::now();
  const Workspace& ws = env.workspace();
  const double delta = config.delta_m(ws);
  const double radius = config.r_m(ws);
  const int m = config.variant == Algorithm::Rrst ? 1 : config.m;
  const bool rewire_parent = config.variant != Algorithm::Rast;

  std::mt19937_64 rng(config.seed);
  PathEvaluator evaluator(env, vehicle, task, config.eval);
  SamplingTree tree(task.q_init, radius);
  PlannerResult result;
  FitnessResult best;

  for (int it = 1; it <= config.max_it; ++it) {
    const Vec3 q_ts = tournament_sample(env.info(), m, rng);
    const std::size_t i_nearest = tree.index().nearest(q_ts);
    const Vec3 q_new = steer(tree.node(i_nearest).pos, q_ts, delta);

    if (segment_collision_free(tree.node(i_nearest).pos, q_new, env.obstacles(), config.eval.ds_max)) {
      std::optional<std::size_t> parent;
      FitnessResult chosen;
      if (rewire_parent) {
        auto neighbours = tree.index().within(q_new, radius);
        keep_closest(neighbours, q_new, tree.index().points(), config.neighbor_cap);
        double c_max = 0.0;
        for (auto qm : neighbours) {
          auto fit = evaluator.evaluate(candidate_polyline(q_new, tree.chain(qm), task.q_final));
          ++result.evaluations;
          if (!fit.feasible) continue;
          const double c1 = heuristic(config.variant, fit);
          if (c1 >= c_max) {
            c_max = c1;
            parent = qm;
            chosen = std::move(fit);
          }
        }
      } else {
        auto fit = evaluator.evaluate(candidate_polyline(q_new, tree.chain(i_nearest), task.q_final));
        ++result.evaluations;
        if (fit.feasible) {
          parent = i_nearest;
          chosen = std::move(fit);
        }
      }
      if (parent) {
        TreeNode node;
        node.pos = q_new;
        node.parent = static_cast<int>(*parent);
        node.ig = chosen.ig;
        node.e = chosen.e;
        node.t = chosen.t;
        tree.add(node);
        if (node.ig > result.best_ig) {
          result.best_ig = node.ig;
          result.best_e = node.e;
          result.best_t = node.t;
          result.best_control = candidate_polyline(q_new, tree.chain(*parent), task.q_final);
          best = std::move(chosen);
        }
      }
    }
    result.bestsol.push_back(result.best_ig);
    result.iterations = it;
    if (stalled(result.bestsol, config.it_stop)) break;
  }

  result.best_path = std::move(best.path);
  result.tree_size = tree.size();
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (tree_out) *tree_out = std::move(tree);
  return result;
}

}  // namespace hauv
