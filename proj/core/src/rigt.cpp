#include "hauv/planners.hpp"

#include <chrono>

namespace hauv {

PlannerResult plan_rigt(const Environment& env, const VehicleParams& vehicle, const Task& task,
                        const PlannerConfig& config, SamplingTree* tree_out) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const Workspace& ws = env.workspace();
  const double delta = config.delta_m(ws);
  const double radius = config.r_m(ws);

  std::mt19937_64 rng(config.seed);
  EvalOptions eval = config.eval;
  eval.ig_when_over_budget = true;
  PathEvaluator evaluator(env, vehicle, task, eval);
  SamplingTree tree(task.q_init, radius);
  PlannerResult result;
  FitnessResult best;

  for (int it = 1; it <= config.max_it; ++it) {
    const Vec3 q_rand = tournament_sample(env.info(), 1, rng);
    const std::size_t i_nearest = tree.index().nearest(q_rand);
    const Vec3 q_feasible = steer(tree.node(i_nearest).pos, q_rand, delta);

    auto neighbours = tree.index().within(q_feasible, radius);
    std::erase_if(neighbours, [&](std::size_t i) { return tree.node(i).closed; });
    keep_closest(neighbours, q_feasible, tree.index().points(), config.rigt_neighbor_cap);

    for (auto qm : neighbours) {
      const Vec3 from = tree.node(qm).pos;
      const Vec3 q_new = steer(from, q_feasible, delta);
      if (!segment_collision_free(from, q_new, env.obstacles(), config.eval.ds_max)) continue;
      auto control = candidate_polyline(q_new, tree.chain(qm), task.q_final);
      auto fit = evaluator.evaluate(control);
      ++result.evaluations;
      // Unreachable or colliding paths cannot be repaired by growing further.
      if (!fit.reachable || !fit.collision_free) continue;

      TreeNode node;
      node.pos = q_new;
      node.parent = static_cast<int>(qm);
      node.ig = fit.ig;
      node.e = fit.e;
      node.t = fit.t;
      node.compared_with = static_cast<int>(qm);
      if (prune_dominated(node, tree.node(qm))) continue;

      node.closed = fit.e > task.e_max || fit.t > task.t_max;
      tree.add(node);
      if (!node.closed && node.ig > result.best_ig) {
        result.best_ig = node.ig;
        result.best_e = node.e;
        result.best_t = node.t;
        result.best_control = std::move(control);
        best = std::move(fit);
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
