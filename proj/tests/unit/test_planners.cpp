#include "hauv/bench.hpp"
#include "hauv/planners.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

namespace hauv {
namespace {

const Environment& shared_env() {
  static const Environment env = generate_random_environment(31, RandomEnvConfig{});
  return env;
}

Task shared_task() { return Task{Vec3(1000, 3750, 0), Vec3(4000, 3750, 0)}; }

PlannerConfig quick(Algorithm a, std::uint64_t seed) {
  PlannerConfig c;
  c.variant = a;
  c.max_it = 150;
  c.it_stop = 60;
  c.seed = seed;
  return c;
}

PsoConfig quick_pso(std::uint64_t seed) {
  PsoConfig c;
  c.particles = 10;
  c.max_it = 40;
  c.it_stop = 20;
  c.seed = seed;
  return c;
}

TEST(Tournament, SingleDrawIsUniform) {
  const Workspace ws(5, 4, 3, 50.0, 1);
  std::vector<double> values(ws.size());
  std::mt19937_64 vr(1);
  for (auto& v : values) v = std::uniform_real_distribution<double>(0, 1)(vr);
  const InfoMap im(ws, values, 1.0, 1.0);
  std::vector<int> counts(ws.size(), 0);
  std::mt19937_64 rng(2);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[ws.flat(ws.nearest_index(tournament_sample(im, 1, rng)))];
  const double expected = static_cast<double>(draws) / ws.size();
  double chi2 = 0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 0.999 quantile of chi-square with 59 degrees of freedom.
  EXPECT_LT(chi2, 98.3242);
}

TEST(Tournament, TiesGoToFirstDraw) {
  const Workspace ws(6, 6, 3, 50.0, 1);
  const InfoMap flat(ws, std::vector<double>(ws.size(), 0.5), 1.0, 1.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 a(seed), b(seed);
    EXPECT_EQ(tournament_sample(flat, 7, a), tournament_sample(flat, 1, b));
  }
}

TEST(Tournament, UniqueMaximumIsMostFrequent) {
  const Workspace ws(4, 4, 2, 50.0, 0);
  std::vector<double> values(ws.size(), 0.1);
  values[5] = 0.9;
  for (std::size_t j = 0; j < values.size(); ++j)
    if (j != 5) values[j] = 0.1 + 0.01 * static_cast<double>(j);
  const InfoMap im(ws, values, 1.0, 1.0);
  std::map<std::size_t, int> freq;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) ++freq[ws.flat(ws.nearest_index(tournament_sample(im, static_cast<int>(ws.size()), rng)))];
  for (const auto& [idx, n] : freq) EXPECT_LE(n, freq[5]) << idx;
}

TEST(NearestNear, SmallCases) {
  const std::vector<Vec3> one{Vec3(1, 2, 3)};
  EXPECT_EQ(nearest(Vec3(100, 100, 100), one), 0u);
  const std::vector<Vec3> pts{Vec3(0, 0, 0), Vec3(10, 0, 0), Vec3(20, 0, 0)};
  EXPECT_EQ(nearest(Vec3(10, 0, 0), pts), 1u);
  EXPECT_TRUE(near(pts, Vec3(5, 0, 0), 1.0).empty());
  EXPECT_EQ(near(pts, Vec3(20, 0, 0), 1.0), (std::vector<std::size_t>{2}));
  EXPECT_THROW(nearest(Vec3::Zero(), {}), std::invalid_argument);
}

TEST(NearestNear, HashGridMatchesBruteForce) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ux(0, 5000), uz(-300, 300);
  for (double cell : {100.0, 500.0, 2000.0}) {
    NodeIndex index(cell);
    std::vector<Vec3> pts;
    for (int i = 0; i < 400; ++i) {
      pts.emplace_back(ux(rng), ux(rng), uz(rng));
      index.insert(pts.size() - 1, pts.back());
      if (i % 7 != 0) continue;
      for (int q = 0; q < 20; ++q) {
        const Vec3 p(ux(rng) * 1.2 - 500, ux(rng), uz(rng));
        ASSERT_EQ(index.nearest(p), nearest(p, pts));
        const double r = std::uniform_real_distribution<double>(10, 1500)(rng);
        ASSERT_EQ(index.within(p, r), near(pts, p, r));
      }
    }
  }
}

TEST(Steer, Cases) {
  EXPECT_EQ(steer(Vec3(0, 0, 0), Vec3(10, 0, 0), 5.0), Vec3(5, 0, 0));
  EXPECT_EQ(steer(Vec3(0, 0, 0), Vec3(3, 4, 0), 5.0), Vec3(3, 4, 0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1000, 1000);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a(u(rng), u(rng), u(rng)), b(u(rng), u(rng), u(rng));
    const double d = std::abs(u(rng)) + 1;
    ASSERT_LE((steer(a, b, d) - a).norm(), d * (1 + 1e-12));
  }
}

TEST(KeepClosest, KeepsNearestInIdOrder) {
  const std::vector<Vec3> pts{Vec3(9, 0, 0), Vec3(1, 0, 0), Vec3(5, 0, 0), Vec3(2, 0, 0), Vec3(1, 0, 0)};
  std::vector<std::size_t> ids{0, 1, 2, 3, 4};
  keep_closest(ids, Vec3::Zero(), pts, 3);
  EXPECT_EQ(ids, (std::vector<std::size_t>{1, 3, 4}));
  std::vector<std::size_t> all{0, 1};
  keep_closest(all, Vec3::Zero(), pts, 0);
  EXPECT_EQ(all.size(), 2u);
}

TEST(Prune, StrictDomination) {
  TreeNode q_m{Vec3::Zero(), -1, 10.0, 0.5, 3600.0};
  EXPECT_TRUE(prune_dominated(TreeNode{Vec3::Zero(), -1, 5.0, 0.9, 7200.0}, q_m));
  EXPECT_FALSE(prune_dominated(q_m, q_m));
  EXPECT_FALSE(prune_dominated(TreeNode{Vec3::Zero(), -1, 11.0, 0.9, 7200.0}, q_m));
}

TEST(Stalled, Rule) {
  std::vector<double> s;
  for (int it = 1; it <= 4; ++it) {
    s.push_back(0.0);
    EXPECT_EQ(stalled(s, 3), it >= 3) << it;
  }
  const std::vector<double> growing{1, 2, 3, 4, 5};
  EXPECT_FALSE(stalled(growing, 3));
  const std::vector<double> flat_tail{1, 2, 2, 2};
  EXPECT_FALSE(stalled(std::span(flat_tail).first(3), 2));
  EXPECT_TRUE(stalled(flat_tail, 2));
}

void audit_tree(const SamplingTree& tree, const Task& task, const Environment& env, bool rigt) {
  ASSERT_EQ(tree.node(0).pos, task.q_init);
  ASSERT_EQ(tree.node(0).parent, -1);
  PathEvaluator ev(env, VehicleParams{}, task, EvalOptions{25.0, rigt});
  for (std::size_t i = 1; i < tree.size(); ++i) {
    const auto& n = tree.node(i);
    ASSERT_GE(n.parent, 0);
    ASSERT_LT(static_cast<std::size_t>(n.parent), i);  // parents precede children: no cycles
    if (i % 9 == 0) {
      const auto chain = tree.chain(static_cast<std::size_t>(n.parent));
      const auto fit = ev.evaluate(candidate_polyline(n.pos, chain, task.q_final));
      ASSERT_NEAR(fit.ig, n.ig, 1e-9 * std::max(1.0, n.ig));
      ASSERT_NEAR(fit.e, n.e, 1e-9);
      ASSERT_NEAR(fit.t, n.t, 1e-9 * std::max(1.0, n.t));
    }
    if (rigt) {
      ASSERT_EQ(n.compared_with, n.parent);
      ASSERT_FALSE(prune_dominated(n, tree.node(static_cast<std::size_t>(n.compared_with))));
      if (tree.node(static_cast<std::size_t>(n.parent)).closed) FAIL() << "closed node grew a branch";
    }
  }
}

void check_result(const PlannerResult& r, const Task& task, const Environment& env, int max_it, int it_stop) {
  ASSERT_EQ(static_cast<int>(r.bestsol.size()), r.iterations);
  for (std::size_t i = 1; i < r.bestsol.size(); ++i) ASSERT_GE(r.bestsol[i], r.bestsol[i - 1]);
  if (r.iterations < max_it) {
    ASSERT_TRUE(stalled(r.bestsol, it_stop));
    ASSERT_FALSE(stalled(std::span(r.bestsol).first(r.bestsol.size() - 1), it_stop));
  }
  if (r.best_ig > 0) {
    std::vector<Vec3> pts;
    for (const auto& s : r.best_path.samples) pts.push_back(s.pos);
    const auto rep = check_path(pts, env, VehicleParams{}, task);
    ASSERT_TRUE(rep.ok()) << rep.violations.front();
    ASSERT_EQ(r.bestsol.back(), r.best_ig);
  } else {
    ASSERT_TRUE(r.best_path.empty());
  }
}

class TreePlanners : public ::testing::TestWithParam<Algorithm> {};

TEST_P(TreePlanners, FeasibleAuditedAndDeterministic) {
  const auto& env = shared_env();
  const Task task = shared_task();
  const auto cfg = quick(GetParam(), 17);
  SamplingTree tree(task.q_init, cfg.r_m(env.workspace()));
  const bool rigt = GetParam() == Algorithm::Rigt;
  const auto r = rigt ? plan_rigt(env, VehicleParams{}, task, cfg, &tree)
                      : plan_rast_family(env, VehicleParams{}, task, cfg, &tree);
  check_result(r, task, env, cfg.max_it, cfg.it_stop);
  EXPECT_GT(r.best_ig, 0.0);
  audit_tree(tree, task, env, rigt);

  const auto again = run_planner(GetParam(), env, VehicleParams{}, task, cfg, PsoConfig{}, 17);
  EXPECT_EQ(again.best_ig, r.best_ig);
  EXPECT_EQ(again.bestsol, r.bestsol);
  EXPECT_EQ(again.best_control, r.best_control);
}

TEST_P(TreePlanners, DegenerateTaskYieldsNothing) {
  const auto& env = shared_env();
  Task task{Vec3(2000, 2000, 0), Vec3(2000, 2000, 0), 0.0, 1e-12};
  auto cfg = quick(GetParam(), 1);
  cfg.max_it = 30;
  cfg.it_stop = 10;
  const auto r = run_planner(GetParam(), env, VehicleParams{}, task, cfg, PsoConfig{}, 1);
  EXPECT_EQ(r.best_ig, 0.0);
  EXPECT_TRUE(r.best_path.empty());
  EXPECT_EQ(r.iterations, 10);
}

INSTANTIATE_TEST_SUITE_P(All, TreePlanners,
                         ::testing::Values(Algorithm::RastIE, Algorithm::RastI, Algorithm::Rast, Algorithm::Rrst,
                                           Algorithm::Rigt),
                         [](const auto& info) {
                           auto s = to_string(info.param);
                           std::erase(s, '-');
                           return s;
                         });

TEST(Rigt, TinyBudgetClosesEveryNode) {
  const auto& env = shared_env();
  Task task = shared_task();
  task.e_max = 1e-6;
  const auto cfg = quick(Algorithm::Rigt, 3);
  SamplingTree tree(task.q_init, cfg.r_m(env.workspace()));
  const auto r = plan_rigt(env, VehicleParams{}, task, cfg, &tree);
  EXPECT_EQ(r.best_ig, 0.0);
  for (std::size_t i = 1; i < tree.size(); ++i) EXPECT_TRUE(tree.node(i).closed);
}

TEST(Pso, InertiaDecay) {
  EXPECT_NEAR(pso_inertia(1.0, 0.99, 2), 0.9801, 1e-15);
  EXPECT_EQ(pso_inertia(1.0, 0.99, 0), 1.0);
}

TEST(Pso, FixedPoint) {
  const auto ws = Workspace::standard();
  Particle p;
  p.position = {Vec3(1000, 1000, -50), Vec3(2000, 1500, 100)};
  p.velocity.assign(2, Vec3::Zero());
  p.pbest = p.position;
  std::mt19937_64 rng(1);
  const auto before = p.position;
  pso_step(p, p.position, 0.7, PsoConfig{}, ws, rng);
  EXPECT_EQ(p.position, before);
  EXPECT_EQ(p.velocity[1], Vec3::Zero());
}

TEST(Pso, StepsStayInsideWorkspaceAndRespectVelocityClamp) {
  const auto ws = Workspace::standard();
  PsoConfig cfg;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ux(0, 5000), uz(-300, 300);
  Particle p;
  for (int j = 0; j < 5; ++j) {
    p.position.emplace_back(ux(rng), ux(rng), uz(rng));
    p.pbest.emplace_back(ux(rng), ux(rng), uz(rng));
  }
  p.velocity.assign(5, Vec3::Zero());
  std::vector<Vec3> gbest{Vec3(0, 0, -300), Vec3(5000, 5000, 300), Vec3(0, 5000, 0), Vec3(5000, 0, 0),
                          Vec3(2500, 2500, 300)};
  double w = cfg.w0;
  for (int it = 0; it < 100; ++it) {
    pso_step(p, gbest, w, cfg, ws, rng);
    w *= cfg.w_damp;
    for (std::size_t j = 0; j < 5; ++j) {
      ASSERT_TRUE(ws.contains(p.position[j], 0.0));
      ASSERT_LE(p.velocity[j].cwiseAbs().maxCoeff(), cfg.v_max_m(ws));
    }
  }
}

TEST(Pso, PlanIsFeasibleAndDeterministic) {
  const auto& env = shared_env();
  const Task task = shared_task();
  const auto cfg = quick_pso(5);
  std::vector<Particle> swarm;
  const auto r = plan_pso(env, VehicleParams{}, task, cfg, &swarm);
  check_result(r, task, env, cfg.max_it, cfg.it_stop);
  EXPECT_GT(r.best_ig, 0.0);
  EXPECT_EQ(swarm.size(), 10u);
  for (const auto& p : swarm) {
    EXPECT_GT(p.pbest_ig, 0.0);
    EXPECT_LE(p.pbest_ig, r.best_ig);
  }
  EXPECT_EQ(plan_pso(env, VehicleParams{}, task, cfg).bestsol, r.bestsol);
}

TEST(Pso, ImpossibleBudgetFailsInitialization) {
  const auto& env = shared_env();
  Task task = shared_task();
  task.e_max = 1e-6;
  auto cfg = quick_pso(1);
  cfg.init_attempts = 50;
  try {
    plan_pso(env, VehicleParams{}, task, cfg);
    FAIL();
  } catch (const PlannerInitError& e) {
    EXPECT_NE(std::string(e.what()).find("budget"), std::string::npos);
  }
}

TEST(Config, Validation) {
  PlannerConfig c;
  c.r = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  PsoConfig p;
  p.it_stop = p.max_it;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  EXPECT_EQ(parse_algorithm("RAST*-I/E"), Algorithm::RastIE);
  EXPECT_EQ(parse_algorithm("rrst"), Algorithm::Rrst);
  EXPECT_FALSE(parse_algorithm("rrt"));
}

}  // namespace
}  // namespace hauv
