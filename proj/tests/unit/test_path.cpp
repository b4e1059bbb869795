#include "hauv/path_eval.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace hauv {
namespace {

Environment flat_env(std::vector<double> im_values, double ka = 1.0, double ks = 1.0, ObstacleSet obs = {}) {
  const auto ws = Workspace::standard();
  InfoMap im(ws, std::move(im_values), ka, ks);
  return Environment(std::move(im), VelocityField::still(ws), std::move(obs));
}

std::vector<Vec3> random_polyline(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> ux(100, 4900), uz(-290, 290);
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i) pts.emplace_back(ux(rng), ux(rng), uz(rng));
  return pts;
}

TEST(Bernstein, Values) {
  EXPECT_EQ(bernstein_basis(0, 3, 0.0), 1.0);
  EXPECT_EQ(bernstein_basis(3, 3, 1.0), 1.0);
  EXPECT_NEAR(bernstein_basis(1, 3, 0.5), 0.375, 1e-15);
}

TEST(Bernstein, PartitionOfUnity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 100; ++i) {
    const double s = u(rng);
    double sum = 0;
    for (int n = 0; n <= 3; ++n) sum += bernstein_basis(n, 3, s);
    ASSERT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Spline, TwoNodesGiveStraightSegment) {
  const std::vector<Vec3> nodes{Vec3(100, 200, -50), Vec3(900, 1400, -250)};
  const auto path = smooth_path(nodes, 25.0);
  const Vec3 d = (nodes[1] - nodes[0]).normalized();
  for (const auto& s : path.samples) {
    const Vec3 r = s.pos - nodes[0];
    ASSERT_LE((r - r.dot(d) * d).norm(), 1e-9);
  }
}

TEST(Spline, EndpointsAndSpacing) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto nodes = random_polyline(rng, 2 + trial % 7);
    const auto path = smooth_path(nodes, 25.0);
    ASSERT_LE((path.samples.front().pos - nodes.front()).norm(), 1e-9);
    ASSERT_LE((path.samples.back().pos - nodes.back()).norm(), 1e-9);
    for (std::size_t i = 1; i < path.samples.size(); ++i) {
      const auto& a = path.samples[i - 1];
      const auto& b = path.samples[i];
      ASSERT_LE((b.pos - a.pos).norm(), 25.0 + 1e-9);
      // No segment straddles the surface.
      ASSERT_FALSE((a.pos.z() > 0.0 && b.pos.z() < 0.0) || (a.pos.z() < 0.0 && b.pos.z() > 0.0));
      ASSERT_NEAR(b.s - a.s, (b.pos - a.pos).norm(), 1e-9);
    }
  }
}

TEST(Spline, ConvexHullMembership) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto nodes = random_polyline(rng, 6);
    const auto path = smooth_path(nodes, 200.0);
    for (std::size_t i = 0; i < path.samples.size(); i += 3)
      ASSERT_TRUE(oracle::in_convex_hull(path.samples[i].pos, nodes)) << trial << " sample " << i;
  }
}

TEST(Spline, ClampedCurveOnlyInterpolatesEnds) {
  const std::vector<Vec3> nodes{Vec3(0, 0, 0), Vec3(1000, 0, 0), Vec3(1000, 1000, 0), Vec3(2000, 1000, 0)};
  EXPECT_LE((spline_point(nodes, 0.0) - nodes.front()).norm(), 1e-12);
  EXPECT_LE((spline_point(nodes, 1.0) - nodes.back()).norm(), 1e-12);
  EXPECT_GT((spline_point(nodes, 1.0 / 3.0) - nodes[1]).norm(), 1.0);
}

TEST(Spline, TransitionsCountSurfaceCrossings) {
  const std::vector<Vec3> up{Vec3(100, 100, -100), Vec3(1000, 100, 100)};
  EXPECT_EQ(smooth_path(up, 25.0).transitions, 1);
  const std::vector<Vec3> flat_sea{Vec3(100, 100, 0), Vec3(1000, 100, 0)};
  EXPECT_EQ(smooth_path(flat_sea, 25.0).transitions, 0);
  const std::vector<Vec3> hop{Vec3(100, 100, 0), Vec3(500, 100, 200), Vec3(900, 100, 0)};
  EXPECT_EQ(smooth_path(hop, 25.0).transitions, 2);
}

TEST(Spline, TooFewNodesThrows) {
  const std::vector<Vec3> one{Vec3(1, 2, 3)};
  EXPECT_THROW(smooth_path(one, 25.0), std::invalid_argument);
}

TEST(Measured, EmptyPathLeavesZeros) {
  const auto env = flat_env(std::vector<double>(Workspace::standard().size(), 1.0));
  MeasuredArray m(env.workspace());
  accumulate_information(SmoothPath{}, env.info(), SensorParams{}, m);
  EXPECT_TRUE(m.touched().empty());
  EXPECT_EQ(total_information(m, env.info()), 0.0);
}

TEST(Measured, SingleSampleAtGridPoint) {
  const auto ws = Workspace::standard();
  const GridIndex g{20, 30, 4};
  std::vector<double> values(ws.size(), 1.0);
  const auto env = flat_env(values);
  SmoothPath path;
  path.samples.push_back({ws.point(g), Medium::Sea, 0.0});
  MeasuredArray m(ws);
  accumulate_information(path, env.info(), SensorParams{}, m);
  EXPECT_EQ(m[ws.flat(g)], 1.0);
  EXPECT_NEAR(m[ws.flat(g.i + 1, g.j, g.k)], std::exp(-0.25), 1e-15);
  EXPECT_NEAR(m[ws.flat(g.i, g.j, g.k + 1)], 0.778801, 5e-7);
  // Second pass changes nothing.
  std::vector<double> before(ws.size());
  for (std::size_t j = 0; j < ws.size(); ++j) before[j] = m[j];
  accumulate_information(path, env.info(), SensorParams{}, m);
  for (std::size_t j = 0; j < ws.size(); ++j) ASSERT_EQ(m[j], before[j]);
}

TEST(Measured, WeightedSum) {
  const auto ws = Workspace::standard();
  std::vector<double> values(ws.size(), 0.0);
  const GridIndex sea{10, 10, 2};
  values[ws.flat(sea)] = 0.4;
  const auto env = flat_env(values, 1.0, 3.0);
  SmoothPath path;
  path.samples.push_back({ws.point(sea), Medium::Sea, 0.0});
  MeasuredArray m(ws);
  accumulate_information(path, env.info(), SensorParams{}, m);
  EXPECT_NEAR(total_information(m, env.info()), 1.2, 1e-15);
}

TEST(Measured, MatchesBruteForceOracle) {
  const auto env = generate_random_environment(9, RandomEnvConfig{}).with_kappa(2.0, 3.0);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 3; ++trial) {
    const auto path = smooth_path(random_polyline(rng, 4), 25.0);
    MeasuredArray m(env.workspace());
    accumulate_information(path, env.info(), SensorParams{}, m);
    const auto ref = oracle::measured(path, env.info(), SensorParams{});
    for (std::size_t j = 0; j < ref.size(); ++j) ASSERT_NEAR(m[j], ref[j], 1e-12);
    ASSERT_NEAR(total_information(m, env.info()), oracle::weighted_sum(ref, env.info()), 1e-9);
  }
}

TEST(Measured, MonotoneAndBounded) {
  const auto env = generate_random_environment(2, RandomEnvConfig{});
  const auto& im = env.info();
  std::mt19937_64 rng(2);
  const auto path = smooth_path(random_polyline(rng, 5), 25.0);
  MeasuredArray m(env.workspace());
  double prev = 0.0;
  double bound = 0.0;
  for (std::size_t j = 0; j < im.workspace().size(); ++j)
    bound += im.kappa_for_layer(im.workspace().unflat(j).k) * im.value(j);
  for (std::size_t i = 0; i < path.samples.size(); i += 10) {
    SmoothPath prefix;
    prefix.samples.assign(path.samples.begin(), path.samples.begin() + static_cast<std::ptrdiff_t>(i + 1));
    m.reset();
    accumulate_information(prefix, im, SensorParams{}, m);
    const double ig = total_information(m, im);
    ASSERT_GE(ig, prev);
    ASSERT_LE(ig, bound);
    prev = ig;
  }
}

TEST(Collision, PathChecks) {
  const auto ws = Workspace::standard();
  ObstacleSet obs({Box{Vec3(1000, 1000, -300), Vec3(1200, 1200, -100)}});
  const std::vector<Vec3> through{Vec3(900, 1100, -200), Vec3(1300, 1100, -200)};
  EXPECT_FALSE(collision_free(smooth_path(through, 25.0), obs));
  EXPECT_TRUE(collision_free(smooth_path(through, 25.0), ObstacleSet{}));
  const std::vector<Vec3> graze{Vec3(900, 1100, -100), Vec3(1300, 1100, -100)};
  EXPECT_FALSE(collision_free(smooth_path(graze, 25.0), obs));
  const std::vector<Vec3> above{Vec3(900, 1100, -99), Vec3(1300, 1100, -99)};
  EXPECT_TRUE(collision_free(smooth_path(above, 25.0), obs));
  EXPECT_FALSE(segment_collision_free(through[0], through[1], obs, 25.0));
}

TEST(Fitness, EnergyAndTimeRederivedFromSamples) {
  const auto env = generate_random_environment(4, RandomEnvConfig{});
  const VehicleParams vp;
  Task task{Vec3(1000, 2500, 0), Vec3(4000, 2500, 0)};
  PathEvaluator ev(env, vp, task);
  std::mt19937_64 rng(4);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto mid = random_polyline(rng, 2);
    std::vector<Vec3> ctrl{task.q_init, mid[0], mid[1], task.q_final};
    const auto r = ev.evaluate(ctrl);
    if (!r.reachable) continue;
    double t_air = 0, t_sea = 0, t_all = 0;
    const auto& s = r.path.samples;
    for (std::size_t i = 1; i < s.size(); ++i) {
      const Vec3 d = s[i].pos - s[i - 1].pos;
      const double len = d.norm();
      if (len == 0) continue;
      const Vec3 m = 0.5 * (s[i].pos + s[i - 1].pos);
      const Medium med = medium_at(m.z());
      const auto v = oracle::ground_speed(d / len, env.velocity().at(m), vp.speed(med));
      ASSERT_TRUE(v);
      const double t = len / *v;
      (med == Medium::Air ? t_air : t_sea) += t;
      t_all += t;
    }
    EXPECT_NEAR(r.e, vp.p_air * t_air + vp.p_sea * t_sea + r.path.transitions * vp.e_switch, 1e-9);
    EXPECT_NEAR(r.t, t_all + r.path.transitions * vp.t_switch, 1e-9 * std::max(1.0, r.t));
    ++checked;
  }
  EXPECT_GT(checked, 5);
}

TEST(Fitness, LongFlightBreaksEnergyBudget) {
  const auto ws = Workspace::standard();
  const auto env = flat_env(std::vector<double>(ws.size(), 0.5));
  Task task{Vec3(100, 100, 200), Vec3(100, 100, 200)};
  // 10 km of flight at 10 m/s takes 1000 s > 900 s of battery.
  std::vector<Vec3> ctrl{task.q_init};
  for (int i = 0; i < 5; ++i) {
    ctrl.emplace_back(4900, 100 + 200 * i, 200);
    ctrl.emplace_back(100, 200 + 200 * i, 200);
  }
  ctrl.push_back(task.q_final);
  PathEvaluator ev(env, VehicleParams{}, task);
  const auto r = ev.evaluate(ctrl);
  EXPECT_TRUE(r.reachable);
  EXPECT_GT(r.e, 1.0);
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.ig, 0.0);
}

TEST(Fitness, DegenerateSinglePoint) {
  const auto ws = Workspace::standard();
  std::vector<double> values(ws.size(), 0.0);
  const GridIndex g{50, 50, 6};
  values[ws.flat(g)] = 1.0;
  const auto env = flat_env(values);
  Task task{ws.point(g), ws.point(g)};
  const auto r = evaluate_fitness(task.q_init, std::vector<Vec3>{task.q_init}, task, env, VehicleParams{});
  EXPECT_TRUE(r.feasible);
  EXPECT_NEAR(r.e, 0.0, 1e-15);
  EXPECT_EQ(r.ig, 1.0);
  Task far{ws.point(GridIndex{10, 10, 6}), ws.point(GridIndex{10, 10, 6})};
  EXPECT_EQ(evaluate_fitness(far.q_init, std::vector<Vec3>{far.q_init}, far, env, VehicleParams{}).ig, 0.0);
}

TEST(Fitness, Pure) {
  const auto env = generate_random_environment(8, RandomEnvConfig{});
  Task task{Vec3(1000, 1000, 0), Vec3(3000, 3000, 0)};
  PathEvaluator ev(env, VehicleParams{}, task);
  const std::vector<Vec3> ctrl{task.q_init, Vec3(2000, 1500, -100), task.q_final};
  const auto a = ev.evaluate(ctrl);
  const auto b = ev.evaluate(ctrl);
  EXPECT_EQ(a.ig, b.ig);
  EXPECT_EQ(a.e, b.e);
  EXPECT_EQ(a.t, b.t);
  EXPECT_EQ(a.path.samples.size(), b.path.samples.size());
}

}  // namespace
}  // namespace hauv
