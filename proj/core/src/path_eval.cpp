#include "hauv/path_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hauv {

namespace {

// Closest squared distance from any sample to each grid point in range.
// The reading falls monotonically with distance, so one exp per grid point
// suffices.
struct NearestSweep {
  std::vector<double> d2;
  std::vector<std::size_t> touched;

  void ensure(std::size_t n) {
    if (d2.size() != n) {
      d2.assign(n, std::numeric_limits<double>::infinity());
      touched.clear();
    }
  }
  void lower(std::size_t idx, double v) {
    double& cur = d2[idx];
    if (v < cur) {
      if (cur == std::numeric_limits<double>::infinity()) touched.push_back(idx);
      cur = v;
    }
  }
};

}  // namespace

void accumulate_information(const SmoothPath& path, const InfoMap& im, const SensorParams& sensor,
                            MeasuredArray& measured) {
  const Workspace& ws = im.workspace();
  const int reach = static_cast<int>(std::ceil(sensor.d_max / ws.cell()));
  const double d2_max = sensor.d_max * sensor.d_max;
  const double decay = sensor.sigma / d2_max;
  thread_local NearestSweep sweep;
  sweep.ensure(ws.size());
  for (const auto& sample : path.samples) {
    const Vec3& p = sample.pos;
    const GridIndex c = ws.nearest_index(p);
    const int k0 = std::max(0, c.k - reach), k1 = std::min(ws.nz() - 1, c.k + reach);
    const int j0 = std::max(0, c.j - reach), j1 = std::min(ws.ny() - 1, c.j + reach);
    const int i0 = std::max(0, c.i - reach), i1 = std::min(ws.nx() - 1, c.i + reach);
    for (int k = k0; k <= k1; ++k) {
      const double dz = ws.z_of(k) - p.z();
      const double dz2 = dz * dz;
      if (dz2 > d2_max) continue;
      for (int j = j0; j <= j1; ++j) {
        const double dy = ws.y_of(j) - p.y();
        const double dyz2 = dz2 + dy * dy;
        if (dyz2 > d2_max) continue;
        std::size_t idx = ws.flat(i0, j, k);
        for (int i = i0; i <= i1; ++i, ++idx) {
          const double dx = ws.x_of(i) - p.x();
          const double d2 = dyz2 + dx * dx;
          if (d2 <= d2_max) sweep.lower(idx, d2);
        }
      }
    }
  }
  for (auto idx : sweep.touched) {
    const double im_value = im.value(idx);
    if (im_value != 0.0) measured.raise(idx, im_value * sensor.a_dmax * std::exp(-decay * sweep.d2[idx]));
    sweep.d2[idx] = std::numeric_limits<double>::infinity();
  }
  sweep.touched.clear();
}

double total_information(const MeasuredArray& measured, const InfoMap& im) {
  const Workspace& ws = im.workspace();
  const std::size_t plane = static_cast<std::size_t>(ws.nx()) * ws.ny();
  const std::size_t sea_end = plane * (ws.sea_level_index() + 1);
  double air = 0.0;
  double sea = 0.0;
  for (auto idx : measured.touched()) (idx < sea_end ? sea : air) += measured[idx];
  return im.kappa_air() * air + im.kappa_sea() * sea;
}

bool collision_free(const SmoothPath& path, const ObstacleSet& obstacles) {
  if (obstacles.empty()) return true;
  return std::none_of(path.samples.begin(), path.samples.end(),
                      [&](const PathSample& s) { return obstacles.is_obstructed(s.pos); });
}

bool segment_collision_free(const Vec3& a, const Vec3& b, const ObstacleSet& obstacles, double step) {
  if (obstacles.empty()) return true;
  const double len = (b - a).norm();
  const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  for (int i = 0; i <= n; ++i) {
    if (obstacles.is_obstructed(a + (b - a) * (static_cast<double>(i) / n))) return false;
  }
  return true;
}

PathEvaluator::PathEvaluator(const Environment& env, const VehicleParams& vehicle, const Task& task,
                             EvalOptions options)
    : env_(env), vehicle_(vehicle), task_(task), options_(options), measured_(env.workspace()) {}

FitnessResult PathEvaluator::evaluate(std::span<const Vec3> control) {
  FitnessResult r;
  r.path = smooth_path(control, options_.ds_max);
  r.collision_free = collision_free(r.path, env_.obstacles());

  const auto& samples = r.path.samples;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const auto seg = segment_time_energy(samples[i - 1].pos, samples[i].pos, env_, vehicle_);
    if (!seg) {
      r.reachable = false;
      break;
    }
    r.t += seg->time;
    r.e += seg->energy;
  }
  r.t += r.path.transitions * vehicle_.t_switch;
  r.e += r.path.transitions * vehicle_.e_switch;

  const bool within_budget = r.e <= task_.e_max && r.t <= task_.t_max;
  r.feasible = r.reachable && r.collision_free && within_budget;
  if (r.feasible || (options_.ig_when_over_budget && r.reachable && r.collision_free)) {
    measured_.reset();
    accumulate_information(r.path, env_.info(), vehicle_.sensor, measured_);
    r.ig = total_information(measured_, env_.info());
  }
  return r;
}

std::vector<Vec3> candidate_polyline(const Vec3& q_new, std::span<const Vec3> chain, const Vec3& q_final) {
  std::vector<Vec3> poly;
  poly.reserve(chain.size() + 2);
  poly.insert(poly.end(), chain.begin(), chain.end());
  poly.push_back(q_new);
  poly.push_back(q_final);
  return poly;
}

FitnessResult evaluate_fitness(const Vec3& q_new, std::span<const Vec3> chain, const Task& task,
                               const Environment& env, const VehicleParams& vehicle, const EvalOptions& options) {
  PathEvaluator eval(env, vehicle, task, options);
  const auto poly = candidate_polyline(q_new, chain, task.q_final);
  return eval.evaluate(poly);
}

}  // namespace hauv
