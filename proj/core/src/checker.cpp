#include "hauv/bench.hpp"

#include <cmath>
#include <sstream>

namespace hauv {

std::optional<double> ground_speed_bisect(const Vec3& dir, const Vec3& v_c, double v_hauv) {
  // f(s) = |s dir - v_c|^2 - v^2 is a convex parabola in s with vertex at
  // s = dir . v_c; the larger root lies to the right of the vertex.
  auto f = [&](double s) { return (s * dir - v_c).squaredNorm() - v_hauv * v_hauv; };
  double lo = dir.dot(v_c);
  if (f(lo) > 0.0) return std::nullopt;
  double hi = lo + v_hauv + v_c.norm() + 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) <= 0.0 ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  if (!(s > 0.0)) return std::nullopt;
  return s;
}

CheckReport check_path(std::span<const Vec3> samples, const Environment& env, const VehicleParams& vehicle,
                       const Task& task, double rel_tol, double pos_tol) {
  CheckReport rep;
  auto fail = [&](const std::string& msg) { rep.violations.push_back(msg); };
  if (samples.size() < 2) {
    fail("path has fewer than two samples");
    return rep;
  }
  if ((samples.front() - task.q_init).norm() > pos_tol) fail("path does not start at q_init");
  if ((samples.back() - task.q_final).norm() > pos_tol) fail("path does not end at q_final");

  const Workspace& ws = env.workspace();
  const auto& obs = env.obstacles();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vec3& p = samples[i];
    if (!ws.contains(p, pos_tol)) {
      std::ostringstream os;
      os << "sample " << i << " outside the workspace";
      fail(os.str());
      continue;
    }
    if (obs.is_obstructed(p)) {
      std::ostringstream os;
      os << "sample " << i << " inside an obstacle";
      fail(os.str());
    }
  }

  auto side = [](double z) { return z > 0.0; };
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const Vec3& a = samples[i - 1];
    const Vec3& b = samples[i];
    if (side(a.z()) != side(b.z())) ++rep.transitions;
    const Vec3 d = b - a;
    const double len = d.norm();
    if (len == 0.0) continue;
    const Vec3 mid = 0.5 * (a + b);
    if (obs.is_obstructed(mid)) {
      std::ostringstream os;
      os << "segment " << i << " passes through an obstacle";
      fail(os.str());
    }
    const Medium m = side(mid.z()) ? Medium::Air : Medium::Sea;
    Vec3 v_c = Vec3::Zero();
    if (ws.contains(mid, pos_tol)) v_c = env.velocity().at(ws.clamp(mid));
    const auto s = ground_speed_bisect(d / len, v_c, vehicle.speed(m));
    if (!s) {
      std::ostringstream os;
      os << "segment " << i << " is not reachable against the " << to_string(m) << " flow";
      fail(os.str());
      continue;
    }
    const double t = len / *s;
    rep.time += t;
    rep.energy += t * vehicle.power(m);
  }
  rep.time += rep.transitions * vehicle.t_switch;
  rep.energy += rep.transitions * vehicle.e_switch;

  if (rep.energy > task.e_max * (1.0 + rel_tol)) {
    std::ostringstream os;
    os << "energy " << rep.energy << " exceeds budget " << task.e_max;
    fail(os.str());
  }
  if (rep.time > task.t_max * (1.0 + rel_tol)) {
    std::ostringstream os;
    os << "time " << rep.time << " s exceeds budget " << task.t_max << " s";
    fail(os.str());
  }
  return rep;
}

}  // namespace hauv
