#include "hauv/planners.hpp"

#include <algorithm>
#include <limits>

namespace hauv {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::RastIE: return "rast-ie";
    case Algorithm::RastI: return "rast-i";
    case Algorithm::Rast: return "rast";
    case Algorithm::Rrst: return "rrst";
    case Algorithm::Rigt: return "rigt";
    case Algorithm::Pso: return "pso";
  }
  return "unknown";
}

std::string display_name(Algorithm a) {
  switch (a) {
    case Algorithm::RastIE: return "RAST*-I/E";
    case Algorithm::RastI: return "RAST*-I";
    case Algorithm::Rast: return "RAST";
    case Algorithm::Rrst: return "RRST*";
    case Algorithm::Rigt: return "RIGT";
    case Algorithm::Pso: return "PSO";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (auto a : kAllAlgorithms) {
    if (name == to_string(a) || name == display_name(a)) return a;
  }
  return std::nullopt;
}

void PlannerConfig::validate() const {
  if (m < 1) throw std::invalid_argument("planner: m must be >= 1");
  if (!(delta > 0.0)) throw std::invalid_argument("planner: delta must be > 0");
  if (!(r >= delta)) throw std::invalid_argument("planner: r must be >= delta");
  if (max_it < 1) throw std::invalid_argument("planner: max_it must be >= 1");
  if (it_stop < 1 || it_stop >= max_it) throw std::invalid_argument("planner: it_stop must lie in [1, max_it)");
}

void PsoConfig::validate() const {
  if (particles < 1 || control_points < 1) throw std::invalid_argument("pso: need at least one particle and control point");
  if (!(v_max > 0.0)) throw std::invalid_argument("pso: v_max must be > 0");
  if (max_it < 1) throw std::invalid_argument("pso: max_it must be >= 1");
  if (it_stop < 1 || it_stop >= max_it) throw std::invalid_argument("pso: it_stop must lie in [1, max_it)");
  if (init_attempts < 1) throw std::invalid_argument("pso: init_attempts must be >= 1");
}

Vec3 tournament_sample(const InfoMap& im, int m, std::mt19937_64& rng) {
  const Workspace& ws = im.workspace();
  std::uniform_int_distribution<std::size_t> pick(0, ws.size() - 1);
  std::size_t best = pick(rng);
  for (int i = 1; i < m; ++i) {
    const std::size_t cand = pick(rng);
    if (im.value(cand) > im.value(best)) best = cand;
  }
  return ws.point(best);
}

std::size_t nearest(const Vec3& q, std::span<const Vec3> vertex) {
  if (vertex.empty()) throw std::invalid_argument("nearest: empty vertex set");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertex.size(); ++i) {
    const double d = (vertex[i] - q).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::vector<std::size_t> near(std::span<const Vec3> vertex, const Vec3& q, double r) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertex.size(); ++i) {
    if ((vertex[i] - q).norm() < r) out.push_back(i);
  }
  return out;
}

void keep_closest(std::vector<std::size_t>& ids, const Vec3& q, std::span<const Vec3> points, std::size_t cap) {
  if (cap == 0 || ids.size() <= cap) return;
  auto closer = [&](std::size_t a, std::size_t b) {
    const double da = (points[a] - q).squaredNorm();
    const double db = (points[b] - q).squaredNorm();
    return da < db || (da == db && a < b);
  };
  std::nth_element(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(cap), ids.end(), closer);
  ids.resize(cap);
  std::sort(ids.begin(), ids.end());
}

Vec3 steer(const Vec3& from, const Vec3& to, double delta) {
  const Vec3 d = to - from;
  const double dist = d.norm();
  if (dist > delta) return from + d * (delta / dist);
  return to;
}

bool prune_dominated(const TreeNode& q_new, const TreeNode& q_m) {
  return q_new.ig < q_m.ig && q_new.e > q_m.e && q_new.t > q_m.t;
}

bool stalled(std::span<const double> bestsol, int it_stop) {
  const auto it = static_cast<int>(bestsol.size());
  if (it < it_stop) return false;
  const double earlier = it - it_stop >= 1 ? bestsol[it - it_stop - 1] : 0.0;
  return bestsol.back() - earlier == 0.0;
}

}  // namespace hauv
