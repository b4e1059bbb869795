#include "hauv/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hauv {

double bernstein_basis(int n, int degree, double s) {
  if (n < 0 || n > degree) return 0.0;
  double binom = 1.0;
  for (int i = 1; i <= n; ++i) binom = binom * (degree - n + i) / i;
  return binom * std::pow(s, n) * std::pow(1.0 - s, degree - n);
}

namespace {

class ClampedSpline {
 public:
  explicit ClampedSpline(std::span<const Vec3> ctrl)
      : ctrl_(ctrl), degree_(std::min<int>(3, static_cast<int>(ctrl.size()) - 1)) {
    const int n = static_cast<int>(ctrl.size()) - 1;
    spans_ = n - degree_ + 1;
    knots_.reserve(n + degree_ + 2);
    for (int i = 0; i <= degree_; ++i) knots_.push_back(0.0);
    for (int i = 1; i < spans_; ++i) knots_.push_back(i);
    for (int i = 0; i <= degree_; ++i) knots_.push_back(spans_);
  }

  int spans() const { return spans_; }
  int degree() const { return degree_; }

  // Control points influencing span s are ctrl[s .. s + degree].
  double span_polygon_length(int s) const {
    double len = 0.0;
    for (int i = s; i < s + degree_; ++i) len += (ctrl_[i + 1] - ctrl_[i]).norm();
    return len;
  }

  // de Boor evaluation in span s at knot parameter u in [s, s + 1].
  Vec3 eval(int s, double u) const {
    const int k = s + degree_;  // knot interval [knots_[k], knots_[k+1])
    Vec3 d[4];
    for (int j = 0; j <= degree_; ++j) d[j] = ctrl_[j + k - degree_];
    for (int r = 1; r <= degree_; ++r) {
      for (int j = degree_; j >= r; --j) {
        const double lo = knots_[j + k - degree_];
        const double hi = knots_[j + 1 + k - r];
        const double alpha = hi == lo ? 0.0 : (u - lo) / (hi - lo);
        d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j];
      }
    }
    return d[degree_];
  }

 private:
  std::span<const Vec3> ctrl_;
  int degree_;
  int spans_;
  std::vector<double> knots_;
};

void refine(const ClampedSpline& sp, int s, double u0, const Vec3& p0, double u1, const Vec3& p1, double ds_max,
            std::vector<Vec3>& out, int depth) {
  if ((p1 - p0).norm() > ds_max && depth < 40) {
    const double um = 0.5 * (u0 + u1);
    const Vec3 pm = sp.eval(s, um);
    refine(sp, s, u0, p0, um, pm, ds_max, out, depth + 1);
    refine(sp, s, um, pm, u1, p1, ds_max, out, depth + 1);
    return;
  }
  out.push_back(p1);
}

}  // namespace

Vec3 spline_point(std::span<const Vec3> nodes, double t) {
  if (nodes.size() < 2) throw std::invalid_argument("spline: need at least 2 nodes");
  const ClampedSpline sp(nodes);
  const double u = std::clamp(t, 0.0, 1.0) * sp.spans();
  const int s = std::min(static_cast<int>(std::floor(u)), sp.spans() - 1);
  return sp.eval(s, u);
}

SmoothPath tag_samples(std::span<const Vec3> points) {
  SmoothPath path;
  path.samples.reserve(points.size() + 8);
  auto push = [&](const Vec3& p) {
    PathSample ps;
    ps.pos = p;
    ps.medium = medium_at(p.z());
    if (!path.samples.empty()) {
      const auto& prev = path.samples.back();
      ps.s = prev.s + (p - prev.pos).norm();
      if (ps.medium != prev.medium) ++path.transitions;
    }
    path.samples.push_back(ps);
  };
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3& p = points[i];
    if (i > 0) {
      const Vec3& a = points[i - 1];
      if (a.z() != 0.0 && p.z() != 0.0 && medium_at(a.z()) != medium_at(p.z())) {
        const double t = a.z() / (a.z() - p.z());
        Vec3 surf = a + t * (p - a);
        surf.z() = 0.0;
        push(surf);
      }
    }
    push(p);
  }
  return path;
}

SmoothPath smooth_path(std::span<const Vec3> nodes, double ds_max) {
  if (nodes.size() < 2) throw std::invalid_argument("smooth_path: need at least 2 nodes");
  if (!(ds_max > 0.0)) throw std::invalid_argument("smooth_path: ds_max must be > 0");
  const ClampedSpline sp(nodes);
  std::vector<Vec3> pts;
  pts.push_back(nodes.front());
  for (int s = 0; s < sp.spans(); ++s) {
    const int steps = std::max(1, static_cast<int>(std::ceil(sp.span_polygon_length(s) / ds_max)));
    double u_prev = s;
    Vec3 p_prev = pts.back();
    for (int i = 1; i <= steps; ++i) {
      const double u = s + static_cast<double>(i) / steps;
      const bool last = s == sp.spans() - 1 && i == steps;
      const Vec3 p = last ? nodes.back() : sp.eval(s, u);
      refine(sp, s, u_prev, p_prev, u, p, ds_max, pts, 0);
      u_prev = u;
      p_prev = p;
    }
  }
  // Drop repeated points so that every segment has a direction.
  std::vector<Vec3> unique;
  unique.reserve(pts.size());
  for (const auto& p : pts) {
    if (unique.empty() || p != unique.back()) unique.push_back(p);
  }
  if (unique.size() > 1 && unique.back() != nodes.back()) unique.back() = nodes.back();
  return tag_samples(unique);
}

}  // namespace hauv
