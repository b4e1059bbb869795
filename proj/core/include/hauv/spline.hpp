#pragma once

#include "hauv/workspace.hpp"

#include <span>
#include <vector>

namespace hauv {

/// C(N, n) s^n (1 - s)^(N - n).
double bernstein_basis(int n, int degree, double s);

struct PathSample {
  Vec3 pos = Vec3::Zero();
  Medium medium = Medium::Sea;
  double s = 0.0;  ///< cumulative arc length along the samples (m)
};

/// Discretized smooth trajectory. Consecutive samples are at most ds_max
/// apart and segments never straddle the surface.
struct SmoothPath {
  std::vector<PathSample> samples;
  int transitions = 0;  ///< number of medium changes along the samples

  bool empty() const { return samples.empty(); }
  double length() const { return samples.empty() ? 0.0 : samples.back().s; }
};

/// Clamped uniform B-spline of degree min(3, nodes - 1) through the control
/// polyline, interpolating only its first and last node, sampled so that
/// consecutive samples are at most ds_max apart. Segments crossing z = 0 are
/// split at the surface. Throws std::invalid_argument for fewer than 2 nodes.
SmoothPath smooth_path(std::span<const Vec3> nodes, double ds_max);

/// Point on the clamped spline at normalized parameter t in [0, 1].
Vec3 spline_point(std::span<const Vec3> nodes, double t);

/// Splits at the surface, tags media and accumulates arc length for an
/// already-discretized point sequence.
SmoothPath tag_samples(std::span<const Vec3> points);

}  // namespace hauv
