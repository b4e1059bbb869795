#pragma once

#include "hauv/workspace.hpp"

namespace hauv {

/// Parameters of a single horizontal Lamb vortex.
struct VortexParams {
  Vec2 center = Vec2::Zero();
  double eta = 0.0;   ///< strength (m^2/s), sign sets the rotation sense
  double zeta = 1.0;  ///< core radius (m)
};

/// A vortex applied to a contiguous band of layers. Parameters vary linearly
/// in layer index from `bottom` at layer_lo to `top` at layer_hi.
struct LambVortex {
  VortexParams bottom;
  VortexParams top;
  int layer_lo = 0;
  int layer_hi = 0;

  static LambVortex uniform(const VortexParams& p, int lo, int hi) { return {p, p, lo, hi}; }

  bool covers(int k) const { return k >= layer_lo && k <= layer_hi; }
  VortexParams at_layer(int k) const;
};

/// Tangential Lamb velocity (u, v) at p. Returns the analytic limit (0, 0) at
/// the center.
Vec2 lamb_vortex_velocity(const Vec2& p, const VortexParams& v);

}  // namespace hauv
