#include "hauv/vortex.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hauv {

VortexParams LambVortex::at_layer(int k) const {
  if (layer_hi == layer_lo) return bottom;
  const double t = static_cast<double>(k - layer_lo) / (layer_hi - layer_lo);
  return {bottom.center + t * (top.center - bottom.center),
          bottom.eta + t * (top.eta - bottom.eta),
          bottom.zeta + t * (top.zeta - bottom.zeta)};
}

Vec2 lamb_vortex_velocity(const Vec2& p, const VortexParams& v) {
  if (!(v.zeta > 0.0)) throw std::invalid_argument("lamb vortex: zeta must be > 0");
  const double dx = p.x() - v.center.x();
  const double dy = p.y() - v.center.y();
  const double r2 = dx * dx + dy * dy;
  if (r2 == 0.0) return Vec2::Zero();
  const double q = r2 / (v.zeta * v.zeta);
  // -expm1 keeps precision for r << zeta where 1 - exp(-q) cancels.
  const double f = v.eta * -std::expm1(-q) / (2.0 * std::numbers::pi * r2);
  return {-f * dy, f * dx};
}

}  // namespace hauv
