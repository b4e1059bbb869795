#include "hauv/environment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hauv {

bool normalize_minmax(std::span<double> values) {
  if (values.empty()) return false;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("normalize: non-finite value");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double range = hi - lo;
  if (!(range > 0.0)) {
    std::fill(values.begin(), values.end(), 0.0);
    return false;
  }
  for (double& v : values) v = (v - lo) / range;
  return true;
}

NormalizationFlags normalize_by_side(std::span<double> values, const Workspace& ws) {
  if (values.size() != ws.size()) throw std::invalid_argument("normalize: field size does not match workspace");
  const std::size_t plane = static_cast<std::size_t>(ws.nx()) * ws.ny();
  const std::size_t sea_end = plane * (ws.sea_level_index() + 1);
  NormalizationFlags flags;
  flags.sea_degenerate = !normalize_minmax(values.subspan(0, sea_end));
  flags.air_degenerate = !normalize_minmax(values.subspan(sea_end));
  return flags;
}

InfoMap::InfoMap(Workspace ws, std::vector<double> values, double kappa_air, double kappa_sea,
                 NormalizationFlags flags)
    : ws_(ws), values_(std::move(values)), kappa_air_(kappa_air), kappa_sea_(kappa_sea), flags_(flags) {
  if (values_.size() != ws_.size()) throw std::invalid_argument("info map: value count does not match workspace");
  if (!(kappa_air_ >= 0.0) || !(kappa_sea_ >= 0.0)) throw std::invalid_argument("info map: kappa must be >= 0");
}

InfoMap build_info_map(std::span<const GaussianFeature> features, const Workspace& ws,
                       double kappa_air, double kappa_sea) {
  if (std::none_of(features.begin(), features.end(), [](const auto& f) { return f.g > 0.0; }))
    throw std::invalid_argument("info map: need at least one feature with g > 0");
  const GaussianMixture mixture({features.begin(), features.end()});
  std::vector<double> values(ws.size());
  for (std::size_t idx = 0; idx < values.size(); ++idx) values[idx] = mixture.value(ws.point(idx));
  const auto flags = normalize_by_side(values, ws);
  return InfoMap(ws, std::move(values), kappa_air, kappa_sea, flags);
}

VelocityField VelocityField::analytic(const Workspace& ws, std::vector<LambVortex> vortices) {
  for (const auto& v : vortices) {
    if (!(v.bottom.zeta > 0.0) || !(v.top.zeta > 0.0)) throw std::invalid_argument("velocity field: vortex zeta must be > 0");
    if (v.layer_lo > v.layer_hi) throw std::invalid_argument("velocity field: empty vortex layer range");
  }
  VelocityField f(ws);
  f.analytic_ = true;
  f.vortices_ = std::move(vortices);
  return f;
}

VelocityField VelocityField::gridded(const Workspace& ws, std::vector<Vec2> uv) {
  if (uv.size() != ws.size()) throw std::invalid_argument("velocity field: grid size does not match workspace");
  for (const auto& v : uv)
    if (!v.allFinite()) throw std::invalid_argument("velocity field: non-finite grid value");
  VelocityField f(ws);
  f.analytic_ = false;
  f.uv_ = std::move(uv);
  return f;
}

Vec2 VelocityField::layer_velocity(const Vec2& xy, int k) const {
  Vec2 sum = Vec2::Zero();
  for (const auto& v : vortices_) {
    if (v.covers(k)) sum += lamb_vortex_velocity(xy, v.at_layer(k));
  }
  return sum;
}

Vec3 VelocityField::at_grid(const GridIndex& g) const {
  if (analytic_) {
    const Vec2 uv = layer_velocity({ws_.x_of(g.i), ws_.y_of(g.j)}, g.k);
    return {uv.x(), uv.y(), 0.0};
  }
  const Vec2 uv = grid_uv(g.i, g.j, g.k);
  return {uv.x(), uv.y(), 0.0};
}

namespace {

struct Lerp1 {
  int i0;
  int i1;
  double f;
};

// Linear interpolation weights along one axis of n points, coordinate
// expressed in fractional grid units and clamped to [0, n-1].
Lerp1 axis_weights(double t, int n) {
  if (n == 1) return {0, 0, 0.0};
  t = std::clamp(t, 0.0, static_cast<double>(n - 1));
  int i0 = std::min(static_cast<int>(std::floor(t)), n - 2);
  return {i0, i0 + 1, t - i0};
}

}  // namespace

Vec3 VelocityField::at(const Vec3& p) const {
  if (!ws_.contains(p)) {
    throw OutOfWorkspace("velocity query outside workspace at (" + std::to_string(p.x()) + ", " +
                         std::to_string(p.y()) + ", " + std::to_string(p.z()) + ")");
  }
  if (analytic_) {
    const Vec2 uv = layer_velocity(p.head<2>(), ws_.layer_for(p.z()));
    return {uv.x(), uv.y(), 0.0};
  }
  // Vertical interpolation never mixes wind and current layers.
  const int sea = ws_.sea_level_index();
  const bool air = p.z() > 0.0 && sea + 1 < ws_.nz();
  const int klo = air ? sea + 1 : 0;
  const int khi = air ? ws_.nz() - 1 : sea;
  const double tz = std::clamp((p.z() - ws_.z_origin()) / ws_.cell(), static_cast<double>(klo),
                               static_cast<double>(khi));
  const int kz0 = std::clamp(static_cast<int>(std::floor(tz)), klo, std::max(klo, khi - 1));
  const int kz1 = std::min(kz0 + 1, khi);
  const Lerp1 wz{kz0, kz1, kz1 == kz0 ? 0.0 : tz - kz0};
  const Lerp1 wx = axis_weights(p.x() / ws_.cell() - 0.5, ws_.nx());
  const Lerp1 wy = axis_weights(p.y() / ws_.cell() - 0.5, ws_.ny());
  auto bilinear = [&](int k) {
    const Vec2 a = (1 - wx.f) * grid_uv(wx.i0, wy.i0, k) + wx.f * grid_uv(wx.i1, wy.i0, k);
    const Vec2 b = (1 - wx.f) * grid_uv(wx.i0, wy.i1, k) + wx.f * grid_uv(wx.i1, wy.i1, k);
    return Vec2((1 - wy.f) * a + wy.f * b);
  };
  const Vec2 uv = wz.i0 == wz.i1 ? bilinear(wz.i0) : Vec2((1 - wz.f) * bilinear(wz.i0) + wz.f * bilinear(wz.i1));
  return {uv.x(), uv.y(), 0.0};
}

void ObstacleSet::set_voxel_mask(const Workspace& ws, std::vector<std::uint8_t> mask) {
  if (mask.size() != ws.size()) throw std::invalid_argument("obstacles: voxel mask size does not match workspace");
  mask_ws_ = ws;
  mask_ = std::move(mask);
}

bool ObstacleSet::is_obstructed(const Vec3& p) const {
  for (const auto& b : boxes_)
    if (b.contains(p)) return true;
  if (!mask_ws_) return false;
  const Workspace& ws = *mask_ws_;
  const double half = 0.5 * ws.cell();
  // A point on a voxel face belongs to both neighbours; test each candidate.
  const GridIndex c = ws.nearest_index(p);
  for (int dk = -1; dk <= 1; ++dk) {
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        const GridIndex g{c.i + di, c.j + dj, c.k + dk};
        if (g.i < 0 || g.j < 0 || g.k < 0 || g.i >= ws.nx() || g.j >= ws.ny() || g.k >= ws.nz()) continue;
        if (!mask_[ws.flat(g)]) continue;
        if (((p - ws.point(g)).cwiseAbs().array() <= half).all()) return true;
      }
    }
  }
  return false;
}

Environment::Environment(InfoMap info, VelocityField velocity, ObstacleSet obstacles)
    : info_(std::move(info)), velocity_(std::move(velocity)), obstacles_(std::move(obstacles)) {
  if (!(velocity_.workspace() == info_.workspace()))
    throw std::invalid_argument("environment: velocity field and information map use different workspaces");
}

namespace {

struct Fnv1a {
  std::uint64_t h = 1469598103934665603ULL;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 1099511628211ULL;
    }
  }
  void f64(double v) { bytes(&v, sizeof v); }
  void i64(std::int64_t v) { bytes(&v, sizeof v); }
};

}  // namespace

std::uint64_t Environment::fingerprint() const {
  Fnv1a h;
  const Workspace& ws = workspace();
  h.i64(ws.nx());
  h.i64(ws.ny());
  h.i64(ws.nz());
  h.f64(ws.cell());
  h.i64(ws.sea_level_index());
  h.f64(info_.kappa_air());
  h.f64(info_.kappa_sea());
  for (double v : info_.values()) h.f64(v);
  if (velocity_.is_analytic()) {
    for (const auto& v : velocity_.vortices()) {
      for (const auto* p : {&v.bottom, &v.top}) {
        h.f64(p->center.x());
        h.f64(p->center.y());
        h.f64(p->eta);
        h.f64(p->zeta);
      }
      h.i64(v.layer_lo);
      h.i64(v.layer_hi);
    }
  } else {
    for (const auto& uv : velocity_.grid()) {
      h.f64(uv.x());
      h.f64(uv.y());
    }
  }
  for (const auto& b : obstacles_.boxes()) {
    for (int a = 0; a < 3; ++a) {
      h.f64(b.lo[a]);
      h.f64(b.hi[a]);
    }
  }
  for (auto m : obstacles_.voxel_mask()) h.bytes(&m, 1);
  return h.h;
}

Environment Environment::with_kappa(double kappa_air, double kappa_sea) const {
  InfoMap info(info_.workspace(), {info_.values().begin(), info_.values().end()}, kappa_air, kappa_sea,
               info_.flags());
  return Environment(std::move(info), velocity_, obstacles_);
}

}  // namespace hauv
