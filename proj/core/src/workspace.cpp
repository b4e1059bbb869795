#include "hauv/workspace.hpp"

#include <algorithm>
#include <cmath>

namespace hauv {

const char* to_string(Medium m) { return m == Medium::Air ? "air" : "sea"; }

Workspace::Workspace(int nx, int ny, int nz, double cell, int sea_level_index)
    : nx_(nx), ny_(ny), nz_(nz), cell_(cell), sea_level_index_(sea_level_index),
      z_origin_(-sea_level_index * cell) {
  if (nx < 1 || ny < 1 || nz < 1) throw std::invalid_argument("workspace: grid counts must be >= 1");
  if (!(cell > 0.0) || !std::isfinite(cell)) throw std::invalid_argument("workspace: cell must be > 0");
  if (sea_level_index < 0 || sea_level_index >= nz)
    throw std::invalid_argument("workspace: sea_level_index must be a valid layer");
}

Workspace Workspace::standard() { return Workspace(100, 100, 13, 50.0, 6); }

GridIndex Workspace::unflat(std::size_t idx) const {
  const auto plane = static_cast<std::size_t>(nx_) * ny_;
  GridIndex g;
  g.k = static_cast<int>(idx / plane);
  const auto rem = idx % plane;
  g.j = static_cast<int>(rem / nx_);
  g.i = static_cast<int>(rem % nx_);
  return g;
}

GridIndex Workspace::nearest_index(const Vec3& p) const {
  auto snap = [](double t, int n) {
    return std::clamp(static_cast<int>(std::lround(t)), 0, n - 1);
  };
  return {snap(p.x() / cell_ - 0.5, nx_), snap(p.y() / cell_ - 0.5, ny_),
          snap((p.z() - z_origin_) / cell_, nz_)};
}

bool Workspace::contains(const Vec3& p, double tol) const {
  const Vec3 lo = lower();
  const Vec3 hi = upper();
  for (int a = 0; a < 3; ++a) {
    if (!(p[a] >= lo[a] - tol && p[a] <= hi[a] + tol)) return false;
  }
  return true;
}

Vec3 Workspace::clamp(const Vec3& p) const {
  return p.cwiseMax(lower()).cwiseMin(upper());
}

int Workspace::layer_for(double z) const {
  int k = std::clamp(static_cast<int>(std::lround((z - z_origin_) / cell_)), 0, nz_ - 1);
  if (z > 0.0 && k <= sea_level_index_) k = std::min(sea_level_index_ + 1, nz_ - 1);
  if (z <= 0.0 && k > sea_level_index_) k = sea_level_index_;
  return k;
}

}  // namespace hauv
