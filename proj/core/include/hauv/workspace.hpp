#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hauv {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

enum class Medium : std::uint8_t { Air, Sea };

/// Air strictly above the surface; the surface itself belongs to the sea.
inline Medium medium_at(double z) { return z > 0.0 ? Medium::Air : Medium::Sea; }

const char* to_string(Medium m);

struct GridIndex {
  int i = 0;
  int j = 0;
  int k = 0;
  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

/// Thrown by queries that fall outside the workspace volume.
class OutOfWorkspace : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Regular grid discretizing the planning volume.
///
/// Horizontal grid points sit at cell centers of an nx*cell by ny*cell
/// extent starting at the origin, so x_i = (i + 1/2) * cell. Vertical layers
/// sit at z_k = z_origin + k * cell with layer `sea_level_index` at z = 0.
/// Planners work in continuous meters; the grid only discretizes fields.
class Workspace {
 public:
  Workspace(int nx, int ny, int nz, double cell, int sea_level_index);

  /// 100 x 100 x 13 points, 50 m cells, 300 m of water below 300 m of air.
  static Workspace standard();

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  double cell() const { return cell_; }
  double z_origin() const { return z_origin_; }
  int sea_level_index() const { return sea_level_index_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_ * nz_; }

  /// x-fastest row-major flattening.
  std::size_t flat(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * ny_ + j) * nx_ + i;
  }
  std::size_t flat(const GridIndex& g) const { return flat(g.i, g.j, g.k); }
  GridIndex unflat(std::size_t idx) const;

  double x_of(int i) const { return (i + 0.5) * cell_; }
  double y_of(int j) const { return (j + 0.5) * cell_; }
  double z_of(int k) const { return z_origin_ + k * cell_; }
  Vec3 point(const GridIndex& g) const { return {x_of(g.i), y_of(g.j), z_of(g.k)}; }
  Vec3 point(std::size_t flat_idx) const { return point(unflat(flat_idx)); }

  /// Exact inverse of point() for grid points; nearest grid point (clamped) otherwise.
  GridIndex nearest_index(const Vec3& p) const;

  Vec3 lower() const { return {0.0, 0.0, z_origin_}; }
  Vec3 upper() const { return {nx_ * cell_, ny_ * cell_, z_of(nz_ - 1)}; }
  bool contains(const Vec3& p, double tol = 1e-9) const;
  Vec3 clamp(const Vec3& p) const;

  Medium layer_medium(int k) const { return k > sea_level_index_ ? Medium::Air : Medium::Sea; }

  /// Nearest layer that lies in the same medium as height z.
  int layer_for(double z) const;

  friend bool operator==(const Workspace&, const Workspace&) = default;

 private:
  int nx_;
  int ny_;
  int nz_;
  double cell_;
  int sea_level_index_;
  double z_origin_;
};

}  // namespace hauv
