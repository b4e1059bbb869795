#pragma once

#include "hauv/gaussian.hpp"
#include "hauv/vortex.hpp"
#include "hauv/workspace.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hauv {

/// Per-side min-max normalization result flags.
struct NormalizationFlags {
  bool air_degenerate = false;  ///< air side had zero range and was zeroed
  bool sea_degenerate = false;
};

/// Min-max rescale to [0, 1]. A constant (or empty) input maps to zeros and
/// returns false. Throws std::invalid_argument on non-finite input.
bool normalize_minmax(std::span<double> values);

/// Normalizes air layers and sea layers of a workspace-shaped field
/// independently.
NormalizationFlags normalize_by_side(std::span<double> values, const Workspace& ws);

/// Normalized information values on the workspace grid plus the per-medium
/// objective weights.
class InfoMap {
 public:
  InfoMap(Workspace ws, std::vector<double> values, double kappa_air, double kappa_sea,
          NormalizationFlags flags = {});

  const Workspace& workspace() const { return ws_; }
  double value(std::size_t flat) const { return values_[flat]; }
  double value(const GridIndex& g) const { return values_[ws_.flat(g)]; }
  std::span<const double> values() const { return values_; }
  double kappa_air() const { return kappa_air_; }
  double kappa_sea() const { return kappa_sea_; }
  /// Weight of layer k: kappa_air above the surface, kappa_sea at or below it.
  double kappa_for_layer(int k) const {
    return ws_.layer_medium(k) == Medium::Air ? kappa_air_ : kappa_sea_;
  }
  const NormalizationFlags& flags() const { return flags_; }

 private:
  Workspace ws_;
  std::vector<double> values_;
  double kappa_air_;
  double kappa_sea_;
  NormalizationFlags flags_;
};

/// Evaluates the mixture at every grid point and normalizes each side.
InfoMap build_info_map(std::span<const GaussianFeature> features, const Workspace& ws,
                       double kappa_air, double kappa_sea);

/// Horizontal wind/current field. Either an analytic superposition of Lamb
/// vortices per layer, or a gridded (u, v) field on the workspace grid.
/// The vertical component is always zero.
class VelocityField {
 public:
  static VelocityField analytic(const Workspace& ws, std::vector<LambVortex> vortices);
  static VelocityField gridded(const Workspace& ws, std::vector<Vec2> uv);
  static VelocityField still(const Workspace& ws) { return analytic(ws, {}); }

  /// Throws OutOfWorkspace for points outside the workspace.
  Vec3 at(const Vec3& p) const;
  /// Value at a grid point (exact superposition or stored sample).
  Vec3 at_grid(const GridIndex& g) const;

  bool is_analytic() const { return analytic_; }
  std::span<const LambVortex> vortices() const { return vortices_; }
  std::span<const Vec2> grid() const { return uv_; }
  const Workspace& workspace() const { return ws_; }

 private:
  VelocityField(const Workspace& ws) : ws_(ws) {}
  Vec2 layer_velocity(const Vec2& xy, int k) const;
  Vec2 grid_uv(int i, int j, int k) const { return uv_[ws_.flat(i, j, k)]; }

  Workspace ws_;
  bool analytic_ = true;
  std::vector<LambVortex> vortices_;
  std::vector<Vec2> uv_;
};

inline Vec3 velocity_at(const Vec3& p, const VelocityField& field) { return field.at(p); }

/// Closed axis-aligned box in meters.
struct Box {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();
  bool contains(const Vec3& p) const {
    return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
  }
};

/// Boxes plus an optional voxel mask over the workspace grid. Voxels are
/// closed cubes of edge `cell` centered on grid points.
class ObstacleSet {
 public:
  ObstacleSet() = default;
  explicit ObstacleSet(std::vector<Box> boxes) : boxes_(std::move(boxes)) {}

  void add_box(const Box& b) { boxes_.push_back(b); }
  void set_voxel_mask(const Workspace& ws, std::vector<std::uint8_t> mask);

  bool is_obstructed(const Vec3& p) const;
  bool empty() const { return boxes_.empty() && !mask_ws_; }
  std::span<const Box> boxes() const { return boxes_; }
  std::span<const std::uint8_t> voxel_mask() const { return mask_; }

 private:
  std::vector<Box> boxes_;
  std::optional<Workspace> mask_ws_;
  std::vector<std::uint8_t> mask_;
};

inline bool is_obstructed(const Vec3& p, const ObstacleSet& obstacles) {
  return obstacles.is_obstructed(p);
}

/// Immutable planning environment shared by concurrent planner runs.
class Environment {
 public:
  Environment(InfoMap info, VelocityField velocity, ObstacleSet obstacles);

  const Workspace& workspace() const { return info_.workspace(); }
  const InfoMap& info() const { return info_; }
  const VelocityField& velocity() const { return velocity_; }
  const ObstacleSet& obstacles() const { return obstacles_; }

  /// FNV-1a digest over the grid, information values, sampled velocities and
  /// obstacles. Equal environments hash equal.
  std::uint64_t fingerprint() const;

  /// Same environment with different objective weights.
  Environment with_kappa(double kappa_air, double kappa_sea) const;

 private:
  InfoMap info_;
  VelocityField velocity_;
  ObstacleSet obstacles_;
};

/// Knobs for the seeded random environment generator.
struct RandomEnvConfig {
  int features_min = 3;
  int features_max = 6;
  int vortices_min = 2;  ///< per medium
  int vortices_max = 5;
  double wind_cap = 5.0;      ///< m/s over air grid points
  double current_cap = 0.4;   ///< m/s over sea grid points
  VarianceRange variance{};
  double g_min = 1.0;
  double g_max = 10.0;
  double zeta_min = 300.0;
  double zeta_max = 1500.0;
  double kappa_air = 1.0;
  double kappa_sea = 1.0;
};

/// Random Gaussian features (count in [features_min, features_max]).
std::vector<GaussianFeature> random_features(Rng& rng, const Workspace& ws, const RandomEnvConfig& cfg);

/// Random layered vortices for both media, rescaled so that the speed at
/// every grid point of a medium stays within that medium's cap.
std::vector<LambVortex> random_vortices(Rng& rng, const Workspace& ws, const RandomEnvConfig& cfg);

/// Largest horizontal speed over the grid points of one medium.
double max_grid_speed(const VelocityField& field, Medium medium);

/// Deterministic per seed.
Environment generate_random_environment(std::uint64_t seed, const RandomEnvConfig& cfg,
                                        const Workspace& ws = Workspace::standard(),
                                        ObstacleSet obstacles = {});

}  // namespace hauv
