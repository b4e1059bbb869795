#pragma once

#include "hauv/environment.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hauv::ingest {

/// Externally produced forecast grid. Values are x-fastest row-major.
/// Units: spacing and origin in meters, INFO dimensionless (already fused),
/// U and V in m/s.
struct RawGrid {
  int nx = 0;
  int ny = 0;
  int nz = 0;
  Vec3 spacing = Vec3::Ones();
  Vec3 origin = Vec3::Zero();
  std::vector<double> info;
  std::vector<double> u;
  std::vector<double> v;

  std::size_t count() const { return static_cast<std::size_t>(nx) * ny * nz; }
  Vec3 extent_hi() const {
    return origin + Vec3((nx - 1) * spacing.x(), (ny - 1) * spacing.y(), (nz - 1) * spacing.z());
  }
};

enum class GridErrorKind { BadHeader, BadToken, NonFinite, Truncated, DimensionMismatch, Io };

/// Parse failure naming the offending block and value offset.
class GridParseError : public std::runtime_error {
 public:
  GridParseError(GridErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  GridErrorKind kind() const { return kind_; }

 private:
  GridErrorKind kind_;
};

/// Workspace grid points fall outside the raw grid's extent.
class CoverageError : public std::runtime_error {
 public:
  CoverageError(std::vector<char> axes, const std::string& what) : std::runtime_error(what), axes_(std::move(axes)) {}
  const std::vector<char>& axes() const { return axes_; }

 private:
  std::vector<char> axes_;
};

/// IPGRID v1 text:
///   IPGRID v1 nx ny nz sx sy sz ox oy oz
///   INFO
///   <nx values per line, ny*nz lines>
///   U
///   ...
///   V
///   ...
RawGrid parse_forecast_grid(std::string_view text);
RawGrid load_forecast_grid(const std::filesystem::path& path);

/// Canonical rendering: shortest round-trip decimals, one x-row per line.
std::string format_forecast_grid(const RawGrid& grid);
void write_forecast_grid(const RawGrid& grid, const std::filesystem::path& path);

struct ResampledFields {
  std::vector<double> info;
  std::vector<Vec2> uv;
};

/// Trilinear resampling of every field onto the workspace grid points.
ResampledFields interpolate_to_workspace(const RawGrid& raw, const Workspace& ws);

/// Per-side min-max normalization of a workspace-shaped field into [0, 1].
std::vector<double> normalize_field(std::vector<double> values, const Workspace& ws);
/// Min-max normalization of a flat list of values.
std::vector<double> normalize_field(std::vector<double> values);

/// Samples an environment's information and velocity fields onto a raw grid
/// with the given spacing, covering the workspace grid points.
RawGrid sample_environment(const Environment& env, const Vec3& spacing);

/// Builds an environment from an ingested grid.
Environment make_environment(const RawGrid& raw, const Workspace& ws, double kappa_air, double kappa_sea,
                             ObstacleSet obstacles = {});

}  // namespace hauv::ingest
