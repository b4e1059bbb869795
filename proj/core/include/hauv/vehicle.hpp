#pragma once

#include "hauv/environment.hpp"

#include <optional>

namespace hauv {

/// Range-limited sensor with Gaussian distance attenuation.
struct SensorParams {
  double a_dmax = 1.0;  ///< peak perception factor in [0, 1]
  double sigma = 1.0;   ///< attenuation coefficient
  double d_max = 100.0; ///< sensing range (m)

  void validate() const;
};

/// Vehicle speeds and power draw. Energies are in units of the standard
/// battery capacity e_max; powers are per second.
struct VehicleParams {
  double v_air = 10.0;
  double v_sea = 0.5;
  double p_air = 1.0 / 900.0;
  double p_sea = 1.0 / 28800.0;
  double e_switch = 1.0 / 30.0;
  double t_switch = 20.0;
  double e_max = 1.0;
  SensorParams sensor{};

  double speed(Medium m) const { return m == Medium::Air ? v_air : v_sea; }
  double power(Medium m) const { return m == Medium::Air ? p_air : p_sea; }
  void validate() const;
};

double sensor_attenuation(double d, const SensorParams& sensor);

double sensor_reading(const Vec3& path_point, const Vec3& grid_point, double im_value, const SensorParams& sensor);

/// Ground speed along `direction` (unit) when the vehicle makes v_hauv
/// through a medium moving at v_c. Takes the larger root of
///   v^2 - 2 (v_c . a) v + |v_c|^2 - v_hauv^2 = 0
/// and returns nullopt when there is no real root or it is not positive.
std::optional<double> synthesize_speed(const Vec3& direction, const Vec3& v_c, double v_hauv);

struct SegmentKinematics {
  double time = 0.0;    ///< s
  double energy = 0.0;  ///< e_max units
  Medium medium = Medium::Sea;
  double v_abs = 0.0;   ///< m/s
};

/// Straight single-medium segment; current sampled at the midpoint.
/// Zero-length segments cost nothing.
std::optional<SegmentKinematics> segment_time_energy(const Vec3& a, const Vec3& b, const Environment& env,
                                                     const VehicleParams& params);

}  // namespace hauv
