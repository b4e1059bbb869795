#include "hauv/vehicle.hpp"

#include <cmath>
#include <stdexcept>

namespace hauv {

void SensorParams::validate() const {
  if (!(a_dmax >= 0.0 && a_dmax <= 1.0)) throw std::invalid_argument("sensor: a_dmax must lie in [0, 1]");
  if (!(d_max > 0.0)) throw std::invalid_argument("sensor: d_max must be > 0");
  if (!(sigma >= 0.0)) throw std::invalid_argument("sensor: sigma must be >= 0");
}

void VehicleParams::validate() const {
  for (double v : {v_air, v_sea, p_air, p_sea, e_switch, t_switch, e_max}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("vehicle: parameters must be positive and finite");
  }
  if (!(p_air * 1.0 < e_max)) throw std::invalid_argument("vehicle: one second of flight must not exhaust e_max");
  if (!(e_switch < e_max)) throw std::invalid_argument("vehicle: a transition must cost less than e_max");
  sensor.validate();
}

double sensor_attenuation(double d, const SensorParams& sensor) {
  if (d > sensor.d_max) return 0.0;
  const double r = d / sensor.d_max;
  return sensor.a_dmax * std::exp(-sensor.sigma * r * r);
}

double sensor_reading(const Vec3& path_point, const Vec3& grid_point, double im_value, const SensorParams& sensor) {
  return im_value * sensor_attenuation((path_point - grid_point).norm(), sensor);
}

std::optional<double> synthesize_speed(const Vec3& direction, const Vec3& v_c, double v_hauv) {
  const double p = v_c.dot(direction);
  const double quarter_disc = p * p + v_hauv * v_hauv - v_c.squaredNorm();
  if (quarter_disc < 0.0) return std::nullopt;
  const double v_abs = p + std::sqrt(quarter_disc);
  if (!(v_abs > 0.0)) return std::nullopt;
  return v_abs;
}

std::optional<SegmentKinematics> segment_time_energy(const Vec3& a, const Vec3& b, const Environment& env,
                                                     const VehicleParams& params) {
  const Vec3 mid = 0.5 * (a + b);
  SegmentKinematics k;
  k.medium = medium_at(mid.z());
  const Vec3 d = b - a;
  const double len = d.norm();
  if (len == 0.0) {
    k.v_abs = params.speed(k.medium);
    return k;
  }
  const auto v_abs = synthesize_speed(d / len, env.velocity().at(mid), params.speed(k.medium));
  if (!v_abs) return std::nullopt;
  k.v_abs = *v_abs;
  k.time = len / *v_abs;
  k.energy = params.power(k.medium) * k.time;
  return k;
}

}  // namespace hauv
