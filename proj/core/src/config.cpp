#include "hauv/bench.hpp"

#include <json.hpp>

#include <cmath>
#include <set>

namespace hauv {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

void read_number(const json& obj, const char* key, double& out, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (it->is_string() && it->get<std::string>() == "inf") {
    out = std::numeric_limits<double>::infinity();
    return;
  }
  if (!it->is_number()) throw ConfigError(where + "." + key + ": expected a number or \"inf\"");
  out = it->get<double>();
}

void read_vec3(const json& obj, const char* key, Vec3& out, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_array() || it->size() != 3) throw ConfigError(where + "." + key + ": expected [x, y, z]");
  for (int i = 0; i < 3; ++i) {
    if (!(*it)[i].is_number()) throw ConfigError(where + "." + key + ": expected numbers");
    out[i] = (*it)[i].get<double>();
  }
}

LengthUnit parse_unit(const json& obj, const std::string& where, LengthUnit fallback) {
  auto it = obj.find("unit");
  if (it == obj.end()) return fallback;
  const auto s = it->is_string() ? it->get<std::string>() : std::string();
  if (s == "cells") return LengthUnit::Cells;
  if (s == "meters") return LengthUnit::Meters;
  throw ConfigError(where + ".unit: expected \"cells\" or \"meters\"");
}

std::vector<Algorithm> parse_algorithms(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ConfigError(where + ": expected a list of algorithm names");
  std::vector<Algorithm> out;
  for (const auto& v : arr) {
    auto a = v.is_string() ? parse_algorithm(v.get<std::string>()) : std::nullopt;
    if (!a) throw ConfigError(where + ": unknown algorithm " + v.dump());
    out.push_back(*a);
  }
  return out;
}

void apply_env(const json& j, RandomEnvConfig& cfg, const std::string& where) {
  read(j, "features_min", cfg.features_min, where);
  read(j, "features_max", cfg.features_max, where);
  read(j, "vortices_min", cfg.vortices_min, where);
  read(j, "vortices_max", cfg.vortices_max, where);
  read(j, "wind_cap", cfg.wind_cap, where);
  read(j, "current_cap", cfg.current_cap, where);
  read(j, "g_min", cfg.g_min, where);
  read(j, "g_max", cfg.g_max, where);
  read(j, "zeta_min", cfg.zeta_min, where);
  read(j, "zeta_max", cfg.zeta_max, where);
  read(j, "variance_min", cfg.variance.lo, where);
  read(j, "variance_max", cfg.variance.hi, where);
}

#define HAUV_ENV_KEYS                                                                                       \
  "features_min", "features_max", "vortices_min", "vortices_max", "wind_cap", "current_cap", "g_min", "g_max", \
      "zeta_min", "zeta_max", "variance_min", "variance_max"

void apply_vehicle(const json& j, VehicleParams& v) {
  const std::string w = "vehicle";
  only_keys(j, w, {"v_air", "v_sea", "p_air", "p_sea", "e_switch", "t_switch", "sensor"});
  read(j, "v_air", v.v_air, w);
  read(j, "v_sea", v.v_sea, w);
  read(j, "p_air", v.p_air, w);
  read(j, "p_sea", v.p_sea, w);
  read(j, "e_switch", v.e_switch, w);
  read(j, "t_switch", v.t_switch, w);
  if (auto it = j.find("sensor"); it != j.end()) {
    only_keys(*it, "vehicle.sensor", {"a_dmax", "sigma", "d_max"});
    read(*it, "a_dmax", v.sensor.a_dmax, "vehicle.sensor");
    read(*it, "sigma", v.sensor.sigma, "vehicle.sensor");
    read(*it, "d_max", v.sensor.d_max, "vehicle.sensor");
  }
}

void apply_planner(const json& j, PlannerConfig& p) {
  const std::string w = "planner";
  only_keys(j, w, {"m", "delta", "r", "unit", "max_it", "it_stop", "neighbor_cap", "rigt_neighbor_cap",
                   "ds_max"});
  read(j, "m", p.m, w);
  read(j, "delta", p.delta, w);
  read(j, "r", p.r, w);
  p.unit = parse_unit(j, w, p.unit);
  read(j, "max_it", p.max_it, w);
  read(j, "it_stop", p.it_stop, w);
  read(j, "neighbor_cap", p.neighbor_cap, w);
  read(j, "rigt_neighbor_cap", p.rigt_neighbor_cap, w);
  read(j, "ds_max", p.eval.ds_max, w);
}

void apply_pso(const json& j, PsoConfig& p) {
  const std::string w = "pso";
  only_keys(j, w, {"particles", "control_points", "c1", "c2", "w0", "w_damp", "v_max", "unit", "max_it", "it_stop",
                   "init_attempts", "ds_max"});
  read(j, "particles", p.particles, w);
  read(j, "control_points", p.control_points, w);
  read(j, "c1", p.c1, w);
  read(j, "c2", p.c2, w);
  read(j, "w0", p.w0, w);
  read(j, "w_damp", p.w_damp, w);
  read(j, "v_max", p.v_max, w);
  p.unit = parse_unit(j, w, p.unit);
  read(j, "max_it", p.max_it, w);
  read(j, "it_stop", p.it_stop, w);
  read(j, "init_attempts", p.init_attempts, w);
  read(j, "ds_max", p.eval.ds_max, w);
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ordered_json number_or_inf(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

ordered_json vec3(const Vec3& v) { return ordered_json::array({v.x(), v.y(), v.z()}); }

const char* source_name(EnvSource s) {
  switch (s) {
    case EnvSource::Random: return "random";
    case EnvSource::Bands: return "bands";
    case EnvSource::File: return "file";
  }
  return "?";
}

}  // namespace

void apply_scenario_config(std::string_view text, ScenarioSpec& spec) {
  const json j = parse(text);
  only_keys(j, "config", {"scenario", "name", "environment", "task", "kappa_air", "kappa_sea", "algorithms",
                          "repetitions", "base_seed", "vehicle", "planner", "pso"});
  read(j, "scenario", spec.id, "config");
  read(j, "name", spec.name, "config");
  if (auto it = j.find("environment"); it != j.end()) {
    const std::string w = "environment";
    only_keys(*it, w, {"source", "seed", "file", "slope", HAUV_ENV_KEYS});
    if (auto s = it->find("source"); s != it->end()) {
      const auto name = s->is_string() ? s->get<std::string>() : std::string();
      if (name == "random") spec.source = EnvSource::Random;
      else if (name == "bands") spec.source = EnvSource::Bands;
      else if (name == "file") spec.source = EnvSource::File;
      else throw ConfigError("environment.source: expected random, bands or file");
    }
    read(*it, "seed", spec.env_seed, w);
    std::string file;
    read(*it, "file", file, w);
    if (!file.empty()) spec.env_file = file;
    read(*it, "slope", spec.slope, w);
    apply_env(*it, spec.env, w);
  }
  if (auto it = j.find("task"); it != j.end()) {
    only_keys(*it, "task", {"q_init", "q_final", "t_max", "e_max"});
    read_vec3(*it, "q_init", spec.task.q_init, "task");
    read_vec3(*it, "q_final", spec.task.q_final, "task");
    read_number(*it, "t_max", spec.task.t_max, "task");
    read_number(*it, "e_max", spec.task.e_max, "task");
  }
  read(j, "kappa_air", spec.kappa_air, "config");
  read(j, "kappa_sea", spec.kappa_sea, "config");
  if (auto it = j.find("algorithms"); it != j.end()) spec.algorithms = parse_algorithms(*it, "algorithms");
  read(j, "repetitions", spec.repetitions, "config");
  read(j, "base_seed", spec.base_seed, "config");
  if (auto it = j.find("vehicle"); it != j.end()) apply_vehicle(*it, spec.vehicle);
  if (auto it = j.find("planner"); it != j.end()) apply_planner(*it, spec.planner);
  if (auto it = j.find("pso"); it != j.end()) apply_pso(*it, spec.pso);
}

void apply_robustness_config(std::string_view text, RobustnessConfig& cfg) {
  const json j = parse(text);
  only_keys(j, "config", {"family", "maps", "base_seed", "algorithms", "environment", "vehicle", "planner", "pso",
                          "min_separation", "max_separation"});
  if (auto it = j.find("family"); it != j.end()) {
    auto f = it->is_string() ? parse_family(it->get<std::string>()) : std::nullopt;
    if (!f) throw ConfigError("family: expected unbounded, time-window or weighted");
    cfg.family = *f;
  }
  read(j, "maps", cfg.maps, "config");
  read(j, "base_seed", cfg.base_seed, "config");
  if (auto it = j.find("algorithms"); it != j.end()) cfg.algorithms = parse_algorithms(*it, "algorithms");
  if (auto it = j.find("environment"); it != j.end()) {
    only_keys(*it, "environment", {HAUV_ENV_KEYS});
    apply_env(*it, cfg.env, "environment");
  }
  if (auto it = j.find("vehicle"); it != j.end()) apply_vehicle(*it, cfg.vehicle);
  if (auto it = j.find("planner"); it != j.end()) apply_planner(*it, cfg.planner);
  if (auto it = j.find("pso"); it != j.end()) apply_pso(*it, cfg.pso);
  read(j, "min_separation", cfg.min_separation, "config");
  read(j, "max_separation", cfg.max_separation, "config");
}

std::string scenario_to_json(const ScenarioSpec& spec) {
  ordered_json j;
  j["scenario"] = spec.id;
  j["name"] = spec.name;
  ordered_json env;
  env["source"] = source_name(spec.source);
  env["seed"] = spec.env_seed;
  if (spec.source == EnvSource::File) env["file"] = spec.env_file.string();
  env["slope"] = spec.slope;
  j["environment"] = env;
  j["task"] = {{"q_init", vec3(spec.task.q_init)},
               {"q_final", vec3(spec.task.q_final)},
               {"t_max", number_or_inf(spec.task.t_max)},
               {"e_max", number_or_inf(spec.task.e_max)}};
  j["kappa_air"] = spec.kappa_air;
  j["kappa_sea"] = spec.kappa_sea;
  auto& algos = j["algorithms"] = ordered_json::array();
  for (auto a : spec.algorithms) algos.push_back(to_string(a));
  j["repetitions"] = spec.repetitions;
  j["base_seed"] = spec.base_seed;
  const auto& v = spec.vehicle;
  j["vehicle"] = {{"v_air", v.v_air},       {"v_sea", v.v_sea},       {"p_air", v.p_air},
                  {"p_sea", v.p_sea},       {"e_switch", v.e_switch}, {"t_switch", v.t_switch},
                  {"sensor", {{"a_dmax", v.sensor.a_dmax}, {"sigma", v.sensor.sigma}, {"d_max", v.sensor.d_max}}}};
  const auto& p = spec.planner;
  j["planner"] = {{"m", p.m},
                  {"delta", p.delta},
                  {"r", p.r},
                  {"unit", p.unit == LengthUnit::Cells ? "cells" : "meters"},
                  {"max_it", p.max_it},
                  {"it_stop", p.it_stop},
                  {"neighbor_cap", p.neighbor_cap},
                  {"rigt_neighbor_cap", p.rigt_neighbor_cap},
                  {"ds_max", p.eval.ds_max}};
  const auto& s = spec.pso;
  j["pso"] = {{"particles", s.particles},
              {"control_points", s.control_points},
              {"c1", s.c1},
              {"c2", s.c2},
              {"w0", s.w0},
              {"w_damp", s.w_damp},
              {"v_max", s.v_max},
              {"unit", s.unit == LengthUnit::Cells ? "cells" : "meters"},
              {"max_it", s.max_it},
              {"it_stop", s.it_stop},
              {"init_attempts", s.init_attempts},
              {"ds_max", s.eval.ds_max}};
  return j.dump(2);
}

}  // namespace hauv
