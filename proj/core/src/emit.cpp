#include "hauv/bench.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hauv {

namespace {

using nlohmann::ordered_json;

ordered_json num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return nullptr;
  return std::stod(format_number(v));
}

std::string status_of(const RunRecord& r) {
  if (r.failed) return "init_failed";
  return r.feasible() ? "ok" : "infeasible";
}

}  // namespace

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string records_csv(std::span<const RunRecord> records) {
  std::ostringstream os;
  os << "scenario,algorithm,repetition,seed,status,best_ig,iterations,energy,time,evaluations,env_hash,path,"
        "wall_time\n";
  for (const auto& r : records) {
    os << r.scenario << ',' << to_string(r.algorithm) << ',' << r.repetition << ',' << r.seed << ','
       << status_of(r) << ',' << format_number(r.best_ig) << ',' << r.iterations << ',' << format_number(r.energy)
       << ',' << format_number(r.time) << ',' << r.evaluations << ',' << r.env_hash << ',' << r.path_ref() << ','
       << format_number(r.wall_time) << '\n';
  }
  return os.str();
}

std::string metrics_csv(std::span<const AlgorithmMetrics> metrics) {
  std::ostringstream os;
  os << "algorithm,n,i_mean,i_std,mean_iterations,mean_wall_time,mean_energy,mean_time,feasible,failed\n";
  for (const auto& m : metrics) {
    os << to_string(m.algorithm) << ',' << m.n << ',' << format_number(m.i_mean) << ','
       << (m.i_std ? format_number(*m.i_std) : "NA") << ',' << format_number(m.mean_iterations) << ','
       << format_number(m.mean_wall_time) << ',' << format_number(m.mean_energy) << ','
       << format_number(m.mean_time) << ',' << m.feasible << ',' << m.failed << '\n';
  }
  return os.str();
}

std::string bestsol_csv(const RunRecord& record) {
  std::ostringstream os;
  os << "iteration,bestsol\n";
  for (std::size_t i = 0; i < record.bestsol.size(); ++i) os << i + 1 << ',' << format_number(record.bestsol[i]) << '\n';
  return os.str();
}

std::string path_csv(const RunRecord& record) {
  std::ostringstream os;
  os << "x,y,z,medium,s\n";
  for (const auto& p : record.path.samples) {
    os << format_number(p.pos.x()) << ',' << format_number(p.pos.y()) << ',' << format_number(p.pos.z()) << ','
       << to_string(p.medium) << ',' << format_number(p.s) << '\n';
  }
  return os.str();
}

std::string robustness_csv(const RobustnessResult& result) {
  std::ostringstream os;
  os << "map,seed,env_hash,t_max,kappa_air,kappa_sea,excluded";
  for (auto a : result.algorithms) os << ",ig_" << to_string(a);
  for (auto a : result.algorithms) os << ",win_" << to_string(a);
  os << '\n';
  for (const auto& m : result.maps) {
    os << m.map << ',' << m.seed << ',' << m.env_hash << ',' << format_number(m.task.t_max) << ','
       << format_number(m.kappa_air) << ',' << format_number(m.kappa_sea) << ',' << (m.excluded ? 1 : 0);
    for (double v : m.best_ig) os << ',' << format_number(v);
    for (std::size_t a = 0; a < result.algorithms.size(); ++a)
      os << ',' << format_number(m.wins.empty() ? 0.0 : m.wins[a]);
    os << '\n';
  }
  return os.str();
}

void write_text_file(const std::filesystem::path& file, std::string_view text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit_results(std::span<const RunRecord> records, std::span<const AlgorithmMetrics> metrics,
                  const ScenarioSpec& spec, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());

  write_text_file(out_dir / "records.csv", records_csv(records));
  write_text_file(out_dir / "metrics.csv", metrics_csv(metrics));
  for (const auto& r : records) {
    write_text_file(out_dir / ("bestsol_" + to_string(r.algorithm) + "_" + std::to_string(r.seed) + ".csv"),
                    bestsol_csv(r));
    if (r.feasible()) write_text_file(out_dir / r.path_ref(), path_csv(r));
  }

  ordered_json summary;
  summary["scenario"] = ordered_json::parse(scenario_to_json(spec));
  auto& ms = summary["metrics"] = ordered_json::array();
  for (const auto& m : metrics) {
    ms.push_back({{"algorithm", to_string(m.algorithm)},
                  {"display_name", display_name(m.algorithm)},
                  {"n", m.n},
                  {"i_mean", num(m.i_mean)},
                  {"i_std", m.i_std ? num(*m.i_std) : ordered_json(nullptr)},
                  {"mean_iterations", num(m.mean_iterations)},
                  {"mean_wall_time", num(m.mean_wall_time)},
                  {"mean_energy", num(m.mean_energy)},
                  {"mean_time", num(m.mean_time)},
                  {"feasible", m.feasible},
                  {"failed", m.failed}});
  }
  summary["records"] = records.size();
  write_text_file(out_dir / "summary.json", summary.dump(2) + "\n");
}

void emit_robustness(const RobustnessResult& result, const RobustnessConfig& cfg,
                     const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
  write_text_file(out_dir / ("robustness_" + to_string(result.family) + ".csv"), robustness_csv(result));

  ordered_json s;
  s["family"] = to_string(result.family);
  s["maps"] = cfg.maps;
  s["base_seed"] = cfg.base_seed;
  s["max_it"] = cfg.planner.max_it;
  s["it_stop"] = cfg.planner.it_stop;
  auto& w = s["wins"] = ordered_json::object();
  for (std::size_t a = 0; a < result.algorithms.size(); ++a) w[to_string(result.algorithms[a])] = num(result.wins[a]);
  s["excluded_maps"] = result.excluded_maps;
  write_text_file(out_dir / ("robustness_" + to_string(result.family) + ".json"), s.dump(2) + "\n");
}

std::vector<Vec3> read_path_csv(const std::filesystem::path& file) {
  std::istringstream in(read_text_file(file));
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y,z", 0) != 0)
    throw std::runtime_error(file.string() + ": missing x,y,z header");
  std::vector<Vec3> pts;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    Vec3 p;
    for (int c = 0; c < 3; ++c) {
      if (!std::getline(ls, cell, ',')) throw std::runtime_error(file.string() + ":" + std::to_string(lineno) + ": short row");
      try {
        std::size_t used = 0;
        p[c] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::runtime_error(file.string() + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace hauv
