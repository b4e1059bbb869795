#pragma once

#include "hauv/environment.hpp"
#include "hauv/spline.hpp"
#include "hauv/vehicle.hpp"

#include <limits>
#include <span>
#include <vector>

namespace hauv {

/// Mission endpoints and budgets. e_max is the energy budget for this task in
/// units of the standard battery capacity.
struct Task {
  Vec3 q_init = Vec3::Zero();
  Vec3 q_final = Vec3::Zero();
  double t_max = std::numeric_limits<double>::infinity();
  double e_max = 1.0;
};

/// Best sensor reading obtained so far at each grid point. Entries only
/// ever increase until reset().
class MeasuredArray {
 public:
  explicit MeasuredArray(const Workspace& ws) : values_(ws.size(), 0.0) {}

  double operator[](std::size_t idx) const { return values_[idx]; }
  std::size_t size() const { return values_.size(); }

  void raise(std::size_t idx, double reading) {
    if (reading > values_[idx]) {
      if (values_[idx] == 0.0) touched_.push_back(idx);
      values_[idx] = reading;
    }
  }

  /// Zeroes all entries; cost proportional to the entries touched.
  void reset() {
    for (auto idx : touched_) values_[idx] = 0.0;
    touched_.clear();
  }

  /// Indices with a non-zero value, in first-touched order.
  std::span<const std::size_t> touched() const { return touched_; }

 private:
  std::vector<double> values_;
  std::vector<std::size_t> touched_;
};

/// Max-updates `measured` with the readings of every path sample.
void accumulate_information(const SmoothPath& path, const InfoMap& im, const SensorParams& sensor,
                            MeasuredArray& measured);

/// Sum of kappa_j * measured_j over the grid.
double total_information(const MeasuredArray& measured, const InfoMap& im);

/// No sample inside an obstacle.
bool collision_free(const SmoothPath& path, const ObstacleSet& obstacles);

/// Straight segment check sampled every `step` meters, endpoints included.
bool segment_collision_free(const Vec3& a, const Vec3& b, const ObstacleSet& obstacles, double step);

struct FitnessResult {
  double ig = 0.0;
  double e = 0.0;
  double t = 0.0;
  SmoothPath path;
  bool reachable = true;
  bool collision_free = true;
  bool feasible = false;
};

struct EvalOptions {
  double ds_max = 25.0;
  /// Also collect information for reachable, collision-free paths that
  /// break the budget (RIGT compares such nodes).
  bool ig_when_over_budget = false;
};

/// Fitness of complete candidate paths for one task. Owns a scratch
/// measured array, so one evaluator must not be shared between threads.
class PathEvaluator {
 public:
  PathEvaluator(const Environment& env, const VehicleParams& vehicle, const Task& task, EvalOptions options = {});

  /// Smooths the control polyline and scores it.
  FitnessResult evaluate(std::span<const Vec3> control);

  const Environment& env() const { return env_; }
  const VehicleParams& vehicle() const { return vehicle_; }
  const Task& task() const { return task_; }
  const EvalOptions& options() const { return options_; }

 private:
  const Environment& env_;
  VehicleParams vehicle_;
  Task task_;
  EvalOptions options_;
  MeasuredArray measured_;
};

/// Fitness of the path q_init -> chain[1..] -> q_new -> q_final, where
/// `chain` lists the candidate parent's ancestry from the root (q_init) to
/// the parent itself.
FitnessResult evaluate_fitness(const Vec3& q_new, std::span<const Vec3> chain, const Task& task,
                               const Environment& env, const VehicleParams& vehicle, const EvalOptions& options = {});

/// Control polyline for a tree candidate (see evaluate_fitness).
std::vector<Vec3> candidate_polyline(const Vec3& q_new, std::span<const Vec3> chain, const Vec3& q_final);

}  // namespace hauv
