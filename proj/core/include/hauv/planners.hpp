#pragma once

#include "hauv/path_eval.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hauv {

enum class Algorithm { RastIE, RastI, Rast, Rrst, Rigt, Pso };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::RastIE, Algorithm::RastI, Algorithm::Rast,
                                               Algorithm::Rrst,   Algorithm::Rigt,  Algorithm::Pso};

/// CLI spelling: rast-ie, rast-i, rast, rrst, rigt, pso.
std::string to_string(Algorithm a);
/// Display name as used in result tables: RAST*-I/E, RAST*-I, ...
std::string display_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// How step length, radius and PSO velocity limits are measured.
enum class LengthUnit { Cells, Meters };

struct PlannerConfig {
  Algorithm variant = Algorithm::RastIE;
  int m = 10;           ///< tournament size (forced to 1 for RRST* and RIGT)
  double delta = 5.0;   ///< step length
  double r = 10.0;      ///< neighbourhood radius
  LengthUnit unit = LengthUnit::Cells;
  int max_it = 5000;
  int it_stop = 200;
  std::size_t neighbor_cap = 0;  ///< 0 = unlimited
  /// RIGT grows one branch per open neighbour, so an uncapped neighbourhood
  /// multiplies the tree every iteration. 0 = unlimited.
  std::size_t rigt_neighbor_cap = 8;
  std::uint64_t seed = 0;
  EvalOptions eval{};

  double delta_m(const Workspace& ws) const { return unit == LengthUnit::Cells ? delta * ws.cell() : delta; }
  double r_m(const Workspace& ws) const { return unit == LengthUnit::Cells ? r * ws.cell() : r; }
  void validate() const;
};

struct PsoConfig {
  int particles = 50;
  int control_points = 5;
  double c1 = 1.0;
  double c2 = 1.0;
  double w0 = 1.0;
  double w_damp = 0.99;
  double v_max = 5.0;  ///< per-component velocity clamp
  LengthUnit unit = LengthUnit::Cells;
  int max_it = 5000;
  int it_stop = 200;
  int init_attempts = 20000;  ///< per particle
  std::uint64_t seed = 0;
  EvalOptions eval{};

  double v_max_m(const Workspace& ws) const { return unit == LengthUnit::Cells ? v_max * ws.cell() : v_max; }
  void validate() const;
};

struct PlannerResult {
  SmoothPath best_path;
  std::vector<Vec3> best_control;
  double best_ig = 0.0;
  double best_e = 0.0;
  double best_t = 0.0;
  std::vector<double> bestsol;  ///< best-so-far objective after each iteration
  int iterations = 0;
  double wall_time = 0.0;       ///< s
  std::size_t tree_size = 0;
  std::size_t evaluations = 0;
};

/// Thrown when PSO cannot build a feasible initial swarm.
class PlannerInitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Tree primitives

/// Best of m uniformly drawn grid points by information value; the first
/// drawn wins ties.
Vec3 tournament_sample(const InfoMap& im, int m, std::mt19937_64& rng);

/// Index of the node closest to q (lowest index on ties). Throws
/// std::invalid_argument on an empty set.
std::size_t nearest(const Vec3& q, std::span<const Vec3> vertex);

/// Indices of nodes strictly closer than r to q, ascending.
std::vector<std::size_t> near(std::span<const Vec3> vertex, const Vec3& q, double r);

/// Keeps the `cap` ids closest to q (lower id on ties), in ascending id
/// order. cap = 0 keeps everything.
void keep_closest(std::vector<std::size_t>& ids, const Vec3& q, std::span<const Vec3> points, std::size_t cap);

/// Moves from `from` towards `to` by at most delta.
Vec3 steer(const Vec3& from, const Vec3& to, double delta);

/// Uniform hash grid over node positions answering the same queries as
/// nearest() and near() without a full scan.
class NodeIndex {
 public:
  explicit NodeIndex(double cell);

  void insert(std::size_t id, const Vec3& p);
  std::size_t size() const { return points_.size(); }
  std::span<const Vec3> points() const { return points_; }

  std::size_t nearest(const Vec3& q) const;
  std::vector<std::size_t> within(const Vec3& q, double r) const;

 private:
  using Key = std::int64_t;
  struct Cell3 {
    std::int64_t x, y, z;
  };
  Cell3 cell_of(const Vec3& p) const;
  static Key key(const Cell3& c);

  double cell_;
  std::vector<Vec3> points_;
  std::unordered_map<Key, std::vector<std::size_t>> buckets_;
  Cell3 lo_{0, 0, 0};
  Cell3 hi_{0, 0, 0};
};

struct TreeNode {
  Vec3 pos = Vec3::Zero();
  int parent = -1;
  double ig = 0.0;
  double e = 0.0;
  double t = 0.0;
  bool closed = false;
  int compared_with = -1;  ///< RIGT: neighbour used for the pruning test
};

class SamplingTree {
 public:
  SamplingTree(const Vec3& root, double index_cell);

  std::size_t add(const TreeNode& node);
  const TreeNode& node(std::size_t i) const { return nodes_[i]; }
  std::span<const TreeNode> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const NodeIndex& index() const { return index_; }

  /// Positions from the root to node i inclusive.
  std::vector<Vec3> chain(std::size_t i) const;

 private:
  std::vector<TreeNode> nodes_;
  NodeIndex index_;
};

/// True iff q_new is strictly worse than q_m in information, energy and time.
bool prune_dominated(const TreeNode& q_new, const TreeNode& q_m);

/// Loop exit test after appending bestsol(it): true once the trailing
/// it_stop iterations produced no improvement (values before iteration 1
/// count as zero).
bool stalled(std::span<const double> bestsol, int it_stop);

// ---------------------------------------------------------------------------
// Planners. Each run is single-threaded and deterministic per seed; the
// optional tree output exposes the final tree for auditing.

PlannerResult plan_rast_family(const Environment& env, const VehicleParams& vehicle, const Task& task,
                               const PlannerConfig& config, SamplingTree* tree_out = nullptr);

PlannerResult plan_rigt(const Environment& env, const VehicleParams& vehicle, const Task& task,
                        const PlannerConfig& config, SamplingTree* tree_out = nullptr);

/// Weight after `iterations` damping steps.
inline double pso_inertia(double w0, double w_damp, int iterations) {
  double w = w0;
  for (int i = 0; i < iterations; ++i) w *= w_damp;
  return w;
}

struct Particle {
  std::vector<Vec3> position;
  std::vector<Vec3> velocity;
  std::vector<Vec3> pbest;
  double pbest_ig = 0.0;
};

/// One velocity/position update with per-component random factors,
/// velocity clamping and workspace clamping.
void pso_step(Particle& p, std::span<const Vec3> gbest, double w, const PsoConfig& cfg, const Workspace& ws,
              std::mt19937_64& rng);

PlannerResult plan_pso(const Environment& env, const VehicleParams& vehicle, const Task& task,
                       const PsoConfig& config, std::vector<Particle>* swarm_out = nullptr);

}  // namespace hauv
