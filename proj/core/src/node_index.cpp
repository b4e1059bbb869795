#include "hauv/planners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hauv {

NodeIndex::NodeIndex(double cell) : cell_(cell) {
  if (!(cell > 0.0)) throw std::invalid_argument("node index: cell must be > 0");
}

NodeIndex::Cell3 NodeIndex::cell_of(const Vec3& p) const {
  return {static_cast<std::int64_t>(std::floor(p.x() / cell_)), static_cast<std::int64_t>(std::floor(p.y() / cell_)),
          static_cast<std::int64_t>(std::floor(p.z() / cell_))};
}

NodeIndex::Key NodeIndex::key(const Cell3& c) {
  constexpr std::int64_t bias = 1 << 20;
  return ((c.x + bias) << 42) | ((c.y + bias) << 21) | (c.z + bias);
}

void NodeIndex::insert(std::size_t id, const Vec3& p) {
  if (id != points_.size()) throw std::invalid_argument("node index: ids must be dense and increasing");
  points_.push_back(p);
  const Cell3 c = cell_of(p);
  if (points_.size() == 1) {
    lo_ = hi_ = c;
  } else {
    lo_ = {std::min(lo_.x, c.x), std::min(lo_.y, c.y), std::min(lo_.z, c.z)};
    hi_ = {std::max(hi_.x, c.x), std::max(hi_.y, c.y), std::max(hi_.z, c.z)};
  }
  buckets_[key(c)].push_back(id);
}

std::size_t NodeIndex::nearest(const Vec3& q) const {
  if (points_.empty()) throw std::invalid_argument("nearest: empty vertex set");
  const Cell3 c = cell_of(q);
  const std::int64_t max_shell =
      std::max({std::abs(c.x - lo_.x), std::abs(c.x - hi_.x), std::abs(c.y - lo_.y), std::abs(c.y - hi_.y),
                std::abs(c.z - lo_.z), std::abs(c.z - hi_.z)});
  std::size_t best = std::numeric_limits<std::size_t>::max();
  double best_d = std::numeric_limits<double>::infinity();
  auto visit = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    const auto it = buckets_.find(key({x, y, z}));
    if (it == buckets_.end()) return;
    for (auto id : it->second) {
      const double d = (points_[id] - q).squaredNorm();
      if (d < best_d || (d == best_d && id < best)) {
        best_d = d;
        best = id;
      }
    }
  };
  for (std::int64_t s = 0; s <= max_shell; ++s) {
    for (std::int64_t dz = -s; dz <= s; ++dz)
      for (std::int64_t dy = -s; dy <= s; ++dy)
        for (std::int64_t dx = -s; dx <= s; ++dx) {
          if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != s) continue;
          visit(c.x + dx, c.y + dy, c.z + dz);
        }
    // Every point beyond shell s is at least s cells away.
    if (best_d < std::pow(s * cell_, 2)) break;
  }
  return best;
}

std::vector<std::size_t> NodeIndex::within(const Vec3& q, double r) const {
  std::vector<std::size_t> out;
  const Cell3 a = cell_of(q - Vec3::Constant(r));
  const Cell3 b = cell_of(q + Vec3::Constant(r));
  for (std::int64_t z = std::max(a.z, lo_.z); z <= std::min(b.z, hi_.z); ++z)
    for (std::int64_t y = std::max(a.y, lo_.y); y <= std::min(b.y, hi_.y); ++y)
      for (std::int64_t x = std::max(a.x, lo_.x); x <= std::min(b.x, hi_.x); ++x) {
        const auto it = buckets_.find(key({x, y, z}));
        if (it == buckets_.end()) continue;
        for (auto id : it->second) {
          if ((points_[id] - q).norm() < r) out.push_back(id);
        }
      }
  std::sort(out.begin(), out.end());
  return out;
}

SamplingTree::SamplingTree(const Vec3& root, double index_cell) : index_(index_cell) {
  TreeNode n;
  n.pos = root;
  add(n);
}

std::size_t SamplingTree::add(const TreeNode& node) {
  const std::size_t id = nodes_.size();
  nodes_.push_back(node);
  index_.insert(id, node.pos);
  return id;
}

std::vector<Vec3> SamplingTree::chain(std::size_t i) const {
  std::vector<Vec3> out;
  for (int cur = static_cast<int>(i); cur >= 0; cur = nodes_[cur].parent) out.push_back(nodes_[cur].pos);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace hauv
