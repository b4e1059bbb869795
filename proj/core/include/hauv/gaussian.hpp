#pragma once

#include "hauv/workspace.hpp"

#include <Eigen/Core>

#include <random>
#include <span>
#include <vector>

namespace hauv {

using Rng = std::mt19937_64;

/// One region of interest in the information field: a weighted 3D Gaussian.
struct GaussianFeature {
  Vec3 mu = Vec3::Zero();
  Eigen::Matrix3d sigma = Eigen::Matrix3d::Identity();
  double g = 1.0;
};

/// Throws std::invalid_argument unless sigma is symmetric with det > 0 and g > 0.
void validate_feature(const GaussianFeature& f);

/// Sum of g_b N(p; mu_b, Sigma_b) over all features. Solves each covariance
/// on the fly; use GaussianMixture when evaluating many points.
double gaussian_info_value(const Vec3& p, std::span<const GaussianFeature> features);

/// Validated mixture with cached inverses and normalization constants.
class GaussianMixture {
 public:
  explicit GaussianMixture(std::vector<GaussianFeature> features);

  double value(const Vec3& p) const;
  std::span<const GaussianFeature> features() const { return features_; }

 private:
  std::vector<GaussianFeature> features_;
  std::vector<Eigen::Matrix3d> inverse_;
  std::vector<double> scale_;
};

/// Range of the positive diagonal entries used by random_covariance (m^2).
struct VarianceRange {
  double lo = 150.0 * 150.0;
  double hi = 700.0 * 700.0;
};

/// C = B^T A B for a random positive diagonal A and the orthonormal basis B
/// of a random 3x3 matrix. Rank-deficient draws are resampled.
Eigen::Matrix3d random_covariance(Rng& rng, const VarianceRange& range = {});

/// The deterministic core of random_covariance, exposed for testing.
Eigen::Matrix3d covariance_from(const Eigen::Vector3d& diag, const Eigen::Matrix3d& basis);

}  // namespace hauv
