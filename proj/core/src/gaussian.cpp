#include "hauv/gaussian.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hauv {

namespace {

const double kNorm3 = std::sqrt(std::pow(2.0 * std::numbers::pi, 3));

}  // namespace

void validate_feature(const GaussianFeature& f) {
  if (!(f.g > 0.0) || !std::isfinite(f.g)) throw std::invalid_argument("gaussian feature: g must be > 0");
  if (!f.mu.allFinite() || !f.sigma.allFinite())
    throw std::invalid_argument("gaussian feature: non-finite mean or covariance");
  const double scale = f.sigma.cwiseAbs().maxCoeff();
  if ((f.sigma - f.sigma.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(scale, 1.0))
    throw std::invalid_argument("gaussian feature: covariance is not symmetric");
  if (!(f.sigma.determinant() > 0.0))
    throw std::invalid_argument("gaussian feature: covariance is singular or indefinite");
}

double gaussian_info_value(const Vec3& p, std::span<const GaussianFeature> features) {
  double sum = 0.0;
  for (const auto& f : features) {
    const Vec3 d = p - f.mu;
    const Eigen::LDLT<Eigen::Matrix3d> ldlt(f.sigma);
    const double quad = d.dot(ldlt.solve(d));
    sum += f.g / (kNorm3 * std::sqrt(f.sigma.determinant())) * std::exp(-0.5 * quad);
  }
  return sum;
}

GaussianMixture::GaussianMixture(std::vector<GaussianFeature> features)
    : features_(std::move(features)) {
  inverse_.reserve(features_.size());
  scale_.reserve(features_.size());
  for (const auto& f : features_) {
    validate_feature(f);
    inverse_.push_back(f.sigma.inverse());
    scale_.push_back(f.g / (kNorm3 * std::sqrt(f.sigma.determinant())));
  }
}

double GaussianMixture::value(const Vec3& p) const {
  double sum = 0.0;
  for (std::size_t b = 0; b < features_.size(); ++b) {
    const Vec3 d = p - features_[b].mu;
    sum += scale_[b] * std::exp(-0.5 * d.dot(inverse_[b] * d));
  }
  return sum;
}

Eigen::Matrix3d covariance_from(const Eigen::Vector3d& diag, const Eigen::Matrix3d& basis) {
  Eigen::Matrix3d c = basis.transpose() * diag.asDiagonal() * basis;
  // B^T A B is symmetric in exact arithmetic; remove the rounding asymmetry.
  return 0.5 * (c + c.transpose());
}

Eigen::Matrix3d random_covariance(Rng& rng, const VarianceRange& range) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> var(range.lo, range.hi);
  const Eigen::Vector3d diag(var(rng), var(rng), var(rng));
  for (;;) {
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = unit(rng);
    const Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
    const Eigen::Matrix3d r = qr.matrixQR().triangularView<Eigen::Upper>();
    if (r.diagonal().cwiseAbs().minCoeff() < 1e-8) continue;
    const Eigen::Matrix3d basis = qr.householderQ();
    return covariance_from(diag, basis);
  }
}

}  // namespace hauv
