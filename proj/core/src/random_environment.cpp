#include "hauv/environment.hpp"

#include <algorithm>
#include <cmath>

namespace hauv {

std::vector<GaussianFeature> random_features(Rng& rng, const Workspace& ws, const RandomEnvConfig& cfg) {
  std::uniform_int_distribution<int> count(cfg.features_min, cfg.features_max);
  std::uniform_real_distribution<double> ux(ws.lower().x(), ws.upper().x());
  std::uniform_real_distribution<double> uy(ws.lower().y(), ws.upper().y());
  std::uniform_real_distribution<double> uz(ws.lower().z(), ws.upper().z());
  std::uniform_real_distribution<double> ug(cfg.g_min, cfg.g_max);
  const int n = count(rng);
  std::vector<GaussianFeature> out;
  out.reserve(n);
  for (int b = 0; b < n; ++b) {
    GaussianFeature f;
    f.mu = Vec3(ux(rng), uy(rng), uz(rng));
    f.sigma = random_covariance(rng, cfg.variance);
    f.g = ug(rng);
    out.push_back(f);
  }
  return out;
}

double max_grid_speed(const VelocityField& field, Medium medium) {
  const Workspace& ws = field.workspace();
  double best = 0.0;
  for (int k = 0; k < ws.nz(); ++k) {
    if (ws.layer_medium(k) != medium) continue;
    for (int j = 0; j < ws.ny(); ++j)
      for (int i = 0; i < ws.nx(); ++i) best = std::max(best, field.at_grid({i, j, k}).norm());
  }
  return best;
}

namespace {

std::vector<LambVortex> vortices_for_side(Rng& rng, const Workspace& ws, const RandomEnvConfig& cfg,
                                          Medium medium) {
  const int sea = ws.sea_level_index();
  const int lo = medium == Medium::Air ? sea + 1 : 0;
  const int hi = medium == Medium::Air ? ws.nz() - 1 : sea;
  if (lo > hi) return {};
  const double cap = medium == Medium::Air ? cfg.wind_cap : cfg.current_cap;

  std::uniform_int_distribution<int> count(cfg.vortices_min, cfg.vortices_max);
  std::uniform_real_distribution<double> ux(ws.lower().x(), ws.upper().x());
  std::uniform_real_distribution<double> uy(ws.lower().y(), ws.upper().y());
  std::uniform_real_distribution<double> strength(0.5, 1.0);
  std::uniform_real_distribution<double> uzeta(cfg.zeta_min, cfg.zeta_max);
  std::uniform_real_distribution<double> drift(-500.0, 500.0);
  std::uniform_real_distribution<double> eta_ratio(0.6, 1.4);
  std::uniform_real_distribution<double> zeta_ratio(0.8, 1.2);
  std::uniform_real_distribution<double> peak(0.7, 1.0);
  std::bernoulli_distribution ccw(0.5);

  const int n = count(rng);
  std::vector<LambVortex> side;
  side.reserve(n);
  for (int v = 0; v < n; ++v) {
    LambVortex lv;
    lv.layer_lo = lo;
    lv.layer_hi = hi;
    lv.bottom.center = Vec2(ux(rng), uy(rng));
    lv.bottom.eta = (ccw(rng) ? 1.0 : -1.0) * strength(rng);
    lv.bottom.zeta = uzeta(rng);
    lv.top.center = lv.bottom.center + Vec2(drift(rng), drift(rng));
    lv.top.eta = lv.bottom.eta * eta_ratio(rng);
    lv.top.zeta = lv.bottom.zeta * zeta_ratio(rng);
    side.push_back(lv);
  }
  // Strengths enter the field linearly, so one scale factor pins the peak.
  const double current_max = max_grid_speed(VelocityField::analytic(ws, side), medium);
  if (current_max > 0.0) {
    const double target = cap * peak(rng) * (1.0 - 1e-9);
    const double s = target / current_max;
    for (auto& lv : side) {
      lv.bottom.eta *= s;
      lv.top.eta *= s;
    }
  }
  return side;
}

}  // namespace

std::vector<LambVortex> random_vortices(Rng& rng, const Workspace& ws, const RandomEnvConfig& cfg) {
  auto out = vortices_for_side(rng, ws, cfg, Medium::Sea);
  auto air = vortices_for_side(rng, ws, cfg, Medium::Air);
  out.insert(out.end(), air.begin(), air.end());
  return out;
}

Environment generate_random_environment(std::uint64_t seed, const RandomEnvConfig& cfg, const Workspace& ws,
                                        ObstacleSet obstacles) {
  Rng rng(seed);
  const auto features = random_features(rng, ws, cfg);
  auto vortices = random_vortices(rng, ws, cfg);
  return Environment(build_info_map(features, ws, cfg.kappa_air, cfg.kappa_sea),
                     VelocityField::analytic(ws, std::move(vortices)), std::move(obstacles));
}

}  // namespace hauv
