#pragma once

#include <cstdint>
#include <vector>

#include "curvebump/density.hpp"
#include "curvebump/sample.hpp"

namespace curvebump {

/// Finite Gaussian mixture with closed-form derivatives; the analytic ground
/// truth for the experiment harness.
class GaussianMixture final : public DensityModel {
 public:
  /// Throws Error(model) unless weights are nonnegative and sum to 1 within
  /// 1e-12, component dimensions agree, and every covariance is symmetric
  /// positive definite.
  GaussianMixture(std::vector<double> weights, std::vector<Vector> means,
                  std::vector<Matrix> covariances);

  /// Single standard normal component in dimension d.
  static GaussianMixture standard_normal(int d);

  int dimension() const noexcept override { return dimension_; }
  double value(const Vector& x) const override;
  Derivatives derivatives(const Vector& x) const override;

  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<Vector>& means() const noexcept { return means_; }
  const std::vector<Matrix>& covariances() const noexcept { return covariances_; }

 private:
  int dimension_;
  std::vector<double> weights_;
  std::vector<Vector> means_;
  std::vector<Matrix> covariances_;
  std::vector<Matrix> precisions_;
  std::vector<double> normalizers_;  // w_k (2 pi)^(-d/2) det(Sigma_k)^(-1/2)
};

/// Two-component bivariate mixture whose mean-curvature bump is a single
/// boomerang-shaped region: equal weights, means (-3/2, 0) and (3/2, 0), correlations -0.7 and 0.7.
GaussianMixture boomerang_mixture();

/// Draws n points: component by inverse CDF on the weights, then
/// mean + chol(Sigma) z with z from Box-Muller. Deterministic per seed.
SampleMatrix sample_mixture(const GaussianMixture& gmm, std::size_t n, std::uint64_t seed);

/// Density of X + hZ with X ~ gmm and Z standard normal: covariances gain h^2 I.
GaussianMixture smoothed_mixture(const GaussianMixture& gmm, double h);

}  // namespace curvebump
