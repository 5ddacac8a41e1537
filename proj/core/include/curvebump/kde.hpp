#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "curvebump/density.hpp"
#include "curvebump/sample.hpp"

namespace curvebump {

/// Scaled distances with ||u||^2 above this are dropped; exp(-700) < 1e-300.
inline constexpr double kKernelCutoffSquared = 1400.0;

struct BandwidthSpec {
  enum class Mode { fixed, normal_scale };

  double h = 1.0;
  Mode mode = Mode::fixed;
  int derivative_order = 0;  // r used by normal_scale

  /// Throws Error(input) unless h is positive and finite.
  static BandwidthSpec fixed(double h);
};

/// Normal-scale rule targeting derivatives of order r:
///   h = sigma * [4 / ((d + 2r + 2) n)]^(1 / (d + 2r + 4))
/// where sigma is the root mean of the per-coordinate sample variances.
/// Throws Error(degenerate) for n < 2 or zero variance in every coordinate.
BandwidthSpec select_bandwidth_normal_scale(const SampleMatrix& sample, int r = 2);

/// Gaussian product-kernel density estimate with scalar bandwidth and exact
/// first and second derivatives.
class KernelDensity final : public DensityModel {
 public:
  KernelDensity(SampleMatrix sample, BandwidthSpec bandwidth);

  int dimension() const noexcept override { return sample_.dimension(); }
  double value(const Vector& x) const override;
  Derivatives derivatives(const Vector& x) const override;

  /// Exact per-term sums on the lattice, using the separability of the
  /// product kernel along grid axes.
  DerivativeGrid derivatives_on_grid(const GridSpec& grid) const override;

  /// As derivatives_on_grid, with sample point i counted weights[i] times and
  /// the estimate normalized by the total weight. Zero weights are skipped.
  DerivativeGrid weighted_derivatives_on_grid(const GridSpec& grid,
                                              std::span<const double> weights) const;

  const SampleMatrix& sample() const noexcept { return sample_; }
  const BandwidthSpec& bandwidth() const noexcept { return bandwidth_; }

 private:
  SampleMatrix sample_;
  BandwidthSpec bandwidth_;
};

/// Repeated weighted evaluation of one estimate on one grid. The per-axis
/// kernel profiles of every sample point are cached when they fit in
/// `cache_bytes`, so each evaluation costs only the tensor-product sums.
class KernelGridEvaluator {
 public:
  KernelGridEvaluator(const KernelDensity& density, const GridSpec& grid,
                      std::size_t cache_bytes = std::size_t{256} << 20);
  ~KernelGridEvaluator();
  KernelGridEvaluator(KernelGridEvaluator&&) noexcept;
  KernelGridEvaluator& operator=(KernelGridEvaluator&&) noexcept;

  /// Throws Error(input) unless there is one nonnegative weight per sample
  /// point and the weights have a positive sum.
  DerivativeGrid evaluate(std::span<const double> weights) const;
  bool cached() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace curvebump
