#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvebump/kde.hpp"
#include "curvebump/levelset.hpp"

namespace curvebump {

/// Upper bound on B * grid nodes * resample size for one bootstrap run.
inline constexpr double kMaxBootstrapWork = 1e12;

struct BootstrapPlan {
  std::size_t replicates = 200;             // B
  std::optional<std::size_t> resample_size;  // defaults to n
  double alpha = 0.1;
  std::uint64_t seed = 0;

  /// Throws Error(configuration) unless B >= 2, alpha in (0,1) and any
  /// resample size is positive.
  void validate() const;
};

/// Second-order differential operator: the Laplacian or a partial D_ij.
struct SecondOrderOperator {
  bool is_laplacian = true;
  int i = 0;  // 0-based; i <= j for partials
  int j = 0;

  static SecondOrderOperator laplacian() { return {}; }
  static SecondOrderOperator partial(int i, int j);

  /// "laplacian" or "D11", "D12", ... (1-based indices).
  std::string tag() const;
  auto operator<=>(const SecondOrderOperator&) const = default;
};

/// All D_ij with i <= j in dimension d.
std::vector<SecondOrderOperator> hessian_operators(int d);

/// Bootstrap sup-norm errors for one operator, in replicate order.
struct SupErrorSample {
  SecondOrderOperator op;
  std::vector<double> errors;
};

using SupErrorMap = std::map<SecondOrderOperator, SupErrorSample>;

/// Indices of bootstrap replicate b: resample_size uniform draws with
/// replacement from [0, n), determined by (seed, b) alone.
std::vector<std::size_t> bootstrap_indices(std::uint64_t seed, std::size_t b, std::size_t n,
                                           std::size_t resample_size);

/// For each replicate, resample once and record sup over grid nodes of
/// |D f*_b - D f| for every requested operator. Replicates are shared across
/// operators. Throws Error(resource) when the work exceeds kMaxBootstrapWork.
SupErrorMap bootstrap_sup_errors(const KernelDensity& estimate, const GridSpec& grid,
                                 const BootstrapPlan& plan,
                                 const std::vector<SecondOrderOperator>& operators);

/// Left-continuous empirical quantile: the ceil(p B)-th order statistic.
double empirical_quantile(std::vector<double> errors, double p);

/// q + mean((X - q)+) / (1 - p) on the empirical law, with q the empirical
/// p-quantile. Never below the quantile.
double empirical_tvar(const std::vector<double>& errors, double p);

struct ConfidenceMargin {
  enum class Method { quantile, tvar_sum, tvar_sum_scaled };

  double zeta = 0.0;
  Method method = Method::quantile;
  double alpha = 0.1;
  std::size_t replicates = 0;
  double scale = 1.0;  // C for tvar_sum_scaled
};

std::string to_string(ConfidenceMargin::Method method);

/// zeta = (1 - alpha) quantile of the Laplacian errors.
ConfidenceMargin margin_laplacian(const SupErrorSample& errors, double alpha);

/// zeta = sum over all i, j of TVaR_{1-alpha}(D_ij errors); D_ij = D_ji so the
/// off-diagonal terms count twice. Throws Error(configuration) if a pair is
/// missing.
ConfidenceMargin margin_eigenvalue(const SupErrorMap& errors, int d, double alpha);

/// Smallest admissible scale for the Gaussian-bump margin is strictly above
/// 1 / (pi h^4).
double gaussian_margin_lower_bound(double h);
/// 1.05 / (pi h^4).
double default_gaussian_margin_scale(double h);

/// zeta = C * sum over i, j in {1,2} of TVaR_{1-alpha}(D_ij errors).
/// Throws Error(constraint) when C <= 1 / (pi h^4).
ConfidenceMargin margin_gaussian(const SupErrorMap& errors, double alpha, double h, double c);

struct ConfidenceRegionPair {
  std::vector<bool> estimate_mask;  // field >= 0
  std::vector<bool> upper_mask;     // field >= -zeta
  std::vector<bool> lower_mask;     // field >= +zeta
  BoundaryGeometry upper;
  BoundaryGeometry lower;
  double zeta = 0.0;
};

/// Sandwich regions around the bump of a sign-folded field.
ConfidenceRegionPair confidence_regions(const ScalarFieldGrid& field,
                                        const ConfidenceMargin& margin);

/// True when every node of `inner` is also set in `outer`.
bool mask_subset(const std::vector<bool>& inner, const std::vector<bool>& outer);

}  // namespace curvebump
