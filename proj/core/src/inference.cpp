#include "curvebump/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "curvebump/error.hpp"
#include "curvebump/parallel.hpp"
#include "curvebump/random.hpp"

namespace curvebump {

void BootstrapPlan::validate() const {
  if (replicates < 2) throw Error(ErrorKind::configuration, "bootstrap needs at least 2 replicates");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorKind::configuration, "alpha must lie in (0, 1)");
  if (resample_size && *resample_size == 0)
    throw Error(ErrorKind::configuration, "resample size must be positive");
}

SecondOrderOperator SecondOrderOperator::partial(int i, int j) {
  if (i < 0 || j < 0 || i >= kMaxDimension || j >= kMaxDimension)
    throw Error(ErrorKind::configuration, "partial derivative index out of range");
  return SecondOrderOperator{false, std::min(i, j), std::max(i, j)};
}

std::string SecondOrderOperator::tag() const {
  if (is_laplacian) return "laplacian";
  return "D" + std::to_string(i + 1) + std::to_string(j + 1);
}

std::vector<SecondOrderOperator> hessian_operators(int d) {
  std::vector<SecondOrderOperator> out;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) out.push_back(SecondOrderOperator::partial(i, j));
  return out;
}

std::vector<std::size_t> bootstrap_indices(std::uint64_t seed, std::size_t b, std::size_t n,
                                           std::size_t resample_size) {
  Random rng(derive_seed(seed, b));
  std::vector<std::size_t> out(resample_size);
  for (std::size_t& index : out) index = static_cast<std::size_t>(rng.below(n));
  return out;
}

namespace {

double apply_operator(const DerivativeGrid& grid, std::size_t node, const SecondOrderOperator& op) {
  const int d = grid.dimension;
  const double* h = &grid.hessians[node * d * d];
  if (op.is_laplacian) {
    double trace = 0.0;
    for (int a = 0; a < d; ++a) trace += h[a * d + a];
    return trace;
  }
  return h[op.j * d + op.i];
}

}  // namespace

SupErrorMap bootstrap_sup_errors(const KernelDensity& estimate, const GridSpec& grid,
                                 const BootstrapPlan& plan,
                                 const std::vector<SecondOrderOperator>& operators) {
  plan.validate();
  const int d = estimate.dimension();
  for (const auto& op : operators)
    if (!op.is_laplacian && op.j >= d)
      throw Error(ErrorKind::configuration, "operator " + op.tag() + " exceeds the dimension");
  const std::size_t n = estimate.sample().size();
  const std::size_t m = plan.resample_size.value_or(n);
  const double work = static_cast<double>(plan.replicates) * static_cast<double>(grid.node_count()) *
                      static_cast<double>(m);
  if (work > kMaxBootstrapWork) {
    std::ostringstream msg;
    msg << "bootstrap work " << work << " exceeds the limit " << kMaxBootstrapWork
        << "; coarsen the grid or reduce the number of replicates";
    throw Error(ErrorKind::resource, msg.str());
  }

  const KernelGridEvaluator evaluator(estimate, grid);
  const DerivativeGrid base = evaluator.evaluate(std::vector<double>(n, 1.0));
  std::vector<std::vector<double>> sup(operators.size(), std::vector<double>(plan.replicates));
  parallel_for(plan.replicates, [&](std::size_t b) {
    std::vector<double> counts(n, 0.0);
    for (std::size_t index : bootstrap_indices(plan.seed, b, n, m)) counts[index] += 1.0;
    const DerivativeGrid replicate = evaluator.evaluate(counts);
    for (std::size_t o = 0; o < operators.size(); ++o) {
      double worst = 0.0;
      for (std::size_t k = 0; k < base.node_count(); ++k)
        worst = std::max(worst, std::abs(apply_operator(replicate, k, operators[o]) -
                                         apply_operator(base, k, operators[o])));
      sup[o][b] = worst;
    }
  });

  SupErrorMap out;
  for (std::size_t o = 0; o < operators.size(); ++o)
    out[operators[o]] = SupErrorSample{operators[o], std::move(sup[o])};
  return out;
}

double empirical_quantile(std::vector<double> errors, double p) {
  if (errors.empty()) throw Error(ErrorKind::undefined, "quantile of an empty sample");
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::configuration, "quantile level must lie in (0, 1)");
  std::sort(errors.begin(), errors.end());
  const double count = static_cast<double>(errors.size());
  // Guard against p * B landing a rounding error above an integer.
  auto rank = static_cast<std::size_t>(std::ceil(p * count - 1e-12 * count));
  rank = std::clamp<std::size_t>(rank, 1, errors.size());
  return errors[rank - 1];
}

double empirical_tvar(const std::vector<double>& errors, double p) {
  const double q = empirical_quantile(errors, p);
  double excess = 0.0;
  for (double e : errors) excess += std::max(e - q, 0.0);
  return q + excess / (static_cast<double>(errors.size()) * (1.0 - p));
}

std::string to_string(ConfidenceMargin::Method method) {
  switch (method) {
    case ConfidenceMargin::Method::quantile: return "quantile";
    case ConfidenceMargin::Method::tvar_sum: return "tvar-sum";
    case ConfidenceMargin::Method::tvar_sum_scaled: return "tvar-sum-scaled";
  }
  return "unknown";
}

ConfidenceMargin margin_laplacian(const SupErrorSample& errors, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorKind::configuration, "alpha must lie in (0, 1)");
  return ConfidenceMargin{empirical_quantile(errors.errors, 1.0 - alpha),
                          ConfidenceMargin::Method::quantile, alpha, errors.errors.size(), 1.0};
}

namespace {

double tvar_double_sum(const SupErrorMap& errors, int d, double alpha, std::size_t& replicates) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorKind::configuration, "alpha must lie in (0, 1)");
  double total = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto op = SecondOrderOperator::partial(i, j);
      const auto it = errors.find(op);
      if (it == errors.end())
        throw Error(ErrorKind::configuration, "missing bootstrap errors for " + op.tag());
      total += empirical_tvar(it->second.errors, 1.0 - alpha);
      replicates = it->second.errors.size();
    }
  return total;
}

}  // namespace

ConfidenceMargin margin_eigenvalue(const SupErrorMap& errors, int d, double alpha) {
  std::size_t replicates = 0;
  const double zeta = tvar_double_sum(errors, d, alpha, replicates);
  return ConfidenceMargin{zeta, ConfidenceMargin::Method::tvar_sum, alpha, replicates, 1.0};
}

double gaussian_margin_lower_bound(double h) { return 1.0 / (std::numbers::pi * std::pow(h, 4)); }

double default_gaussian_margin_scale(double h) { return 1.05 * gaussian_margin_lower_bound(h); }

ConfidenceMargin margin_gaussian(const SupErrorMap& errors, double alpha, double h, double c) {
  const double bound = gaussian_margin_lower_bound(h);
  if (!(c > bound)) {
    std::ostringstream msg;
    msg << "Gaussian-bump margin constant C = " << c << " must exceed 1/(pi h^4) = " << bound;
    throw Error(ErrorKind::constraint, msg.str());
  }
  std::size_t replicates = 0;
  const double zeta = c * tvar_double_sum(errors, 2, alpha, replicates);
  return ConfidenceMargin{zeta, ConfidenceMargin::Method::tvar_sum_scaled, alpha, replicates, c};
}

ConfidenceRegionPair confidence_regions(const ScalarFieldGrid& field,
                                        const ConfidenceMargin& margin) {
  if (!(margin.zeta >= 0.0)) throw Error(ErrorKind::input, "margin must be nonnegative");
  ConfidenceRegionPair out;
  out.zeta = margin.zeta;
  const std::size_t nodes = field.values.size();
  out.estimate_mask.resize(nodes);
  out.upper_mask.resize(nodes);
  out.lower_mask.resize(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    const double v = field.values[k];
    out.estimate_mask[k] = v >= 0.0;
    out.upper_mask[k] = v >= -margin.zeta;
    out.lower_mask[k] = v >= margin.zeta;
  }
  if (std::isfinite(margin.zeta)) {
    out.upper = extract_zero_level(field.shifted(margin.zeta));
    out.lower = extract_zero_level(field.shifted(-margin.zeta));
  } else {
    out.upper.dimension = out.lower.dimension = field.grid.dimension();
  }
  return out;
}

bool mask_subset(const std::vector<bool>& inner, const std::vector<bool>& outer) {
  if (inner.size() != outer.size()) return false;
  for (std::size_t k = 0; k < inner.size(); ++k)
    if (inner[k] && !outer[k]) return false;
  return true;
}

}  // namespace curvebump
