#include "curvebump/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "curvebump/error.hpp"
#include "curvebump/inference.hpp"
#include "curvebump/kde.hpp"
#include "curvebump/levelset.hpp"
#include "curvebump/parallel.hpp"
#include "curvebump/random.hpp"

namespace curvebump {

namespace {

constexpr int kDerivativeOrder = 2;

void summarize(ExperimentCell& cell, const std::vector<double>& values,
               const std::vector<bool>& ok) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r < values.size(); ++r)
    if (ok[r]) {
      sum += values[r];
      ++count;
      cell.values.push_back(values[r]);
    }
  cell.replicates = count;
  cell.failures = values.size() - count;
  cell.mean = count > 0 ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
  double ss = 0.0;
  for (double v : cell.values) ss += (v - cell.mean) * (v - cell.mean);
  cell.sd = count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

double normal_scale_factor(std::size_t n, int d, int r) {
  return std::pow(4.0 / ((d + 2.0 * r + 2.0) * static_cast<double>(n)),
                  1.0 / (d + 2.0 * r + 4.0));
}

GridSpec default_experiment_grid(int d, int nodes_per_axis) {
  return GridSpec::uniform(Vector::Constant(d, -4.0), Vector::Constant(d, 4.0), nodes_per_axis);
}

ExperimentReport run_convergence_experiment(const GaussianMixture& gmm, Functional functional,
                                            const ConvergenceOptions& options) {
  const int d = gmm.dimension();
  const CurvatureFieldSpec spec(functional);
  require_bump_semantics(spec, d);
  const GridSpec grid =
      options.grid.value_or(default_experiment_grid(d, d == 1 ? 801 : (d == 2 ? 161 : 41)));
  if (!(options.density_floor >= 0.0 && options.density_floor < 1.0))
    throw Error(ErrorKind::configuration, "density floor must lie in [0, 1)");
  const ScalarFieldGrid truth = evaluate_field(gmm, spec, grid);
  double peak = 0.0;
  for (std::size_t k = 0; k < grid.node_count(); ++k) peak = std::max(peak, gmm.value(grid.node(k)));
  const double floor = options.density_floor * peak;
  const auto restrict_to_theta = [&](std::vector<Vector> vertices) {
    if (floor > 0.0)
      std::erase_if(vertices, [&](const Vector& v) { return gmm.value(v) < floor; });
    return vertices;
  };
  const std::vector<Vector> truth_all = extract_zero_level(truth).vertices();
  const std::vector<Vector> truth_vertices = restrict_to_theta(truth_all);
  if (truth_vertices.empty())
    throw Error(ErrorKind::configuration, "true bump boundary is empty on the experiment grid");

  ExperimentReport report;
  report.experiment = "convergence";
  report.config["functional"] = std::string(to_string(functional));
  report.config["dimension"] = std::to_string(d);
  report.config["replicates"] = std::to_string(options.replicates);
  report.config["seed"] = std::to_string(options.seed);
  report.config["bandwidth_rule"] = "(log n / n)^(1/(d+2r+4)), r=2";
  std::ostringstream res;
  for (int a = 0; a < d; ++a) res << (a ? "x" : "") << grid.resolution()[a];
  report.config["grid"] = res.str();
  report.config["density_floor"] = format_double(options.density_floor);

  for (std::size_t c = 0; c < options.sample_sizes.size(); ++c) {
    const std::size_t n = options.sample_sizes[c];
    if (n < 2) throw Error(ErrorKind::configuration, "sample sizes must be at least 2");
    const double h = std::pow(std::log(static_cast<double>(n)) / static_cast<double>(n),
                              1.0 / (d + 2.0 * kDerivativeOrder + 4.0));
    ExperimentCell cell;
    cell.label = "n=" + std::to_string(n);
    cell.n = n;
    cell.bandwidth = h;
    for (std::size_t r = 0; r < options.replicates; ++r)
      cell.seeds.push_back(derive_seed(options.seed, n, r));

    std::vector<double> distances(options.replicates, 0.0);
    std::vector<double> unrestricted(options.replicates, 0.0);
    std::vector<bool> ok(options.replicates, false);
    parallel_for(options.replicates, [&](std::size_t r) {
      if (options.estimate_from_truth) {
        distances[r] = hausdorff_distance(truth_vertices, truth_vertices);
        unrestricted[r] = hausdorff_distance(truth_all, truth_all);
        ok[r] = true;
        return;
      }
      const KernelDensity estimate(sample_mixture(gmm, n, cell.seeds[r]), BandwidthSpec::fixed(h));
      const std::vector<Vector> all = extract_zero_level(evaluate_field(estimate, spec, grid)).vertices();
      const std::vector<Vector> vertices = restrict_to_theta(all);
      if (vertices.empty()) return;
      distances[r] = hausdorff_distance(truth_vertices, vertices);
      unrestricted[r] = hausdorff_distance(truth_all, all);
      ok[r] = true;
    });
    summarize(cell, distances, ok);
    double total = 0.0;
    for (std::size_t r = 0; r < options.replicates; ++r)
      if (ok[r]) total += unrestricted[r];
    cell.extra["mean_unrestricted"] =
        cell.replicates > 0 ? total / static_cast<double>(cell.replicates)
                            : std::numeric_limits<double>::quiet_NaN();
    report.cells.push_back(std::move(cell));
  }
  return report;
}

ExperimentReport run_coverage_experiment(const GaussianMixture& gmm, Functional functional,
                                         const CoverageOptions& options) {
  const int d = gmm.dimension();
  if (functional != Functional::laplacian && functional != Functional::concave &&
      functional != Functional::convex)
    throw Error(ErrorKind::unsupported,
                "coverage experiments support laplacian, concave and convex bumps");
  if (!(options.alpha > 0.0 && options.alpha < 1.0))
    throw Error(ErrorKind::configuration, "alpha must lie in (0, 1)");
  const CurvatureFieldSpec spec(functional);
  const GridSpec grid =
      options.grid.value_or(default_experiment_grid(d, d == 1 ? 401 : (d == 2 ? 101 : 31)));
  const double h = options.bandwidth.value_or(normal_scale_factor(options.n, d));
  const GaussianMixture smoothed = smoothed_mixture(gmm, h);
  const ScalarFieldGrid target = evaluate_field(smoothed, spec, grid);
  std::vector<bool> target_mask(target.values.size());
  for (std::size_t k = 0; k < target_mask.size(); ++k) target_mask[k] = target.values[k] >= 0.0;

  const std::vector<SecondOrderOperator> operators =
      functional == Functional::laplacian
          ? std::vector<SecondOrderOperator>{SecondOrderOperator::laplacian()}
          : hessian_operators(d);

  ExperimentReport report;
  report.experiment = "coverage";
  report.config["functional"] = std::string(to_string(functional));
  report.config["dimension"] = std::to_string(d);
  report.config["n"] = std::to_string(options.n);
  report.config["bandwidth"] = format_double(h);
  report.config["alpha"] = format_double(options.alpha);
  report.config["bootstrap"] = std::to_string(options.bootstrap);
  report.config["replicates"] = std::to_string(options.replicates);
  report.config["seed"] = std::to_string(options.seed);
  if (options.zeta_override) report.config["zeta_override"] = format_double(*options.zeta_override);

  ExperimentCell cell;
  cell.label = "n=" + std::to_string(options.n);
  cell.n = options.n;
  cell.bandwidth = h;
  for (std::size_t r = 0; r < options.replicates; ++r)
    cell.seeds.push_back(derive_seed(options.seed, options.n, r));

  std::vector<double> covered(options.replicates, 0.0);
  std::vector<double> zetas(options.replicates, 0.0);
  parallel_for(options.replicates, [&](std::size_t r) {
    const KernelDensity estimate(sample_mixture(gmm, options.n, cell.seeds[r]),
                                 BandwidthSpec::fixed(h));
    const ScalarFieldGrid field = evaluate_field(estimate, spec, grid);
    ConfidenceMargin margin;
    if (options.zeta_override) {
      margin.zeta = *options.zeta_override;
    } else {
      BootstrapPlan plan;
      plan.replicates = options.bootstrap;
      plan.alpha = options.alpha;
      plan.seed = derive_seed(cell.seeds[r], 0xb007);
      const SupErrorMap errors = bootstrap_sup_errors(estimate, grid, plan, operators);
      if (functional == Functional::laplacian)
        margin = margin_laplacian(errors.begin()->second, options.alpha);
      else
        margin = margin_eigenvalue(errors, d, options.alpha);
    }
    zetas[r] = margin.zeta;
    // lower <= target <= upper, node by node
    bool ok = true;
    for (std::size_t k = 0; k < field.values.size() && ok; ++k) {
      const double v = field.values[k];
      if (v >= margin.zeta && !target_mask[k]) ok = false;
      if (target_mask[k] && !(v >= -margin.zeta)) ok = false;
    }
    covered[r] = ok ? 1.0 : 0.0;
  });

  summarize(cell, covered, std::vector<bool>(options.replicates, true));
  double zsum = 0.0;
  for (double z : zetas) zsum += z;
  const double zmean = zsum / static_cast<double>(zetas.size());
  double zss = 0.0;
  for (double z : zetas) zss += (z - zmean) * (z - zmean);
  cell.extra["zeta_mean"] = zmean;
  cell.extra["zeta_sd"] = zetas.size() > 1 ? std::sqrt(zss / static_cast<double>(zetas.size() - 1)) : 0.0;
  report.cells.push_back(std::move(cell));
  return report;
}

}  // namespace curvebump
