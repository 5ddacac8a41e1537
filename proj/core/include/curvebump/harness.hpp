#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvebump/curvature.hpp"
#include "curvebump/grid.hpp"
#include "curvebump/mixture.hpp"

namespace curvebump {

/// Summary statistics for one experiment cell.
struct ExperimentCell {
  std::string label;
  std::size_t n = 0;
  double bandwidth = 0.0;
  double mean = 0.0;  // mean Hausdorff distance, or coverage fraction
  double sd = 0.0;
  std::size_t replicates = 0;  // successful replicates behind mean/sd
  std::size_t failures = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> values;  // per-replicate values
  std::map<std::string, double> extra;
};

struct ExperimentReport {
  std::string experiment;
  std::map<std::string, std::string> config;
  std::vector<ExperimentCell> cells;
};

struct ConvergenceOptions {
  std::vector<std::size_t> sample_sizes{500, 2000, 8000};
  std::size_t replicates = 20;
  std::uint64_t seed = 1;
  std::optional<GridSpec> grid;  // defaults to [-4, 4]^d with 161 nodes (d=2)
  bool estimate_from_truth = false;  // test hook: use the true model as estimate
  /// Boundaries are compared on Theta = {x : f(x) >= floor * max f over the
  /// grid}; 0 compares them on the whole grid.
  double density_floor = 0.01;
};

/// Hausdorff distance between the true and estimated bump boundaries for
/// each n, with h = (log n / n)^(1 / (d + 8)). Both boundaries are extracted
/// on the same grid and restricted to the region where the true density is
/// at least density_floor times its grid maximum. A replicate whose
/// restricted estimated boundary is empty counts as a failure. The extra
/// column "mean_unrestricted" holds the mean distance over the whole grid.
ExperimentReport run_convergence_experiment(const GaussianMixture& gmm, Functional functional,
                                            const ConvergenceOptions& options);

struct CoverageOptions {
  std::size_t n = 400;
  std::optional<double> bandwidth;  // defaults to the normal-scale rule at unit scale
  double alpha = 0.1;
  std::size_t bootstrap = 200;
  std::size_t replicates = 200;
  std::uint64_t seed = 1;
  std::optional<GridSpec> grid;
  std::optional<double> zeta_override;  // test hook
};

/// Fraction of replicates where the lower region, the target and the upper
/// region are nested node sets; the target is the bump of the analytic
/// smoothed mixture. Extra columns carry the mean and sd of the margin.
ExperimentReport run_coverage_experiment(const GaussianMixture& gmm, Functional functional,
                                         const CoverageOptions& options);

/// Normal-scale bandwidth formula evaluated at unit scale.
double normal_scale_factor(std::size_t n, int d, int r = 2);

/// Default square window [-4, 4]^d with the given nodes per axis.
GridSpec default_experiment_grid(int d, int nodes_per_axis);

}  // namespace curvebump
