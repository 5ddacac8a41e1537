#include "curvebump/harness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "curvebump/error.hpp"
#include "curvebump/levelset.hpp"
#include "curvebump/mixture.hpp"
#include "curvebump/random.hpp"
#include "support/oracles.hpp"

namespace curvebump {
namespace {

TEST(Mixture, Validation) {
  EXPECT_THROW(GaussianMixture({0.6, 0.6}, {Vector::Zero(1), Vector::Zero(1)},
                               {Matrix::Identity(1, 1), Matrix::Identity(1, 1)}),
               Error);
  Matrix singular(2, 2);
  singular << 1, 1, 1, 1;
  try {
    GaussianMixture({1.0}, {Vector::Zero(2)}, {singular});
    FAIL() << "singular covariance accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::model);
  }
}

TEST(Mixture, ZeroWeightComponentIsIgnored) {
  Vector far(1);
  far << 50.0;
  const GaussianMixture gmm({1.0, 0.0}, {Vector::Zero(1), far},
                            {Matrix::Identity(1, 1), Matrix::Identity(1, 1)});
  const GaussianMixture ref = GaussianMixture::standard_normal(1);
  for (double x : {-2.0, 0.0, 0.7, 50.0}) {
    const Vector p = Vector::Constant(1, x);
    EXPECT_EQ(gmm.value(p), ref.value(p));
  }
  const SampleMatrix s = sample_mixture(gmm, 2000, 5);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_LT(std::abs(s.at(i, 0)), 10.0);
}

TEST(Mixture, DerivativesMatchFiniteDifferences) {
  const GaussianMixture gmm = boomerang_mixture();
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = testing::random_point(rng, 2, 2.5);
    const Derivatives got = gmm.derivatives(x);
    const auto f = [&](const Vector& y) { return gmm.value(y); };
    const Vector g = testing::fd_gradient(f, x);
    const Matrix hess = testing::fd_hessian(f, x);
    EXPECT_NEAR(got.value, gmm.value(x), 1e-16);
    for (int i = 0; i < 2; ++i) {
      EXPECT_NEAR(got.gradient[i], g[i], 1e-8);
      for (int j = 0; j < 2; ++j) EXPECT_NEAR(got.hessian(i, j), hess(i, j), 1e-6);
    }
  }
}

TEST(Mixture, BoomerangValuesMatchReference) {
  const Derivatives o = boomerang_mixture().derivatives(Vector::Zero(2));
  EXPECT_NEAR(o.value, 0.024548926747124288, 1e-15);
  EXPECT_NEAR(o.gradient[0], 0.0, 1e-15);
  EXPECT_NEAR(o.hessian(0, 0), 0.16422581, 1e-7);
  EXPECT_NEAR(o.hessian(1, 1), 0.05592172, 1e-7);
  EXPECT_NEAR(o.hessian(0, 1), 0.0, 1e-15);
}

TEST(Mixture, SampleMomentsMatch) {
  const GaussianMixture gmm = boomerang_mixture();
  const SampleMatrix s = sample_mixture(gmm, 100000, 11);
  Vector mean = Vector::Zero(2);
  for (std::size_t i = 0; i < s.size(); ++i) mean += s.point(i);
  mean /= static_cast<double>(s.size());
  EXPECT_NEAR(mean[0], 0.0, 0.02);
  EXPECT_NEAR(mean[1], 0.0, 0.02);
  // Var x = 1 + 1.5^2, var y = 1, cov = 0 by symmetry.
  const Vector var = s.coordinate_variances();
  EXPECT_NEAR(var[0], 3.25, 0.05);
  EXPECT_NEAR(var[1], 1.0, 0.02);
  const SampleMatrix again = sample_mixture(gmm, 100, 11);
  for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(again.at(i, 1), s.at(i, 1));
}

TEST(Mixture, SmoothedMixtureIsTheConvolution) {
  const GaussianMixture gmm = boomerang_mixture();
  const double h = 0.6;
  const GaussianMixture smooth = smoothed_mixture(gmm, h);
  // E_X[K_h(x - X)] by Monte Carlo.
  const SampleMatrix s = sample_mixture(gmm, 1000000, 13);
  for (const auto& xy : {std::array<double, 2>{0.0, 0.0}, std::array<double, 2>{1.5, 0.5}}) {
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double u0 = (xy[0] - s.at(i, 0)) / h;
      const double u1 = (xy[1] - s.at(i, 1)) / h;
      sum += std::exp(-0.5 * (u0 * u0 + u1 * u1));
    }
    const double mc = sum / (2.0 * std::numbers::pi * h * h * static_cast<double>(s.size()));
    Vector x(2);
    x << xy[0], xy[1];
    EXPECT_NEAR(smooth.value(x), mc, 0.01 * smooth.value(x));
  }
}

TEST(Random, StreamsAreReproducible) {
  Random a(9), b(9);
  for (int k = 0; k < 100; ++k) {
    EXPECT_EQ(a.uniform(), b.uniform());
    EXPECT_EQ(a.normal(), b.normal());
  }
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
  Random c(17);
  for (int k = 0; k < 1000; ++k) {
    EXPECT_LT(c.below(7), 7u);
    const double u = c.uniform_open_left();
    EXPECT_GT(u, 0.0);
    EXPECT_LE(u, 1.0);
  }
}

TEST(Convergence, TruthAsEstimateGivesZeroDistance) {
  ConvergenceOptions options;
  options.sample_sizes = {100, 400};
  options.replicates = 3;
  options.estimate_from_truth = true;
  options.grid = default_experiment_grid(2, 61);
  const auto report = run_convergence_experiment(boomerang_mixture(), Functional::laplacian, options);
  ASSERT_EQ(report.cells.size(), 2u);
  for (const auto& cell : report.cells) {
    EXPECT_EQ(cell.mean, 0.0);
    EXPECT_EQ(cell.failures, 0u);
  }
}

TEST(Convergence, SmallRunIsDeterministic) {
  ConvergenceOptions options;
  options.sample_sizes = {300};
  options.replicates = 3;
  options.grid = default_experiment_grid(2, 41);
  const auto a = run_convergence_experiment(boomerang_mixture(), Functional::laplacian, options);
  const auto b = run_convergence_experiment(boomerang_mixture(), Functional::laplacian, options);
  EXPECT_EQ(a.cells[0].values, b.cells[0].values);
  EXPECT_GT(a.cells[0].mean, 0.0);
  EXPECT_NEAR(a.cells[0].bandwidth, std::pow(std::log(300.0) / 300.0, 0.1), 1e-15);
}

TEST(Convergence, DensityFloorOnlyDropsTailVertices) {
  ConvergenceOptions options;
  options.sample_sizes = {400};
  options.replicates = 4;
  options.grid = default_experiment_grid(2, 61);
  options.density_floor = 0.0;
  const auto whole = run_convergence_experiment(boomerang_mixture(), Functional::laplacian, options);
  EXPECT_EQ(whole.cells[0].mean, whole.cells[0].extra.at("mean_unrestricted"));
  options.density_floor = 0.01;
  const auto theta = run_convergence_experiment(boomerang_mixture(), Functional::laplacian, options);
  EXPECT_EQ(theta.cells[0].extra.at("mean_unrestricted"), whole.cells[0].mean);
  EXPECT_LE(theta.cells[0].mean, whole.cells[0].mean + 1e-12);
  options.density_floor = 1.0;
  EXPECT_THROW(run_convergence_experiment(boomerang_mixture(), Functional::laplacian, options), Error);
}

TEST(Mixture, SmoothingLowersThePeak) {
  const GaussianMixture gmm = boomerang_mixture();
  const GaussianMixture smooth = smoothed_mixture(gmm, 0.5);
  const GridSpec grid = default_experiment_grid(2, 81);
  double peak = 0.0, smooth_peak = 0.0;
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    peak = std::max(peak, gmm.value(grid.node(k)));
    smooth_peak = std::max(smooth_peak, smooth.value(grid.node(k)));
  }
  EXPECT_LT(smooth_peak, peak);
  const GaussianMixture unit = smoothed_mixture(GaussianMixture::standard_normal(2), 1.0);
  EXPECT_NEAR(unit.covariances()[0](0, 0), 2.0, 1e-15);
  EXPECT_NEAR(unit.covariances()[0](0, 1), 0.0, 1e-15);
}

TEST(Coverage, MarginOverridesBracketCoverage) {
  CoverageOptions options;
  options.n = 200;
  options.replicates = 10;
  options.grid = default_experiment_grid(1, 201);
  options.zeta_override = std::numeric_limits<double>::infinity();
  const auto gauss = GaussianMixture::standard_normal(1);
  EXPECT_EQ(run_coverage_experiment(gauss, Functional::laplacian, options).cells[0].mean, 1.0);
  options.zeta_override = 0.0;
  EXPECT_LE(run_coverage_experiment(gauss, Functional::laplacian, options).cells[0].mean, 0.1);
}

TEST(Coverage, RejectsUnsupportedFunctionals) {
  CoverageOptions options;
  options.replicates = 1;
  EXPECT_THROW(run_coverage_experiment(boomerang_mixture(), Functional::mean_curvature, options), Error);
}

}  // namespace
}  // namespace curvebump
