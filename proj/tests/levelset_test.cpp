#include "curvebump/levelset.hpp"

#include <gtest/gtest.h>

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "curvebump/error.hpp"
#include "curvebump/mixture.hpp"
#include "support/oracles.hpp"

namespace curvebump {
namespace {

GridSpec square(int d, double half_width, int nodes) {
  return GridSpec::uniform(Vector::Constant(d, -half_width), Vector::Constant(d, half_width), nodes);
}

class ConstantCurvatureModel final : public DensityModel {
 public:
  ConstantCurvatureModel(int d, double diagonal) : d_(d), diagonal_(diagonal) {}
  int dimension() const noexcept override { return d_; }
  Derivatives derivatives(const Vector&) const override {
    return {1.0, Vector::Zero(d_), Matrix::Identity(d_, d_) * diagonal_};
  }

 private:
  int d_;
  double diagonal_;
};

TEST(Grid, IndexingRoundTripsAndValidates) {
  const GridSpec grid(Vector::Constant(3, 0.0), Vector::Constant(3, 1.0), {3, 4, 5});
  EXPECT_EQ(grid.node_count(), 60u);
  for (std::size_t k = 0; k < grid.node_count(); ++k) EXPECT_EQ(grid.flat_index(grid.multi_index(k)), k);
  EXPECT_EQ(grid.multi_index(1)[2], 1);  // last axis varies fastest
  EXPECT_DOUBLE_EQ(grid.coordinate(1, 3), 1.0);
  EXPECT_THROW(GridSpec(Vector::Constant(1, 1.0), Vector::Constant(1, 0.0), {5}), Error);
  EXPECT_THROW(GridSpec(Vector::Constant(1, 0.0), Vector::Constant(1, 1.0), {1}), Error);
  EXPECT_THROW(GridSpec::uniform(Vector::Constant(3, 0.0), Vector::Constant(3, 1.0), 500), Error);
}

TEST(EvaluateField, ConstantSurrogateIsSignFolded) {
  const ConstantCurvatureModel model(2, 0.5);
  const GridSpec grid = square(2, 1.0, 5);
  const auto concave = evaluate_field(model, CurvatureFieldSpec(Functional::concave), grid);
  for (double v : concave.values) EXPECT_EQ(v, -0.5);
  const auto convex = evaluate_field(model, CurvatureFieldSpec(Functional::convex), grid);
  for (double v : convex.values) EXPECT_EQ(v, 0.5);
}

TEST(EvaluateField, ModeOfStandardGaussianLiesInConcaveBump) {
  const GaussianMixture gauss = GaussianMixture::standard_normal(2);
  const GridSpec grid = square(2, 2.0, 5);
  const auto field = evaluate_field(gauss, CurvatureFieldSpec(Functional::concave), grid);
  EXPECT_NEAR(field.values[grid.flat_index({2, 2, 0})], 1.0 / (2.0 * std::numbers::pi), 1e-15);
}

TEST(EvaluateField, BoomerangLaplacianMatchesDirectEvaluation) {
  const GaussianMixture gmm = boomerang_mixture();
  const GridSpec grid = square(2, 4.0, 161);
  const CurvatureFieldSpec spec(Functional::laplacian);
  const auto field = evaluate_field(gmm, spec, grid);
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<std::size_t> pick(0, grid.node_count() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = pick(rng);
    EXPECT_EQ(field.values[k], -eval_functional(gmm, spec, grid.node(k)));
  }
  EXPECT_THROW(evaluate_field(gmm, spec, square(1, 1.0, 5)), Error);
}

TEST(Extract1d, GaussianInflectionPoints) {
  const GaussianMixture gauss = GaussianMixture::standard_normal(1);
  const auto field = evaluate_field(gauss, CurvatureFieldSpec(Functional::concave), square(1, 4.0, 161));
  const auto roots = extract_zero_level_1d(field);
  ASSERT_EQ(roots.points.size(), 2u);
  EXPECT_NEAR(roots.points[0], -1.0, 1e-8);
  EXPECT_NEAR(roots.points[1], 1.0, 1e-8);
}

TEST(Extract1d, PositiveFieldHasNoRoots) {
  const auto field = sample_function(square(1, 1.0, 11), [](const Vector&) { return 1.0; });
  EXPECT_TRUE(extract_zero_level_1d(field).empty());
}

TEST(Extract1d, CubicRoots) {
  const auto field =
      sample_function(square(1, 2.0, 401), [](const Vector& x) { return x[0] * x[0] * x[0] - x[0]; });
  const auto roots = extract_zero_level_1d(field);
  ASSERT_EQ(roots.points.size(), 3u);
  EXPECT_NEAR(roots.points[0], -1.0, 1e-8);
  EXPECT_NEAR(roots.points[1], 0.0, 1e-8);
  EXPECT_NEAR(roots.points[2], 1.0, 1e-8);
  // Off-node roots go through bisection.
  const auto shifted = sample_function(square(1, 2.0, 400),
                                       [](const Vector& x) { return x[0] * x[0] * x[0] - x[0]; });
  const auto r2 = extract_zero_level_1d(shifted);
  ASSERT_EQ(r2.points.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r2.points[i], i - 1.0, 1e-8);
}

TEST(Extract2d, UnitCircle) {
  const GridSpec grid = square(2, 2.0, 201);
  const auto field =
      sample_function(grid, [](const Vector& x) { return 1.0 - x.squaredNorm(); });
  const auto boundary = extract_zero_level_2d(field);
  ASSERT_EQ(boundary.polylines.size(), 1u);
  EXPECT_TRUE(boundary.polylines[0].closed);
  EXPECT_EQ(boundary.polylines[0].vertices.front(), boundary.polylines[0].vertices.back());
  for (const auto& v : boundary.polylines[0].vertices)
    EXPECT_NEAR(std::hypot(v[0], v[1]), 1.0, 0.02);
}

TEST(Extract2d, ConstantFieldIsEmpty) {
  const auto field = sample_function(square(2, 1.0, 21), [](const Vector&) { return 1.0; });
  EXPECT_TRUE(extract_zero_level_2d(field).empty());
}

TEST(Extract2d, LinearFieldIsExact) {
  for (int nodes : {41, 40}) {
    const auto field = sample_function(square(2, 2.0, nodes), [](const Vector& x) { return x[0]; });
    const auto boundary = extract_zero_level_2d(field);
    ASSERT_EQ(boundary.polylines.size(), 1u);
    EXPECT_FALSE(boundary.polylines[0].closed);
    EXPECT_EQ(static_cast<int>(boundary.polylines[0].vertices.size()), nodes);
    for (const auto& v : boundary.polylines[0].vertices) EXPECT_NEAR(v[0], 0.0, 1e-12);
  }
}

TEST(Extract2d, SaddleCellsFollowTheCenterSample) {
  // x*y has a saddle at the origin; with a center sample > 0 the positive
  // quadrants join through the center cell.
  const GridSpec grid = square(2, 1.0, 2);
  ScalarFieldGrid field = sample_function(grid, [](const Vector& x) { return x[0] * x[1]; });
  field.sampler = [](const Vector&) { return 1.0; };
  auto joined = extract_zero_level_2d(field);
  ASSERT_EQ(joined.polylines.size(), 2u);
  // Corners (+,-) and (-,+) are cut off: each segment stays in one of those quadrants.
  for (const auto& line : joined.polylines) {
    const auto& a = line.vertices.front();
    const auto& b = line.vertices.back();
    EXPECT_LT((a[0] + b[0]) * (a[1] + b[1]), 0.0);
  }
  field.sampler = [](const Vector&) { return -1.0; };
  auto split = extract_zero_level_2d(field);
  ASSERT_EQ(split.polylines.size(), 2u);
  for (const auto& line : split.polylines) {
    const auto& a = line.vertices.front();
    const auto& b = line.vertices.back();
    EXPECT_GT((a[0] + b[0]) * (a[1] + b[1]), 0.0);
  }
}

TEST(Extract3d, UnitSphere) {
  const GridSpec grid = square(3, 2.0, 101);
  const auto field = sample_function(grid, [](const Vector& x) { return 1.0 - x.squaredNorm(); });
  const auto boundary = extract_zero_level_3d(field);
  ASSERT_FALSE(boundary.mesh.triangles.empty());
  for (const auto& v : boundary.mesh.vertices)
    EXPECT_NEAR(std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]), 1.0, 0.04);
  EXPECT_EQ(boundary.mesh.euler_characteristic(), 2);
  for (const auto& t : boundary.mesh.triangles)
    for (int s = 0; s < 3; ++s) {
      ASSERT_GE(t[s], 0);
      ASSERT_LT(t[s], static_cast<int>(boundary.mesh.vertices.size()));
    }
}

TEST(Extract3d, NormalsPointTowardIncreasingField) {
  const GridSpec grid = square(3, 2.0, 31);
  const auto field = sample_function(grid, [](const Vector& x) { return 1.0 - x.squaredNorm(); });
  const auto& mesh = extract_zero_level_3d(field).mesh;
  for (const auto& t : mesh.triangles) {
    Eigen::Vector3d p[3];
    for (int s = 0; s < 3; ++s)
      p[s] = Eigen::Vector3d(mesh.vertices[t[s]][0], mesh.vertices[t[s]][1], mesh.vertices[t[s]][2]);
    const Eigen::Vector3d normal = (p[1] - p[0]).cross(p[2] - p[0]);
    const Eigen::Vector3d centroid = (p[0] + p[1] + p[2]) / 3.0;
    EXPECT_LT(normal.dot(centroid), 0.0);  // field increases toward the center
  }
}

TEST(Extract3d, ConstantAndLinearFields) {
  const GridSpec grid = square(3, 1.0, 11);
  EXPECT_TRUE(extract_zero_level_3d(sample_function(grid, [](const Vector&) { return -2.0; })).empty());
  const auto plane = extract_zero_level_3d(sample_function(grid, [](const Vector& x) { return x[2]; }));
  ASSERT_FALSE(plane.mesh.triangles.empty());
  for (const auto& v : plane.mesh.vertices) EXPECT_LE(std::abs(v[2]), 1e-12);
  const auto offset = extract_zero_level_3d(
      sample_function(GridSpec::uniform(Vector::Constant(3, -1.0), Vector::Constant(3, 1.0), 10),
                      [](const Vector& x) { return x[2]; }));
  for (const auto& v : offset.mesh.vertices) EXPECT_LE(std::abs(v[2]), 1e-12);
}

TEST(Extract, VerticesSitNearTheTrueLevelSet) {
  const GaussianMixture gmm = boomerang_mixture();
  const CurvatureFieldSpec spec(Functional::laplacian);
  const GridSpec grid = square(2, 4.0, 81);
  const auto field = evaluate_field(gmm, spec, grid);
  double max_gap = 0.0;
  for (int i = 0; i + 1 < 81; ++i)
    for (int j = 0; j + 1 < 81; ++j) {
      const double a = field.values[grid.flat_index({i, j, 0})];
      const double b = field.values[grid.flat_index({i + 1, j, 0})];
      const double c = field.values[grid.flat_index({i, j + 1, 0})];
      max_gap = std::max({max_gap, std::abs(a - b), std::abs(a - c)});
    }
  for (const Vector& v : extract_zero_level(field).vertices())
    EXPECT_LE(std::abs(field.sampler(v)), 10.0 * max_gap);
}

TEST(Extract, RefinementDoesNotDegradeCircle) {
  auto distance = [](int nodes) {
    const auto field = sample_function(square(2, 2.0, nodes), [](const Vector& x) { return 1.0 - x.squaredNorm(); });
    double worst = 0.0;
    for (const Vector& v : extract_zero_level(field).vertices()) worst = std::max(worst, std::abs(v.norm() - 1.0));
    return worst;
  };
  EXPECT_LE(distance(161), 1.1 * distance(81));
  EXPECT_LE(distance(321), 1.1 * distance(161));
}

TEST(ConnectedComponents, CountsBlobs) {
  const GridSpec grid = square(2, 3.0, 61);
  EXPECT_EQ(connected_components(sample_function(grid, [](const Vector&) { return -1.0; })).count, 0);
  const auto two = sample_function(grid, [](const Vector& x) {
    return std::max(0.5 - std::hypot(x[0] - 1.5, x[1]), 0.5 - std::hypot(x[0] + 1.5, x[1]));
  });
  const auto labels = connected_components(two);
  EXPECT_EQ(labels.count, 2);
  EXPECT_EQ(labels.labels[grid.flat_index({0, 0, 0})], -1);
}

TEST(ConnectedComponents, DiagonalNeighboursAreSeparate) {
  const GridSpec grid = square(2, 1.0, 3);
  std::vector<bool> mask(9, false);
  mask[0] = mask[4] = mask[8] = true;
  EXPECT_EQ(connected_components(grid, mask).count, 3);
}

TEST(ConnectedComponents, BoomerangConcaveMaskHasThreeParts) {
  // Two modal lobes and the central mouth; frozen from a scipy dense-grid
  // flood fill at 161^2, 321^2 and 641^2.
  const GaussianMixture gmm = boomerang_mixture();
  const auto field = evaluate_field(gmm, CurvatureFieldSpec(Functional::concave), square(2, 4.0, 321));
  EXPECT_EQ(connected_components(field).count, 3);
}

TEST(Hausdorff, Basics) {
  std::vector<Vector> a{Vector::Zero(2)};
  Vector p(2);
  p << 3, 4;
  std::vector<Vector> b{p};
  EXPECT_DOUBLE_EQ(hausdorff_distance(a, b), 5.0);
  EXPECT_EQ(hausdorff_distance(a, a), 0.0);
  try {
    hausdorff_distance(a, std::vector<Vector>{});
    FAIL() << "empty set accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::undefined);
  }
}

TEST(Hausdorff, MatchesBruteForceAndIsAMetric) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 3;
    std::vector<Vector> a, b, c;
    for (int k = 0; k < 50; ++k) {
      a.push_back(testing::random_point(rng, d, 2.0));
      b.push_back(testing::random_point(rng, d, 2.0));
      c.push_back(testing::random_point(rng, d, 3.0));
    }
    const double ab = hausdorff_distance(a, b);
    EXPECT_EQ(ab, testing::brute_hausdorff(a, b));
    EXPECT_EQ(ab, hausdorff_distance(b, a));
    EXPECT_LE(ab, hausdorff_distance(a, c) + hausdorff_distance(c, b) + 1e-12);
  }
}

}  // namespace
}  // namespace curvebump
