#include "curvebump/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/LU>

#include "curvebump/error.hpp"

namespace curvebump {

std::string_view to_string(Functional functional) noexcept {
  switch (functional) {
    case Functional::concave: return "concave";
    case Functional::convex: return "convex";
    case Functional::laplacian: return "laplacian";
    case Functional::mean_curvature: return "mean-curvature";
    case Functional::hessian_determinant: return "hessian-determinant";
    case Functional::gaussian_curvature: return "gaussian-curvature";
  }
  return "unknown";
}

Functional parse_functional(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "concave" || key == "concave-lambda1") return Functional::concave;
  if (key == "convex" || key == "convex-lambdad") return Functional::convex;
  if (key == "laplacian") return Functional::laplacian;
  if (key == "mean-curvature") return Functional::mean_curvature;
  if (key == "hessian-determinant" || key == "determinant") return Functional::hessian_determinant;
  if (key == "gaussian-curvature") return Functional::gaussian_curvature;
  throw Error(ErrorKind::configuration, "unknown functional '" + std::string(name) + "'");
}

void require_bump_semantics(const CurvatureFieldSpec& spec, int d) {
  if (d < 1 || d > kMaxDimension)
    throw Error(ErrorKind::configuration, "dimension must be 1, 2 or 3");
  const Functional f = spec.functional();
  if ((f == Functional::hessian_determinant || f == Functional::gaussian_curvature) && d != 2)
    throw Error(ErrorKind::configuration,
                std::string(to_string(f)) + " bumps are defined only in dimension 2");
}

OrderedEigenvalues ordered_eigenvalues(const Matrix& h) {
  const int d = static_cast<int>(h.rows());
  if (d < 1 || d > 3 || h.cols() != d)
    throw Error(ErrorKind::input, "eigenvalues need a square matrix of order 1, 2 or 3");
  for (int r = 0; r < d; ++r)
    for (int c = r + 1; c < d; ++c)
      if (std::abs(h(r, c) - h(c, r)) > 1e-9)
        throw Error(ErrorKind::input, "matrix is not symmetric");

  OrderedEigenvalues out;
  out.size = d;
  if (d == 1) {
    out.values[0] = h(0, 0);
    return out;
  }
  if (d == 2) {
    const double b = 0.5 * (h(0, 1) + h(1, 0));
    const double mean = 0.5 * (h(0, 0) + h(1, 1));
    const double radius = std::hypot(0.5 * (h(0, 0) - h(1, 1)), b);
    out.values[0] = mean + radius;
    out.values[1] = mean - radius;
    return out;
  }

  const double a01 = 0.5 * (h(0, 1) + h(1, 0));
  const double a02 = 0.5 * (h(0, 2) + h(2, 0));
  const double a12 = 0.5 * (h(1, 2) + h(2, 1));
  const double off = a01 * a01 + a02 * a02 + a12 * a12;
  if (off == 0.0) {
    out.values = {h(0, 0), h(1, 1), h(2, 2)};
  } else {
    // Trigonometric solution of the depressed characteristic cubic.
    const double q = (h(0, 0) + h(1, 1) + h(2, 2)) / 3.0;
    const double d0 = h(0, 0) - q, d1 = h(1, 1) - q, d2 = h(2, 2) - q;
    const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off) / 6.0);
    const double b00 = d0 / p, b11 = d1 / p, b22 = d2 / p;
    const double b01 = a01 / p, b02 = a02 / p, b12 = a12 / p;
    const double det_b = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
                         b02 * (b01 * b12 - b11 * b02);
    const double r = std::clamp(0.5 * det_b, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double l1 = q + 2.0 * p * std::cos(phi);
    const double l3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    out.values = {l1, 3.0 * q - l1 - l3, l3};
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

double functional_value(const Derivatives& der, Functional functional) {
  const Matrix& h = der.hessian;
  switch (functional) {
    case Functional::concave:
      return ordered_eigenvalues(h).largest();
    case Functional::convex:
      return ordered_eigenvalues(h).smallest();
    case Functional::laplacian:
      return h.trace();
    case Functional::mean_curvature: {
      const Vector& g = der.gradient;
      const double metric = 1.0 + g.squaredNorm();
      return (metric * h.trace() - g.dot(h * g)) / std::pow(metric, 1.5);
    }
    case Functional::hessian_determinant:
      return h.determinant();
    case Functional::gaussian_curvature: {
      const double metric = 1.0 + der.gradient.squaredNorm();
      return h.determinant() / std::pow(metric, 1.0 + 0.5 * static_cast<double>(h.rows()));
    }
  }
  throw Error(ErrorKind::configuration, "unknown functional");
}

double eval_functional(const DensityModel& model, const CurvatureFieldSpec& spec,
                       const Vector& x) {
  if (model.dimension() < 1 || model.dimension() > kMaxDimension)
    throw Error(ErrorKind::configuration, "functionals are defined for dimensions 1 to 3");
  return functional_value(model.derivatives(x), spec.functional());
}

double eigenvalue_separation(const DensityModel& model, std::span<const Vector> points) {
  if (model.dimension() < 2)
    throw Error(ErrorKind::configuration, "eigenvalue separation needs dimension 2 or 3");
  double gap = std::numeric_limits<double>::infinity();
  for (const Vector& x : points) {
    const OrderedEigenvalues eig = ordered_eigenvalues(model.hessian(x));
    for (int i = 0; i + 1 < eig.size; ++i) gap = std::min(gap, eig[i] - eig[i + 1]);
  }
  return std::max(gap, 0.0);
}

}  // namespace curvebump
