#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "curvebump/density.hpp"
#include "curvebump/types.hpp"

namespace curvebump {

/// Curvature functionals whose sign defines a bump.
enum class Functional {
  concave,              // largest Hessian eigenvalue
  convex,               // smallest Hessian eigenvalue
  laplacian,            // Hessian trace
  mean_curvature,       // divergence of the normalized gradient
  hessian_determinant,  // determinant of the Hessian
  gaussian_curvature,   // det(H) / (1 + |grad|^2)^(1 + d/2)
};

std::string_view to_string(Functional functional) noexcept;
/// Accepts the canonical names above (with '-' for '_') plus "concave-lambda1"
/// and "convex-lambdad". Throws Error(configuration) otherwise.
Functional parse_functional(std::string_view name);

/// A functional plus its fixed sign selector s. The bump is the closed set
/// {x : (-1)^s phi(f)(x) >= 0}.
class CurvatureFieldSpec {
 public:
  constexpr explicit CurvatureFieldSpec(Functional functional) noexcept
      : functional_(functional) {}

  constexpr Functional functional() const noexcept { return functional_; }
  constexpr int sign_selector() const noexcept {
    switch (functional_) {
      case Functional::concave:
      case Functional::laplacian:
      case Functional::mean_curvature:
        return 1;
      default:
        return 0;
    }
  }
  constexpr double sign() const noexcept { return sign_selector() == 1 ? -1.0 : 1.0; }

 private:
  Functional functional_;
};

/// Throws Error(configuration) when the functional has no bump meaning in
/// dimension d: the determinant and Gaussian-curvature bumps exist only for d = 2.
void require_bump_semantics(const CurvatureFieldSpec& spec, int d);

/// Eigenvalues sorted so that values[0] >= values[1] >= ... >= values[size-1].
struct OrderedEigenvalues {
  std::array<double, 3> values{};
  int size = 0;

  double operator[](int i) const noexcept { return values[i]; }
  double largest() const noexcept { return values[0]; }
  double smallest() const noexcept { return values[size - 1]; }
};

/// Closed-form eigenvalues of a symmetric matrix of order 1, 2 or 3.
/// Throws Error(input) when |H_ij - H_ji| > 1e-9 or the order is unsupported.
OrderedEigenvalues ordered_eigenvalues(const Matrix& h);

/// phi(f)(x) from precomputed derivatives; no sign folding.
double functional_value(const Derivatives& derivatives, Functional functional);

/// phi(f)(x). Throws Error(configuration) when d is not 1, 2 or 3.
double eval_functional(const DensityModel& model, const CurvatureFieldSpec& spec,
                       const Vector& x);

/// Smallest gap between consecutive ordered Hessian eigenvalues over the
/// given points. Near-zero values flag eigenvalue crossings, where eigenvalue
/// bump boundaries lose stability. Returns +infinity for an empty point set.
/// Throws Error(configuration) for d < 2.
double eigenvalue_separation(const DensityModel& model, std::span<const Vector> points);

}  // namespace curvebump
