#pragma once

#include <cstddef>
#include <vector>

#include "curvebump/grid.hpp"
#include "curvebump/types.hpp"

namespace curvebump {

/// Value, gradient and Hessian of a density at one point.
struct Derivatives {
  double value = 0.0;
  Vector gradient;
  Matrix hessian;
};

/// Derivatives at every node of a grid, packed per node.
struct DerivativeGrid {
  int dimension = 0;
  std::vector<double> values;     // one per node
  std::vector<double> gradients;  // dimension per node
  std::vector<double> hessians;   // dimension^2 per node, column-major

  std::size_t node_count() const noexcept { return values.size(); }
  Derivatives at(std::size_t node) const;
};

/// A twice-differentiable density on R^d. Implementations are immutable after
/// construction and safe to evaluate from many threads.
class DensityModel {
 public:
  virtual ~DensityModel() = default;

  virtual int dimension() const noexcept = 0;
  virtual Derivatives derivatives(const Vector& x) const = 0;

  virtual double value(const Vector& x) const { return derivatives(x).value; }
  Vector gradient(const Vector& x) const { return derivatives(x).gradient; }
  Matrix hessian(const Vector& x) const { return derivatives(x).hessian; }

  /// Derivatives at every grid node. The default evaluates node by node.
  virtual DerivativeGrid derivatives_on_grid(const GridSpec& grid) const;

 protected:
  /// Throws Error(input) on dimension mismatch or non-finite coordinates.
  void check_point(const Vector& x) const;
};

/// Averages the off-diagonal pairs so the result is exactly symmetric.
void symmetrize(Matrix& m) noexcept;

}  // namespace curvebump
