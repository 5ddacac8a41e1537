#include "curvebump/density.hpp"

#include <cmath>
#include <string>

#include "curvebump/error.hpp"
#include "curvebump/parallel.hpp"

namespace curvebump {

Derivatives DerivativeGrid::at(std::size_t node) const {
  Derivatives out;
  out.value = values[node];
  out.gradient.resize(dimension);
  out.hessian.resize(dimension, dimension);
  for (int a = 0; a < dimension; ++a) out.gradient[a] = gradients[node * dimension + a];
  const std::size_t base = node * dimension * dimension;
  for (int c = 0; c < dimension; ++c)
    for (int r = 0; r < dimension; ++r) out.hessian(r, c) = hessians[base + c * dimension + r];
  return out;
}

DerivativeGrid DensityModel::derivatives_on_grid(const GridSpec& grid) const {
  if (grid.dimension() != dimension())
    throw Error(ErrorKind::input, "grid dimension does not match the model dimension");
  const int d = dimension();
  const std::size_t nodes = grid.node_count();
  DerivativeGrid out;
  out.dimension = d;
  out.values.resize(nodes);
  out.gradients.resize(nodes * d);
  out.hessians.resize(nodes * d * d);
  constexpr std::size_t kChunk = 1024;
  parallel_for((nodes + kChunk - 1) / kChunk, [&](std::size_t chunk) {
    const std::size_t end = std::min(nodes, (chunk + 1) * kChunk);
    for (std::size_t k = chunk * kChunk; k < end; ++k) {
      const Derivatives der = derivatives(grid.node(k));
      out.values[k] = der.value;
      for (int a = 0; a < d; ++a) out.gradients[k * d + a] = der.gradient[a];
      for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) out.hessians[k * d * d + c * d + r] = der.hessian(r, c);
    }
  });
  return out;
}

void DensityModel::check_point(const Vector& x) const {
  if (x.size() != dimension())
    throw Error(ErrorKind::input, "point has dimension " + std::to_string(x.size()) +
                                      ", model has dimension " + std::to_string(dimension()));
  for (int a = 0; a < x.size(); ++a)
    if (!std::isfinite(x[a])) throw Error(ErrorKind::input, "point has a non-finite coordinate");
}

void symmetrize(Matrix& m) noexcept {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = r + 1; c < m.cols(); ++c) {
      const double avg = 0.5 * (m(r, c) + m(c, r));
      m(r, c) = avg;
      m(c, r) = avg;
    }
}

}  // namespace curvebump
