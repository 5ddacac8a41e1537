#include <cmath>
#include <string>

#include "curvebump/error.hpp"
#include "curvebump/levelset.hpp"
#include "curvebump/parallel.hpp"

namespace curvebump {

ScalarFieldGrid ScalarFieldGrid::shifted(double offset) const {
  ScalarFieldGrid out{grid, values, nullptr};
  for (double& v : out.values) v += offset;
  if (sampler) {
    out.sampler = [inner = sampler, offset](const Vector& x) { return inner(x) + offset; };
  }
  return out;
}

ScalarFieldGrid evaluate_field(const DensityModel& model, const CurvatureFieldSpec& spec,
                               const GridSpec& grid) {
  if (grid.dimension() != model.dimension())
    throw Error(ErrorKind::input, "grid dimension " + std::to_string(grid.dimension()) +
                                      " does not match model dimension " +
                                      std::to_string(model.dimension()));
  const DerivativeGrid derivatives = model.derivatives_on_grid(grid);
  const double sign = spec.sign();
  const Functional functional = spec.functional();
  std::vector<double> values(grid.node_count());
  constexpr std::size_t kChunk = 4096;
  parallel_for((values.size() + kChunk - 1) / kChunk, [&](std::size_t chunk) {
    const std::size_t end = std::min(values.size(), (chunk + 1) * kChunk);
    for (std::size_t k = chunk * kChunk; k < end; ++k)
      values[k] = sign * functional_value(derivatives.at(k), functional);
  });
  for (std::size_t k = 0; k < values.size(); ++k)
    if (!std::isfinite(values[k]))
      throw Error(ErrorKind::input, "functional is not finite at grid node " + std::to_string(k));
  return ScalarFieldGrid{grid, std::move(values), [&model, spec](const Vector& x) {
                           return spec.sign() * eval_functional(model, spec, x);
                         }};
}

ScalarFieldGrid sample_function(const GridSpec& grid, std::function<double(const Vector&)> fn) {
  std::vector<double> values(grid.node_count());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = fn(grid.node(k));
  return ScalarFieldGrid{grid, std::move(values), std::move(fn)};
}

}  // namespace curvebump
