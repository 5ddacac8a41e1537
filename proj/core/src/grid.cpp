#include "curvebump/grid.hpp"

#include <cmath>
#include <string>

#include "curvebump/error.hpp"

namespace curvebump {

GridSpec::GridSpec(Vector lower, Vector upper, std::vector<int> resolution)
    : lower_(std::move(lower)), upper_(std::move(upper)), resolution_(std::move(resolution)) {
  const int d = static_cast<int>(lower_.size());
  if (d < 1 || d > kMaxDimension || upper_.size() != d ||
      static_cast<int>(resolution_.size()) != d)
    throw Error(ErrorKind::input, "grid bounds and resolution must share a dimension in {1,2,3}");
  double total = 1.0;
  for (int a = 0; a < d; ++a) {
    if (!std::isfinite(lower_[a]) || !std::isfinite(upper_[a]) || !(lower_[a] < upper_[a]))
      throw Error(ErrorKind::input, "grid axis " + std::to_string(a) + " needs finite lower < upper");
    if (resolution_[a] < 2)
      throw Error(ErrorKind::input, "grid axis " + std::to_string(a) + " needs at least 2 nodes");
    total *= resolution_[a];
  }
  if (total > static_cast<double>(kMaxGridNodes))
    throw Error(ErrorKind::resource, "grid has more than 1e8 nodes; coarsen the resolution");
  node_count_ = static_cast<std::size_t>(total);
}

GridSpec GridSpec::uniform(const Vector& lower, const Vector& upper, int nodes_per_axis) {
  return GridSpec(lower, upper, std::vector<int>(lower.size(), nodes_per_axis));
}

double GridSpec::spacing(int axis) const noexcept {
  return (upper_[axis] - lower_[axis]) / (resolution_[axis] - 1);
}

double GridSpec::coordinate(int axis, int k) const noexcept {
  if (k == resolution_[axis] - 1) return upper_[axis];
  return lower_[axis] + (upper_[axis] - lower_[axis]) * k / (resolution_[axis] - 1);
}

std::vector<double> GridSpec::axis_coordinates(int axis) const {
  std::vector<double> out(resolution_[axis]);
  for (int k = 0; k < resolution_[axis]; ++k) out[k] = coordinate(axis, k);
  return out;
}

std::size_t GridSpec::flat_index(const std::array<int, 3>& multi) const noexcept {
  std::size_t flat = 0;
  for (int a = 0; a < dimension(); ++a) flat = flat * resolution_[a] + multi[a];
  return flat;
}

std::array<int, 3> GridSpec::multi_index(std::size_t flat) const noexcept {
  std::array<int, 3> multi{0, 0, 0};
  for (int a = dimension() - 1; a >= 0; --a) {
    multi[a] = static_cast<int>(flat % resolution_[a]);
    flat /= resolution_[a];
  }
  return multi;
}

Vector GridSpec::node(std::size_t flat) const {
  const auto multi = multi_index(flat);
  Vector x(dimension());
  for (int a = 0; a < dimension(); ++a) x[a] = coordinate(a, multi[a]);
  return x;
}

bool GridSpec::contains(const Vector& x, double slack) const {
  if (x.size() != lower_.size()) return false;
  for (int a = 0; a < dimension(); ++a)
    if (x[a] < lower_[a] - slack || x[a] > upper_[a] + slack) return false;
  return true;
}

}  // namespace curvebump
