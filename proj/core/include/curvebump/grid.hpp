#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "curvebump/types.hpp"

namespace curvebump {

inline constexpr std::size_t kMaxGridNodes = 100'000'000;

/// Rectangular lattice over [lower, upper]. Nodes are stored row-major with
/// the last coordinate varying fastest.
class GridSpec {
 public:
  /// Throws Error(input) unless lower < upper componentwise, every node count
  /// is at least 2, and the total node count stays under kMaxGridNodes.
  GridSpec(Vector lower, Vector upper, std::vector<int> resolution);

  /// Same node count along every axis.
  static GridSpec uniform(const Vector& lower, const Vector& upper, int nodes_per_axis);

  int dimension() const noexcept { return static_cast<int>(lower_.size()); }
  const Vector& lower() const noexcept { return lower_; }
  const Vector& upper() const noexcept { return upper_; }
  const std::vector<int>& resolution() const noexcept { return resolution_; }
  std::size_t node_count() const noexcept { return node_count_; }

  double spacing(int axis) const noexcept;
  double coordinate(int axis, int k) const noexcept;
  std::vector<double> axis_coordinates(int axis) const;

  std::size_t flat_index(const std::array<int, 3>& multi) const noexcept;
  std::array<int, 3> multi_index(std::size_t flat) const noexcept;
  Vector node(std::size_t flat) const;

  bool contains(const Vector& x, double slack = 0.0) const;

 private:
  Vector lower_;
  Vector upper_;
  std::vector<int> resolution_;
  std::size_t node_count_;
};

}  // namespace curvebump
