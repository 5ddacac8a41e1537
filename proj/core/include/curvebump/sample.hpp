#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "curvebump/types.hpp"

namespace curvebump {

/// n observations in R^d, d in {1,2,3}, stored row-major.
class SampleMatrix {
 public:
  /// Throws Error(input) unless n >= 1, d in {1,2,3}, and every coordinate
  /// is finite.
  SampleMatrix(std::size_t n, int d, std::vector<double> coordinates);

  static SampleMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  int dimension() const noexcept { return d_; }

  Vector point(std::size_t i) const;
  double at(std::size_t i, int axis) const noexcept { return data_[i * d_ + axis]; }
  std::span<const double> coordinates() const noexcept { return data_; }

  /// Per-coordinate unbiased sample variances (zero when n == 1).
  Vector coordinate_variances() const;
  Vector lower_bounds() const;
  Vector upper_bounds() const;

  /// Rows selected by index, duplicates allowed.
  SampleMatrix subset(std::span<const std::size_t> indices) const;

 private:
  std::size_t n_;
  int d_;
  std::vector<double> data_;
};

}  // namespace curvebump
