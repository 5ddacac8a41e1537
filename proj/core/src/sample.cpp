#include "curvebump/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curvebump/error.hpp"

namespace curvebump {

SampleMatrix::SampleMatrix(std::size_t n, int d, std::vector<double> coordinates)
    : n_(n), d_(d), data_(std::move(coordinates)) {
  if (n_ == 0) throw Error(ErrorKind::input, "sample must contain at least one point");
  if (d_ < 1 || d_ > kMaxDimension)
    throw Error(ErrorKind::input, "sample dimension must be 1, 2 or 3, got " + std::to_string(d_));
  if (data_.size() != n_ * static_cast<std::size_t>(d_))
    throw Error(ErrorKind::input, "coordinate count does not match n * d");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!std::isfinite(data_[k]))
      throw Error(ErrorKind::input, "non-finite coordinate in row " + std::to_string(k / d_) +
                                        ", column " + std::to_string(k % d_));
  }
}

SampleMatrix SampleMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error(ErrorKind::input, "sample must contain at least one point");
  const int d = static_cast<int>(rows.front().size());
  std::vector<double> data;
  data.reserve(rows.size() * rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != d)
      throw Error(ErrorKind::input, "row " + std::to_string(i) + " has " +
                                        std::to_string(rows[i].size()) + " coordinates, expected " +
                                        std::to_string(d));
    data.insert(data.end(), rows[i].begin(), rows[i].end());
  }
  return SampleMatrix(rows.size(), d, std::move(data));
}

Vector SampleMatrix::point(std::size_t i) const {
  Vector p(d_);
  for (int a = 0; a < d_; ++a) p[a] = data_[i * d_ + a];
  return p;
}

Vector SampleMatrix::coordinate_variances() const {
  Vector var = Vector::Zero(d_);
  if (n_ < 2) return var;
  for (int a = 0; a < d_; ++a) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n_; ++i) mean += at(i, a);
    mean /= static_cast<double>(n_);
    double ss = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double dx = at(i, a) - mean;
      ss += dx * dx;
    }
    var[a] = ss / static_cast<double>(n_ - 1);
  }
  return var;
}

Vector SampleMatrix::lower_bounds() const {
  Vector lo(d_);
  for (int a = 0; a < d_; ++a) {
    lo[a] = at(0, a);
    for (std::size_t i = 1; i < n_; ++i) lo[a] = std::min(lo[a], at(i, a));
  }
  return lo;
}

Vector SampleMatrix::upper_bounds() const {
  Vector hi(d_);
  for (int a = 0; a < d_; ++a) {
    hi[a] = at(0, a);
    for (std::size_t i = 1; i < n_; ++i) hi[a] = std::max(hi[a], at(i, a));
  }
  return hi;
}

SampleMatrix SampleMatrix::subset(std::span<const std::size_t> indices) const {
  std::vector<double> data;
  data.reserve(indices.size() * d_);
  for (std::size_t i : indices) {
    const auto row = data_.begin() + static_cast<std::ptrdiff_t>(i * d_);
    data.insert(data.end(), row, row + d_);
  }
  return SampleMatrix(indices.size(), d_, std::move(data));
}

}  // namespace curvebump
