#pragma once

#include <Eigen/Core>

namespace curvebump {

inline constexpr int kMaxDimension = 3;

// Fixed-capacity, heap-free vector and matrix for d <= 3.
using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDimension, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                             kMaxDimension, kMaxDimension>;

}  // namespace curvebump
