#pragma once

#include <Eigen/Dense>

namespace stepreach {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Absolute tolerance shared by LP feasibility, optimality and set comparisons.
inline constexpr double kTolerance = 1e-9;

inline bool same_shape_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
}

inline bool same_shape_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.size() == 0 || a == b);
}

}  // namespace stepreach
