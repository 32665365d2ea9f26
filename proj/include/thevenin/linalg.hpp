#pragma once

#include <Eigen/Dense>

namespace thevenin {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Replaces `m` by (m + mᵀ)/2.
[[nodiscard]] inline Mat2 symmetrized(const Mat2& m) { return 0.5 * (m + m.transpose()); }

/// Largest |m(i,j) − m(j,i)| relative to the largest |m(i,j)|.
[[nodiscard]] inline double asymmetry(const Mat2& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return std::abs(m(0, 1) - m(1, 0)) / scale;
}

/// Sylvester's criterion on a symmetric 2×2.
[[nodiscard]] inline bool positive_definite(const Mat2& m) { return m(0, 0) > 0.0 && m.determinant() > 0.0; }

}  // namespace thevenin
