#pragma once

#include <Eigen/Dense>
#include <string>

namespace jetforge {

/// Inverse via partial-pivot LU. Throws SingularityError when |det| <= kInvertEps.
Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& a, const std::string& what = "matrix");

/// Numerical rank: singular values above rel_tol * max(sigma_max, scale_floor).
int numerical_rank(const Eigen::MatrixXd& a, double rel_tol, double scale_floor = 0.0);
int numerical_rank(const Eigen::MatrixXcd& a, double rel_tol, double scale_floor = 0.0);

/// Orthonormal basis (columns) of the null space of a: singular values at or
/// below rel_tol * max(sigma_max, scale_floor) count as zero.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol, double scale_floor = 0.0);

inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace jetforge
