#include "jetforge/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "jetforge/errors.hpp"

namespace jetforge {

Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& a, const std::string& what) {
  if (a.rows() != a.cols()) throw DomainError(what + ": not square");
  if (a.rows() == 0) return a;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double det = lu.determinant();
  if (!(std::abs(det) > kInvertEps)) throw SingularityError(what + " is singular", det);
  return lu.inverse();
}

namespace {

template <class M>
int rank_of(const M& a, double rel_tol, double scale_floor) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<M> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  const double cut = rel_tol * std::max(static_cast<double>(s[0]), scale_floor);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > cut) ++r;
  return r;
}

}  // namespace

int numerical_rank(const Eigen::MatrixXd& a, double rel_tol, double scale_floor) {
  return rank_of(a, rel_tol, scale_floor);
}
int numerical_rank(const Eigen::MatrixXcd& a, double rel_tol, double scale_floor) {
  return rank_of(a, rel_tol, scale_floor);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol, double scale_floor) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0 || n == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = rel_tol * std::max(s[0], scale_floor);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > cut) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

}  // namespace jetforge
