#pragma once

// First prolongation of a matrix Lie algebra g in gl(m):
//
//   g^(1) = { t symmetric in (i, j) : for every j, (t^k_ij)_{k,i} in g }.
//
// Solved as the null space of a dense linear system over the
// m * m(m+1)/2 independent entries of t.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "jetforge/symtensor.hpp"

namespace jetforge {

/// Relative singular-value threshold for every rank decision in this module.
inline constexpr double kProlongRankTol = 1e-10;

class MatrixLieAlgebra {
 public:
  /// Throws DomainError if the matrices are not m x m or are linearly dependent.
  MatrixLieAlgebra(int m, std::vector<Eigen::MatrixXd> basis);

  static MatrixLieAlgebra gl(int m);
  static MatrixLieAlgebra sl(int m);
  static MatrixLieAlgebra o(int m);
  /// o(m) + R I
  static MatrixLieAlgebra co(int m);
  static MatrixLieAlgebra diagonal(int m);
  static MatrixLieAlgebra zero(int m);
  /// By name: "gl", "sl", "o", "co", "diag", "zero".
  static MatrixLieAlgebra builtin(const std::string& name, int m);

  int m() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  const std::vector<Eigen::MatrixXd>& basis() const noexcept { return basis_; }

  /// Orthonormal basis of span(basis) in vec (column-major) coordinates, m^2 x dim.
  const Eigen::MatrixXd& orthonormal_span() const noexcept { return span_; }

  /// Frobenius norm of the component of x orthogonal to the algebra.
  double distance(const Eigen::MatrixXd& x) const;
  bool contains(const Eigen::MatrixXd& x, double tol) const { return distance(x) <= tol; }

  /// Largest distance of [B_a, B_b] from the span; the bracket is not required to close.
  double closure_defect() const;

 private:
  int m_;
  std::vector<Eigen::MatrixXd> basis_;
  Eigen::MatrixXd span_;
};

struct ProlongationBasis {
  int m = 0;
  std::vector<SymCube> elements;

  int dim() const noexcept { return static_cast<int>(elements.size()); }
};

/// The matrix (t^k_{i j})_{k,i} for fixed 0-based j.
Eigen::MatrixXd slice_last(const SymCube& t, int j);
Eigen::MatrixXd slice_last(const Cube& a, int j);

/// Stacked constraint rows P_perp * vec(t(., ., j)) over j, acting on t.data().
Eigen::MatrixXd prolongation_constraints(const MatrixLieAlgebra& g);

ProlongationBasis first_prolongation(const MatrixLieAlgebra& g);

/// Least-squares distance from t to span(p.elements) <= tol.
bool contains(const ProlongationBasis& p, const SymCube& t, double tol);
double distance(const ProlongationBasis& p, const SymCube& t);

/// max over j of the distance of slice_last(t, j) from g.
double membership_residual(const MatrixLieAlgebra& g, const SymCube& t);

}  // namespace jetforge
