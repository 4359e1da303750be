#pragma once

// D^2(m) in natural coordinates (phi^k_i, phi^k_ij) and the nonholonomic
// group GL1(m) in algebraic coordinates (g, a), a^k_ij = (phi^-1)^k_s phi^s_ij.
//
// GL1 product:   (g, a) * (h, b) = (g h, h.a + b)
// module action: (h.a)^k_ij = (h^-1)^k_s a^s_pq h^p_i h^q_j   (right action)

#include <Eigen/Dense>

#include "jetforge/jets.hpp"
#include "jetforge/symtensor.hpp"

namespace jetforge {

struct D2Elem {
  Eigen::MatrixXd phi1;  // m x m, invertible
  SymCube phi2;

  D2Elem() = default;
  /// Validates shapes and |det phi1| > kInvertEps.
  D2Elem(Eigen::MatrixXd first, SymCube second);

  static D2Elem identity(int m);
  static D2Elem from_jet(const Jet2& j);
  Jet2 to_jet() const { return Jet2(phi1, phi2); }

  int m() const noexcept { return static_cast<int>(phi1.rows()); }
};

struct GL1Elem {
  Eigen::MatrixXd g;  // m x m, invertible
  Cube a;             // a(k, i, j), not necessarily symmetric in (i, j)

  GL1Elem() = default;
  GL1Elem(Eigen::MatrixXd first, Cube second);
  /// Holonomic element: the symmetric t embedded as a Cube.
  GL1Elem(Eigen::MatrixXd first, const SymCube& second) : GL1Elem(std::move(first), second.to_cube()) {}

  static GL1Elem identity(int m);

  int m() const noexcept { return static_cast<int>(g.rows()); }
  /// True when a is symmetric in its lower indices within tol.
  bool is_holonomic(double tol = kTestEps) const noexcept { return a.asymmetry() <= tol; }
};

/// Algebraic coordinates of a holonomic element.
struct AlgebraicCoords {
  Eigen::MatrixXd g;
  SymCube t;
};

D2Elem d2_mul(const D2Elem& psi, const D2Elem& phi);
D2Elem d2_inv(const D2Elem& phi);

AlgebraicCoords to_algebraic(const D2Elem& phi);
D2Elem from_algebraic(const Eigen::MatrixXd& g, const SymCube& t);
inline D2Elem from_algebraic(const AlgebraicCoords& c) { return from_algebraic(c.g, c.t); }
inline GL1Elem as_gl1(const AlgebraicCoords& c) { return GL1Elem(c.g, c.t); }

GL1Elem gl1_mul(const GL1Elem& x, const GL1Elem& y);
GL1Elem gl1_inv(const GL1Elem& x);

Cube module_action(const Eigen::MatrixXd& g, const Cube& a);
/// Same action with g^-1 supplied by the caller.
Cube module_action(const Eigen::MatrixXd& g, const Eigen::MatrixXd& g_inv, const Cube& a);

/// Coordinate count of the natural chart on D^2(m): m^2 + m^2(m+1)/2.
constexpr std::size_t d2_dimension(int m) {
  return static_cast<std::size_t>(m) * m + static_cast<std::size_t>(m) * pair_count(m);
}

double max_abs_diff(const D2Elem& a, const D2Elem& b);
double max_abs_diff(const GL1Elem& a, const GL1Elem& b);

}  // namespace jetforge
