#pragma once

// 2-jets of pointed maps (R^m, 0) -> (R^n, 0).

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "jetforge/errors.hpp"
#include "jetforge/exec.hpp"
#include "jetforge/polynomial.hpp"
#include "jetforge/symtensor.hpp"

namespace jetforge {

/// lin(k, i) = df^k/dx^i, quad(k, i, j) = d^2 f^k / dx^i dx^j.
struct Jet2 {
  Eigen::MatrixXd lin;  // n x m
  SymCube quad;         // m, n

  Jet2() = default;
  Jet2(Eigen::MatrixXd lin_part, SymCube quad_part);

  static Jet2 identity(int m);

  int m() const noexcept { return static_cast<int>(lin.cols()); }
  int n() const noexcept { return static_cast<int>(lin.rows()); }
};

/// Exact derivatives of p at x0; the constant term is dropped.
Jet2 jet_at(const PolyMap& p, const Eigen::Ref<const Eigen::VectorXd>& x0);

/// Chain rule: (outer o inner) with
///   lin  = L_o L_i
///   quad^k_ij = Q_o^k_pq L_i^p_i L_i^q_j + L_o^k_s Q_i^s_ij
Jet2 compose(const Jet2& outer, const Jet2& inner);

/// Two-sided inverse of a square jet. Throws SingularityError on |det lin| <= kInvertEps.
Jet2 invert(const Jet2& j);

/// Element-wise compose(outer[i], inner[i]); spans must have equal length.
std::vector<Jet2> compose_batch(std::span<const Jet2> outer, std::span<const Jet2> inner, Exec exec = Exec::Parallel);

/// max componentwise difference over both parts.
double max_abs_diff(const Jet2& a, const Jet2& b);

}  // namespace jetforge
