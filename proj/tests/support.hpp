#pragma once

// Random generators and independent oracles shared by the unit and
// acceptance suites. Nothing here calls the code path it is used to check.

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "jetforge/diffgroup.hpp"
#include "jetforge/group_prolong.hpp"
#include "jetforge/jets.hpp"
#include "jetforge/polynomial.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Eigen::MatrixXd random_matrix(Rng& rng, int rows, int cols, double bound = 2.0) {
  Eigen::MatrixXd a(rows, cols);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = uniform(rng, -bound, bound);
  return a;
}

inline double condition_number(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  return s[0] / s[s.size() - 1];
}

/// Square matrix with entries in [-bound, bound] and condition number <= max_cond.
inline Eigen::MatrixXd random_invertible(Rng& rng, int m, double bound = 2.0, double max_cond = 1e3) {
  for (;;) {
    Eigen::MatrixXd a = random_matrix(rng, m, m, bound);
    if (condition_number(a) <= max_cond) return a;
  }
}

inline jetforge::SymCube random_symcube(Rng& rng, int m, int n, double bound = 2.0) {
  jetforge::SymCube t(m, n);
  for (double& v : t.data()) v = uniform(rng, -bound, bound);
  return t;
}

inline jetforge::Cube random_cube(Rng& rng, int m, int n, double bound = 2.0) {
  jetforge::Cube c(m, n);
  for (double& v : c.data()) v = uniform(rng, -bound, bound);
  return c;
}

inline jetforge::Jet2 random_jet(Rng& rng, int m, int n, double bound = 2.0) {
  return jetforge::Jet2(random_matrix(rng, n, m, bound), random_symcube(rng, m, n, bound));
}

inline jetforge::D2Elem random_d2(Rng& rng, int m, double bound = 2.0, double max_cond = 1e3) {
  return jetforge::D2Elem(random_invertible(rng, m, bound, max_cond), random_symcube(rng, m, m, bound));
}

inline jetforge::GL1Elem random_gl1(Rng& rng, int m, double bound = 2.0, double max_cond = 1e3) {
  return jetforge::GL1Elem(random_invertible(rng, m, bound, max_cond), random_cube(rng, m, m, bound));
}

inline Eigen::MatrixXd random_orthogonal(Rng& rng, int m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(rng, m, m));
  return qr.householderQ();
}

/// A random element of the matrix group named by kind.
inline Eigen::MatrixXd random_member(Rng& rng, jetforge::GroupKind kind, int m) {
  using jetforge::GroupKind;
  switch (kind) {
    case GroupKind::O:
      return random_orthogonal(rng, m);
    case GroupKind::CO:
      return uniform(rng, 0.5, 2.0) * random_orthogonal(rng, m);
    case GroupKind::SL: {
      Eigen::MatrixXd g = random_invertible(rng, m, 2.0, 1e2);
      if (g.determinant() < 0) g.row(0) *= -1.0;
      return g / std::pow(g.determinant(), 1.0 / m);
    }
    case GroupKind::DIAG: {
      Eigen::VectorXd d(m);
      for (int i = 0; i < m; ++i) d[i] = uniform(rng, 0.5, 2.0) * (i % 2 ? -1.0 : 1.0);
      return d.asDiagonal();
    }
    default:
      return random_invertible(rng, m);
  }
}

/// Random combination of the prolongation basis of grp.
inline jetforge::SymCube random_prolonged(Rng& rng, const jetforge::GroupDescriptor& grp) {
  jetforge::SymCube t(grp.m(), grp.m());
  for (const jetforge::SymCube& e : grp.prolongation().elements) {
    jetforge::SymCube s = e;
    s *= uniform(rng, -2.0, 2.0);
    t += s;
  }
  return t;
}

/// Dense random polynomial of total degree <= deg, coefficients in [-1, 1].
inline jetforge::Polynomial random_polynomial(Rng& rng, int nvars, int deg) {
  jetforge::Polynomial p(nvars);
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  // enumerate all exponent vectors with sum <= deg
  for (;;) {
    int sum = 0;
    for (int x : e) sum += x;
    if (sum <= deg) p.add_term(e, uniform(rng, -1.0, 1.0));
    int i = 0;
    while (i < nvars && ++e[static_cast<std::size_t>(i)] > deg) e[static_cast<std::size_t>(i++)] = 0;
    if (i == nvars) break;
  }
  return p;
}

inline jetforge::PolyMap random_polymap(Rng& rng, int m, int n, int deg) {
  std::vector<jetforge::Polynomial> c;
  for (int k = 0; k < n; ++k) c.push_back(random_polynomial(rng, m, deg));
  return jetforge::PolyMap(m, std::move(c));
}

/// Shift so that x0 maps to 0 and the map is pointed: p(x0 + y) - p(x0), as a polynomial in y.
inline jetforge::PolyMap recentre(const jetforge::PolyMap& p, const Eigen::VectorXd& x0) {
  const int m = p.m();
  std::vector<jetforge::Polynomial> shift;
  for (int i = 0; i < m; ++i)
    shift.push_back(jetforge::Polynomial::variable(m, i) + jetforge::Polynomial::constant(m, x0[i]));
  const Eigen::VectorXd y0 = p.evaluate(x0);
  std::vector<jetforge::Polynomial> c;
  for (int k = 0; k < p.n(); ++k) c.push_back(p[k].compose(shift) - jetforge::Polynomial::constant(m, y0[k]));
  return jetforge::PolyMap(m, std::move(c));
}

/// Second-order Taylor coefficients read off an expanded polynomial at the
/// origin: independent of Polynomial::derivative.
inline jetforge::Jet2 jet_from_coefficients(const jetforge::PolyMap& p) {
  const int m = p.m();
  Eigen::MatrixXd lin(p.n(), m);
  jetforge::SymCube quad(m, p.n());
  for (int k = 0; k < p.n(); ++k)
    for (int i = 0; i < m; ++i) {
      std::vector<int> e(static_cast<std::size_t>(m), 0);
      e[static_cast<std::size_t>(i)] = 1;
      lin(k, i) = p[k].coefficient(e);
      for (int j = i; j < m; ++j) {
        std::vector<int> f(static_cast<std::size_t>(m), 0);
        ++f[static_cast<std::size_t>(i)];
        ++f[static_cast<std::size_t>(j)];
        quad(k, i, j) = (i == j ? 2.0 : 1.0) * p[k].coefficient(f);
      }
    }
  return jetforge::Jet2(lin, quad);
}

/// Polynomial representative x -> lin x + quad(x, x)/2 of a jet.
inline jetforge::PolyMap representative(const jetforge::Jet2& j) {
  using jetforge::Polynomial;
  const int m = j.m();
  std::vector<Polynomial> c;
  for (int k = 0; k < j.n(); ++k) {
    Polynomial p(m);
    for (int i = 0; i < m; ++i) p += Polynomial::variable(m, i) * j.lin(k, i);
    for (int i = 0; i < m; ++i)
      for (int jj = 0; jj < m; ++jj)
        p += Polynomial::variable(m, i) * Polynomial::variable(m, jj) * (0.5 * j.quad(k, i, jj));
    c.push_back(std::move(p));
  }
  return jetforge::PolyMap(m, std::move(c));
}

}  // namespace testing
