#include "jetforge/diffgroup.hpp"

#include <algorithm>
#include <string>

#include "jetforge/linalg.hpp"

namespace jetforge {
namespace {

void require_invertible(const Eigen::MatrixXd& g, const char* what) {
  if (g.rows() != g.cols()) throw DomainError(std::string(what) + ": not square");
  if (g.rows() == 0) return;
  const double det = g.determinant();
  if (!(std::abs(det) > kInvertEps)) throw SingularityError(std::string(what) + " is singular", det);
}

}  // namespace

D2Elem::D2Elem(Eigen::MatrixXd first, SymCube second) : phi1(std::move(first)), phi2(std::move(second)) {
  require_invertible(phi1, "D2Elem linear part");
  if (phi2.m() != m() || phi2.n() != m()) throw DomainError("D2Elem: second part dimension mismatch");
}

D2Elem D2Elem::identity(int m) { return D2Elem(Eigen::MatrixXd::Identity(m, m), SymCube(m, m)); }

D2Elem D2Elem::from_jet(const Jet2& j) {
  if (j.m() != j.n()) throw DomainError("D2Elem::from_jet: jet is not square");
  return D2Elem(j.lin, j.quad);
}

GL1Elem::GL1Elem(Eigen::MatrixXd first, Cube second) : g(std::move(first)), a(std::move(second)) {
  require_invertible(g, "GL1Elem linear part");
  if (a.m() != m() || a.n() != m()) throw DomainError("GL1Elem: second part dimension mismatch");
}

GL1Elem GL1Elem::identity(int m) { return GL1Elem(Eigen::MatrixXd::Identity(m, m), Cube(m, m)); }

D2Elem d2_mul(const D2Elem& psi, const D2Elem& phi) {
  if (psi.m() != phi.m()) throw DomainError("d2_mul: dimension mismatch");
  return D2Elem::from_jet(compose(psi.to_jet(), phi.to_jet()));
}

D2Elem d2_inv(const D2Elem& phi) { return D2Elem::from_jet(invert(phi.to_jet())); }

AlgebraicCoords to_algebraic(const D2Elem& phi) {
  const int m = phi.m();
  const Eigen::MatrixXd inv = checked_inverse(phi.phi1, "D2Elem linear part");
  SymCube t(m, m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double v = 0.0;
        for (int s = 0; s < m; ++s) v += inv(k, s) * phi.phi2(s, i, j);
        t(k, i, j) = v;
      }
  return {phi.phi1, std::move(t)};
}

D2Elem from_algebraic(const Eigen::MatrixXd& g, const SymCube& t) {
  const int m = static_cast<int>(g.rows());
  if (t.m() != m || t.n() != m) throw DomainError("from_algebraic: dimension mismatch");
  SymCube phi2(m, m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double v = 0.0;
        for (int s = 0; s < m; ++s) v += g(k, s) * t(s, i, j);
        phi2(k, i, j) = v;
      }
  return D2Elem(g, std::move(phi2));
}

Cube module_action(const Eigen::MatrixXd& g, const Eigen::MatrixXd& g_inv, const Cube& a) {
  const int m = static_cast<int>(g.rows());
  if (a.m() != m || a.n() != m) throw DomainError("module_action: dimension mismatch");
  // w(s, i, j) = a(s, p, q) g(p, i) g(q, j), then contract s with g^-1.
  Cube w(m, m);
  for (int s = 0; s < m; ++s)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double v = 0.0;
        for (int p = 0; p < m; ++p)
          for (int q = 0; q < m; ++q) v += a(s, p, q) * g(p, i) * g(q, j);
        w(s, i, j) = v;
      }
  Cube out(m, m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double v = 0.0;
        for (int s = 0; s < m; ++s) v += g_inv(k, s) * w(s, i, j);
        out(k, i, j) = v;
      }
  return out;
}

Cube module_action(const Eigen::MatrixXd& g, const Cube& a) {
  return module_action(g, checked_inverse(g, "module_action matrix"), a);
}

GL1Elem gl1_mul(const GL1Elem& x, const GL1Elem& y) {
  if (x.m() != y.m()) throw DomainError("gl1_mul: dimension mismatch");
  Cube a = module_action(y.g, x.a);
  a += y.a;
  return GL1Elem(x.g * y.g, std::move(a));
}

GL1Elem gl1_inv(const GL1Elem& x) {
  // (g, a)^-1 = (g^-1, -(g^-1 . a))
  const Eigen::MatrixXd inv = checked_inverse(x.g, "GL1Elem linear part");
  Cube a = module_action(inv, x.g, x.a);
  a *= -1.0;
  return GL1Elem(inv, std::move(a));
}

double max_abs_diff(const D2Elem& a, const D2Elem& b) {
  if (a.m() != b.m()) throw DomainError("max_abs_diff(D2Elem): dimension mismatch");
  return std::max(max_abs_diff(a.phi1, b.phi1), max_abs_diff(a.phi2, b.phi2));
}

double max_abs_diff(const GL1Elem& a, const GL1Elem& b) {
  if (a.m() != b.m()) throw DomainError("max_abs_diff(GL1Elem): dimension mismatch");
  return std::max(max_abs_diff(a.g, b.g), max_abs_diff(a.a, b.a));
}

}  // namespace jetforge
