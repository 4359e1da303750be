#include "jetforge/jets.hpp"

#include <algorithm>
#include <string>

#include "jetforge/linalg.hpp"

namespace jetforge {

Jet2::Jet2(Eigen::MatrixXd lin_part, SymCube quad_part) : lin(std::move(lin_part)), quad(std::move(quad_part)) {
  if (quad.m() != lin.cols() || quad.n() != lin.rows()) {
    throw DomainError("Jet2: quad is " + std::to_string(quad.m()) + "->" + std::to_string(quad.n()) +
                      " but lin is " + std::to_string(lin.rows()) + "x" + std::to_string(lin.cols()));
  }
}

Jet2 Jet2::identity(int m) { return Jet2(Eigen::MatrixXd::Identity(m, m), SymCube(m, m)); }

Jet2 jet_at(const PolyMap& p, const Eigen::Ref<const Eigen::VectorXd>& x0) {
  if (x0.size() != p.m()) throw DomainError("jet_at: point dimension != map source dimension");
  const int m = p.m();
  const int n = p.n();
  Eigen::MatrixXd lin(n, m);
  SymCube quad(m, n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < m; ++i) {
      const Polynomial di = p[k].derivative(i);
      lin(k, i) = di.evaluate(x0);
      for (int j = i; j < m; ++j) quad(k, i, j) = di.derivative(j).evaluate(x0);
    }
  }
  return Jet2(std::move(lin), std::move(quad));
}

Jet2 compose(const Jet2& outer, const Jet2& inner) {
  if (outer.m() != inner.n()) {
    throw DomainError("compose: outer source dimension " + std::to_string(outer.m()) +
                      " != inner target dimension " + std::to_string(inner.n()));
  }
  const int m = inner.m();
  const int mid = inner.n();
  const int p = outer.n();
  Eigen::MatrixXd lin = outer.lin * inner.lin;
  SymCube quad(m, p);
  for (int k = 0; k < p; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        double v = 0.0;
        for (int a = 0; a < mid; ++a)
          for (int b = 0; b < mid; ++b) v += outer.quad(k, a, b) * inner.lin(a, i) * inner.lin(b, j);
        for (int s = 0; s < mid; ++s) v += outer.lin(k, s) * inner.quad(s, i, j);
        quad(k, i, j) = v;
      }
    }
  }
  return Jet2(std::move(lin), std::move(quad));
}

Jet2 invert(const Jet2& j) {
  if (j.m() != j.n()) throw DomainError("invert: jet is not square");
  const int m = j.m();
  Eigen::MatrixXd inv = checked_inverse(j.lin, "jet linear part");
  SymCube quad(m, m);
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int jj = i; jj < m; ++jj) {
        double v = 0.0;
        for (int s = 0; s < m; ++s)
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) v += inv(k, s) * j.quad(s, a, b) * inv(a, i) * inv(b, jj);
        quad(k, i, jj) = -v;
      }
    }
  }
  return Jet2(std::move(inv), std::move(quad));
}

std::vector<Jet2> compose_batch(std::span<const Jet2> outer, std::span<const Jet2> inner, Exec exec) {
  if (outer.size() != inner.size()) throw DomainError("compose_batch: length mismatch");
  for (std::size_t i = 0; i < outer.size(); ++i)
    if (outer[i].m() != inner[i].n()) throw DomainError("compose_batch: dimension mismatch at " + std::to_string(i));
  std::vector<Jet2> out(outer.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(outer.size()); ++i) {
      const auto u = static_cast<std::size_t>(i);
      out[u] = compose(outer[u], inner[u]);
    }
  } else {
    for (std::size_t i = 0; i < outer.size(); ++i) out[i] = compose(outer[i], inner[i]);
  }
  return out;
}

double max_abs_diff(const Jet2& a, const Jet2& b) {
  if (a.m() != b.m() || a.n() != b.n()) throw DomainError("max_abs_diff(Jet2): dimension mismatch");
  const double l = a.lin.size() ? (a.lin - b.lin).cwiseAbs().maxCoeff() : 0.0;
  return std::max(l, max_abs_diff(a.quad, b.quad));
}

}  // namespace jetforge
