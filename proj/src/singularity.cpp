#include "jetforge/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "jetforge/errors.hpp"
#include "jetforge/linalg.hpp"

namespace jetforge {

PolyVectorField::PolyVectorField(PolyMap components) : field_(std::move(components)) {
  if (field_.m() != field_.n()) throw DomainError("PolyVectorField: needs as many components as variables");
}

Eigen::VectorXd evaluate_f(const Eigen::MatrixXd& frame, const PolyVectorField& v, const Eigen::VectorXd& x) {
  if (frame.rows() != v.m() || frame.cols() != v.m()) throw DomainError("evaluate_f: frame shape mismatch");
  return frame * v(x);
}

ProlongedValue prolong_f1(const FramedPoint& b, const PolyVectorField& v) {
  const int m = v.m();
  if (b.x.size() != m || b.frame.rows() != m || b.frame.cols() != m || b.gamma.m() != m || b.gamma.n() != m)
    throw DomainError("prolong_f1: dimension mismatch");
  const Eigen::VectorXd val = v(b.x);
  const Eigen::MatrixXd jac = v.jacobian(b.x);
  Eigen::MatrixXd n(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double g = 0.0;
      for (int s = 0; s < m; ++s) g += b.gamma(i, j, s) * val[s];
      n(i, j) = jac(i, j) + g;
    }
  const Eigen::MatrixXd inv = checked_inverse(b.frame, "frame");
  return {b.frame * val, b.frame * n * inv};
}

namespace {

// a(w)^k_i = a^k_ij w^j
Eigen::MatrixXd contract_last(const Cube& a, const Eigen::VectorXd& w) {
  const int m = a.m();
  Eigen::MatrixXd r(a.n(), m);
  for (int k = 0; k < a.n(); ++k)
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) s += a(k, i, j) * w[j];
      r(k, i) = s;
    }
  return r;
}

void check_action_dims(const GL1Elem& x, const ProlongedValue& p) {
  if (p.value.size() != x.m() || p.covderiv.rows() != x.m() || p.covderiv.cols() != x.m())
    throw DomainError("g1_action_on_value: dimension mismatch");
}

}  // namespace

ProlongedValue g1_action_on_value(const GL1Elem& x, const ProlongedValue& p) {
  check_action_dims(x, p);
  const Eigen::MatrixXd inv = checked_inverse(x.g, "group element");
  Eigen::VectorXd w = inv * p.value;
  Eigen::MatrixXd n = inv * p.covderiv * x.g + contract_last(x.a, w);
  return {std::move(w), std::move(n)};
}

ProlongedValue g1_action_on_value_literal(const GL1Elem& x, const ProlongedValue& p) {
  check_action_dims(x, p);
  const Eigen::MatrixXd inv = checked_inverse(x.g, "group element");
  Eigen::MatrixXd n = inv * (p.covderiv + contract_last(x.a, p.value)) * x.g;
  return {inv * p.value, std::move(n)};
}

ZeroSearch find_zero(const PolyVectorField& v, const Eigen::VectorXd& seed) {
  if (seed.size() != v.m()) throw DomainError("find_zero: seed dimension mismatch");
  ZeroSearch z;
  z.x = seed;
  for (int it = 0;; ++it) {
    const Eigen::VectorXd val = v(z.x);
    z.residual = val.size() ? val.cwiseAbs().maxCoeff() : 0.0;
    z.iterations = it;
    if (z.residual <= kZeroTol) {
      z.converged = true;
      z.message = "converged";
      return z;
    }
    if (it == kNewtonMaxIter) {
      z.message = "no convergence after " + std::to_string(kNewtonMaxIter) + " Newton steps";
      return z;
    }
    const Eigen::MatrixXd jac = v.jacobian(z.x);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    if (!(std::abs(lu.determinant()) > kInvertEps)) {
      z.message = "Jacobian singular at iterate; no isolated zero reachable from here (regular point?)";
      return z;
    }
    z.x -= lu.solve(val);
    if (!z.x.allFinite()) {
      z.message = "Newton iterate diverged";
      return z;
    }
  }
}

std::vector<double> charpoly(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw DomainError("charpoly: matrix is not square");
  const auto n = a.rows();
  std::vector<double> c{1.0};
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    const Eigen::MatrixXd am = a * m;
    const double ck = -am.trace() / static_cast<double>(k) + 0.0;  // no -0
    c.push_back(ck);
    m = am;
    m.diagonal().array() += ck;
  }
  return c;
}

bool operator==(const SingularityReport& a, const SingularityReport& b) {
  return a.x0 == b.x0 && a.residual == b.residual && a.regular == b.regular && a.linearization == b.linearization &&
         a.charpoly == b.charpoly && a.trace == b.trace && a.det == b.det && a.note == b.note;
}

SingularityReport analyze(const PolyVectorField& v, const Eigen::VectorXd& x0) {
  if (x0.size() != v.m()) throw DomainError("analyze: point dimension mismatch");
  SingularityReport r;
  r.x0 = x0;
  r.residual = v(x0).norm();
  if (r.residual > kRegularTol) {
    r.regular = true;
    r.note = "regular point: V(x0) != 0, so V is locally equivalent to d/dx1 and has no first-order invariants";
    return r;
  }
  const int m = v.m();
  r.linearization = v.jacobian(x0);
  r.charpoly = charpoly(r.linearization);
  r.trace = -r.charpoly[1] + 0.0;
  r.det = (m % 2 == 0 ? 1.0 : -1.0) * r.charpoly[static_cast<std::size_t>(m)] + 0.0;
  r.note = "singular point: invariants are those of the linearization under conjugation";
  return r;
}

std::string to_string(Verdict v) {
  return v == Verdict::Distinguished ? "distinguished" : "not-distinguished-at-order-1";
}

namespace {

using Cplx = std::complex<double>;

std::vector<std::vector<Cplx>> cluster(std::vector<Cplx> ev, double tol) {
  // single linkage
  std::vector<std::vector<Cplx>> groups;
  std::vector<bool> used(ev.size(), false);
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (used[i]) continue;
    std::vector<Cplx> g{ev[i]};
    used[i] = true;
    for (std::size_t front = 0; front < g.size(); ++front)
      for (std::size_t j = 0; j < ev.size(); ++j)
        if (!used[j] && std::abs(ev[j] - g[front]) <= tol) {
          used[j] = true;
          g.push_back(ev[j]);
        }
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace

Comparison distinguishable(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DomainError("distinguishable: matrices must be square of the same size");
  const auto n = a.rows();
  const auto ca = charpoly(a);
  const auto cb = charpoly(b);
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (std::abs(ca[i] - cb[i]) > kCharpolyTol)
      return {Verdict::Distinguished, "characteristic polynomials differ in coefficient " + std::to_string(i)};
  if (n == 0) return {Verdict::NotDistinguishedAtOrder1, "empty matrices"};

  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  std::vector<Cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  const Eigen::MatrixXcd ac = a.cast<Cplx>();
  const Eigen::MatrixXcd bc = b.cast<Cplx>();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  for (const auto& g : cluster(ev, kEigenClusterTol)) {
    const Cplx lambda = std::accumulate(g.begin(), g.end(), Cplx{}) / static_cast<double>(g.size());
    const Eigen::MatrixXcd sa = ac - lambda * id;
    const Eigen::MatrixXcd sb = bc - lambda * id;
    // A power that is pure round-off (nilpotent part) must not set its own scale.
    const double base = std::max(sa.operatorNorm(), sb.operatorNorm());
    Eigen::MatrixXcd pa = id;
    Eigen::MatrixXcd pb = id;
    double scale = 1.0;
    for (Eigen::Index k = 1; k <= n; ++k) {
      pa = pa * sa;
      pb = pb * sb;
      scale *= base;
      const int ra = numerical_rank(pa, kSimilarityRankTol, scale);
      const int rb = numerical_rank(pb, kSimilarityRankTol, scale);
      if (ra != rb) {
        return {Verdict::Distinguished, "rank of (A - lambda I)^" + std::to_string(k) + " differs (" +
                                            std::to_string(ra) + " vs " + std::to_string(rb) + ")"};
      }
    }
  }
  return {Verdict::NotDistinguishedAtOrder1, "similar linearizations: first-order invariants agree"};
}

std::vector<SeedAnalysis> analyze_seeds(const PolyVectorField& v, const std::vector<Eigen::VectorXd>& seeds,
                                        Exec exec) {
  std::vector<SeedAnalysis> out(seeds.size());
  std::vector<std::string> errors(seeds.size());
  const auto body = [&](std::size_t i) {
    try {
      out[i].zero = find_zero(v, seeds[i]);
      if (out[i].zero.converged) out[i].report = analyze(v, out[i].zero.x);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(seeds.size()); ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < seeds.size(); ++i) body(i);
  }
  for (const auto& e : errors)
    if (!e.empty()) throw DomainError(e);
  return out;
}

}  // namespace jetforge
