#include "jetforge/lie_prolong.hpp"

#include <algorithm>

#include "jetforge/errors.hpp"
#include "jetforge/linalg.hpp"

namespace jetforge {
namespace {

Eigen::VectorXd vec(const Eigen::MatrixXd& x) { return Eigen::Map<const Eigen::VectorXd>(x.data(), x.size()); }

Eigen::MatrixXd unit(int m, int r, int c) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, m);
  e(r, c) = 1.0;
  return e;
}

}  // namespace

MatrixLieAlgebra::MatrixLieAlgebra(int m, std::vector<Eigen::MatrixXd> basis) : m_(m), basis_(std::move(basis)) {
  if (m < 1) throw DomainError("MatrixLieAlgebra: m must be positive");
  const int d = dim();
  Eigen::MatrixXd stacked(m * m, d);
  for (int b = 0; b < d; ++b) {
    const auto& x = basis_[static_cast<std::size_t>(b)];
    if (x.rows() != m || x.cols() != m) throw DomainError("MatrixLieAlgebra: basis matrix is not m x m");
    stacked.col(b) = vec(x);
  }
  if (d == 0) {
    span_ = Eigen::MatrixXd(m * m, 0);
    return;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s[0] == 0.0 || s[d - 1] <= kProlongRankTol * s[0]) {
    throw DomainError("MatrixLieAlgebra: basis matrices are linearly dependent");
  }
  span_ = svd.matrixU().leftCols(d);
}

MatrixLieAlgebra MatrixLieAlgebra::gl(int m) {
  std::vector<Eigen::MatrixXd> b;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) b.push_back(unit(m, r, c));
  return MatrixLieAlgebra(m, std::move(b));
}

MatrixLieAlgebra MatrixLieAlgebra::sl(int m) {
  std::vector<Eigen::MatrixXd> b;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      if (r != c) b.push_back(unit(m, r, c));
  for (int r = 0; r + 1 < m; ++r) b.push_back(unit(m, r, r) - unit(m, m - 1, m - 1));
  return MatrixLieAlgebra(m, std::move(b));
}

MatrixLieAlgebra MatrixLieAlgebra::o(int m) {
  std::vector<Eigen::MatrixXd> b;
  for (int r = 0; r < m; ++r)
    for (int c = r + 1; c < m; ++c) b.push_back(unit(m, r, c) - unit(m, c, r));
  return MatrixLieAlgebra(m, std::move(b));
}

MatrixLieAlgebra MatrixLieAlgebra::co(int m) {
  std::vector<Eigen::MatrixXd> b = o(m).basis();
  b.push_back(Eigen::MatrixXd::Identity(m, m));
  return MatrixLieAlgebra(m, std::move(b));
}

MatrixLieAlgebra MatrixLieAlgebra::diagonal(int m) {
  std::vector<Eigen::MatrixXd> b;
  for (int r = 0; r < m; ++r) b.push_back(unit(m, r, r));
  return MatrixLieAlgebra(m, std::move(b));
}

MatrixLieAlgebra MatrixLieAlgebra::zero(int m) { return MatrixLieAlgebra(m, {}); }

MatrixLieAlgebra MatrixLieAlgebra::builtin(const std::string& name, int m) {
  if (name == "gl") return gl(m);
  if (name == "sl") return sl(m);
  if (name == "o") return o(m);
  if (name == "co") return co(m);
  if (name == "diag") return diagonal(m);
  if (name == "zero") return zero(m);
  throw DomainError("unknown built-in algebra '" + name + "'");
}

double MatrixLieAlgebra::distance(const Eigen::MatrixXd& x) const {
  if (x.rows() != m_ || x.cols() != m_) throw DomainError("MatrixLieAlgebra::distance: shape mismatch");
  const Eigen::VectorXd v = vec(x);
  return (v - span_ * (span_.transpose() * v)).norm();
}

double MatrixLieAlgebra::closure_defect() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < basis_.size(); ++a)
    for (std::size_t b = a + 1; b < basis_.size(); ++b) {
      const Eigen::MatrixXd br = basis_[a] * basis_[b] - basis_[b] * basis_[a];
      worst = std::max(worst, distance(br));
    }
  return worst;
}

Eigen::MatrixXd slice_last(const SymCube& t, int j) {
  Eigen::MatrixXd s(t.n(), t.m());
  for (int k = 0; k < t.n(); ++k)
    for (int i = 0; i < t.m(); ++i) s(k, i) = t(k, i, j);
  return s;
}

Eigen::MatrixXd slice_last(const Cube& a, int j) {
  Eigen::MatrixXd s(a.n(), a.m());
  for (int k = 0; k < a.n(); ++k)
    for (int i = 0; i < a.m(); ++i) s(k, i) = a(k, i, j);
  return s;
}

Eigen::MatrixXd prolongation_constraints(const MatrixLieAlgebra& g) {
  const int m = g.m();
  const int mm = m * m;
  const auto unknowns = static_cast<Eigen::Index>(m * pair_count(m));
  const Eigen::MatrixXd& q = g.orthonormal_span();
  const Eigen::MatrixXd perp = Eigen::MatrixXd::Identity(mm, mm) - q * q.transpose();

  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m) * mm, unknowns);
  for (int j = 0; j < m; ++j) {
    // selector: vec(t(., ., j)) = S_j * t.data(); vec is column-major, entry (k, i) -> k + i*m
    Eigen::MatrixXd sel = Eigen::MatrixXd::Zero(mm, unknowns);
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        sel(k + i * m, static_cast<Eigen::Index>(k * pair_count(m) + pair_offset(i, j, m))) = 1.0;
    c.middleRows(static_cast<Eigen::Index>(j) * mm, mm) = perp * sel;
  }
  return c;
}

ProlongationBasis first_prolongation(const MatrixLieAlgebra& g) {
  const int m = g.m();
  // The blocks are orthogonal projectors, so the nonzero singular values are O(1);
  // a floor of 1 keeps projector round-off (gl(m): P_perp ~ 1e-16) out of the rank.
  const Eigen::MatrixXd ns = null_space(prolongation_constraints(g), kProlongRankTol, 1.0);
  ProlongationBasis out;
  out.m = m;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) {
    std::vector<double> d(ns.col(c).data(), ns.col(c).data() + ns.rows());
    out.elements.emplace_back(m, m, std::move(d));
  }
  return out;
}

double distance(const ProlongationBasis& p, const SymCube& t) {
  if (t.m() != p.m || t.n() != p.m) throw DomainError("prolongation distance: dimension mismatch");
  const auto len = static_cast<Eigen::Index>(t.data().size());
  const Eigen::Map<const Eigen::VectorXd> v(t.data().data(), len);
  if (p.elements.empty()) return v.norm();
  Eigen::MatrixXd a(len, p.dim());
  for (int c = 0; c < p.dim(); ++c) {
    const auto& e = p.elements[static_cast<std::size_t>(c)];
    a.col(c) = Eigen::Map<const Eigen::VectorXd>(e.data().data(), len);
  }
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(v);
  return (a * x - v).norm();
}

bool contains(const ProlongationBasis& p, const SymCube& t, double tol) { return distance(p, t) <= tol; }

double membership_residual(const MatrixLieAlgebra& g, const SymCube& t) {
  double worst = 0.0;
  for (int j = 0; j < t.m(); ++j) worst = std::max(worst, g.distance(slice_last(t, j)));
  return worst;
}

}  // namespace jetforge
