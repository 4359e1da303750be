#include "jetforge/group_prolong.hpp"

#include <algorithm>
#include <cmath>

#include "jetforge/errors.hpp"

namespace jetforge {

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::GL: return "GL";
    case GroupKind::SL: return "SL";
    case GroupKind::O: return "O";
    case GroupKind::CO: return "CO";
    case GroupKind::DIAG: return "DIAG";
    case GroupKind::CUSTOM: return "CUSTOM";
  }
  return "?";
}

GroupKind group_kind_from_string(const std::string& s) {
  for (GroupKind k : {GroupKind::GL, GroupKind::SL, GroupKind::O, GroupKind::CO, GroupKind::DIAG, GroupKind::CUSTOM})
    if (to_string(k) == s) return k;
  throw DomainError("unknown group name '" + s + "'");
}

namespace {

MatrixLieAlgebra algebra_for(GroupKind kind, int m) {
  switch (kind) {
    case GroupKind::GL: return MatrixLieAlgebra::gl(m);
    case GroupKind::SL: return MatrixLieAlgebra::sl(m);
    case GroupKind::O: return MatrixLieAlgebra::o(m);
    case GroupKind::CO: return MatrixLieAlgebra::co(m);
    case GroupKind::DIAG: return MatrixLieAlgebra::diagonal(m);
    case GroupKind::CUSTOM: break;
  }
  throw DomainError("CUSTOM groups need an explicit algebra");
}

double invertibility_residual(const Eigen::MatrixXd& g) {
  // 0 when invertible; a singular matrix gets 1 so that no membership tolerance accepts it
  return std::abs(g.determinant()) > kInvertEps ? 0.0 : 1.0;
}

}  // namespace

GroupDescriptor::GroupDescriptor(GroupKind kind, int m, bool holonomic)
    : kind_(kind), holonomic_(holonomic), algebra_(algebra_for(kind, m)), prolongation_(first_prolongation(algebra_)) {}

GroupDescriptor::GroupDescriptor(MatrixLieAlgebra algebra, bool holonomic)
    : kind_(GroupKind::CUSTOM),
      holonomic_(holonomic),
      algebra_(std::move(algebra)),
      prolongation_(first_prolongation(algebra_)) {
  warnings_.push_back("CUSTOM group: first slot checked for invertibility only");
}

double GroupDescriptor::member_residual(const Eigen::MatrixXd& g) const {
  const int n = m();
  if (g.rows() != n || g.cols() != n) throw DomainError("member_residual: shape mismatch");
  const double inv = invertibility_residual(g);
  if (inv > 0.0) return inv;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  switch (kind_) {
    case GroupKind::GL:
    case GroupKind::CUSTOM:
      return 0.0;
    case GroupKind::SL:
      return std::abs(g.determinant() - 1.0);
    case GroupKind::O:
      return (g.transpose() * g - id).cwiseAbs().maxCoeff();
    case GroupKind::CO: {
      const Eigen::MatrixXd gram = g.transpose() * g;
      const double lambda = gram.trace() / n;
      return (gram / lambda - id).cwiseAbs().maxCoeff();
    }
    case GroupKind::DIAG: {
      Eigen::MatrixXd off = g;
      off.diagonal().setZero();
      return off.cwiseAbs().maxCoeff();
    }
  }
  return 0.0;
}

double GroupDescriptor::slot_residual(const Cube& a) const {
  if (a.m() != m() || a.n() != m()) throw DomainError("slot_residual: dimension mismatch");
  if (holonomic_) return std::max(a.asymmetry(), distance(prolongation_, symmetrize(a)));
  double worst = 0.0;
  for (int j = 0; j < m(); ++j) worst = std::max(worst, algebra_.distance(slice_last(a, j)));
  return worst;
}

G1Elem::G1Elem(GroupRef grp, GL1Elem value, double tol) : grp_(std::move(grp)), value_(std::move(value)) {
  if (!grp_) throw DomainError("G1Elem: null group");
  if (value_.m() != grp_->m()) throw DomainError("G1Elem: dimension mismatch");
  const double r1 = grp_->member_residual(value_.g);
  if (r1 > tol) throw ConsistencyError("G1Elem: first slot not in " + to_string(grp_->kind()), r1);
  const double r2 = grp_->slot_residual(value_.a);
  if (r2 > tol) throw ConsistencyError("G1Elem: second slot outside the prolonged algebra", r2);
}

G1Elem G1Elem::identity(GroupRef grp) {
  const int m = grp->m();
  return G1Elem(std::move(grp), GL1Elem::identity(m));
}

G1Elem g1_mul(const G1Elem& x, const G1Elem& y) {
  if (x.group_ref() != y.group_ref()) throw DomainError("g1_mul: elements belong to different groups");
  return G1Elem(x.group_ref(), gl1_mul(x.value(), y.value()), kClosureTol);
}

G1Elem g1_inv(const G1Elem& x) { return G1Elem(x.group_ref(), gl1_inv(x.value()), kClosureTol); }

Eigen::MatrixXd project_p1(const G1Elem& x) { return x.g(); }

G1Elem split_s(const Eigen::MatrixXd& g, GroupRef grp) {
  if (!grp->is_member(g)) throw DomainError("split_s: matrix is not in " + to_string(grp->kind()));
  const int m = grp->m();
  return G1Elem(std::move(grp), GL1Elem(g, Cube(m, m)));
}

bool g1_membership(const D2Elem& phi, const GroupDescriptor& grp, double tol) {
  const AlgebraicCoords c = to_algebraic(phi);
  return grp.is_member(c.g, tol) && distance(grp.prolongation(), c.t) <= tol;
}

}  // namespace jetforge
