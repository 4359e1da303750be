#pragma once

// G1 = G x Hom(R^m, g) with the GL1 product restricted to it, the exact
// sequence  0 -> Hom(R^m, g) -> G1 -> G  and its splitting s(g) = (g, 0).

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "jetforge/diffgroup.hpp"
#include "jetforge/lie_prolong.hpp"

namespace jetforge {

enum class GroupKind { GL, SL, O, CO, DIAG, CUSTOM };

std::string to_string(GroupKind k);
GroupKind group_kind_from_string(const std::string& s);

/// Membership tolerance for matrix predicates and slot constraints.
inline constexpr double kMemberTol = 1e-9;
/// Residual above which a G1 product is reported as leaving the group.
inline constexpr double kClosureTol = 1e-8;

class GroupDescriptor {
 public:
  /// Built-in group; the algebra is fixed by the kind.
  GroupDescriptor(GroupKind kind, int m, bool holonomic = true);
  /// CUSTOM: only the algebra is known.
  GroupDescriptor(MatrixLieAlgebra algebra, bool holonomic = true);

  GroupKind kind() const noexcept { return kind_; }
  int m() const noexcept { return algebra_.m(); }
  bool holonomic() const noexcept { return holonomic_; }
  const MatrixLieAlgebra& algebra() const noexcept { return algebra_; }
  const ProlongationBasis& prolongation() const noexcept { return prolongation_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Residual of the defining predicate for g (0 = member). CUSTOM only checks invertibility.
  double member_residual(const Eigen::MatrixXd& g) const;
  bool is_member(const Eigen::MatrixXd& g, double tol = kMemberTol) const { return member_residual(g) <= tol; }

  /// Distance of the second slot from the allowed space: g^(1) in holonomic
  /// mode (plus asymmetry), Hom(R^m, g) otherwise.
  double slot_residual(const Cube& a) const;

 private:
  GroupKind kind_;
  bool holonomic_;
  MatrixLieAlgebra algebra_;
  ProlongationBasis prolongation_;
  std::vector<std::string> warnings_;
};

using GroupRef = std::shared_ptr<const GroupDescriptor>;

class G1Elem {
 public:
  /// Throws ConsistencyError if either membership fails beyond tol.
  G1Elem(GroupRef grp, GL1Elem value, double tol = kMemberTol);

  static G1Elem identity(GroupRef grp);

  const GroupDescriptor& group() const noexcept { return *grp_; }
  const GroupRef& group_ref() const noexcept { return grp_; }
  const GL1Elem& value() const noexcept { return value_; }
  const Eigen::MatrixXd& g() const noexcept { return value_.g; }
  const Cube& a() const noexcept { return value_.a; }

 private:
  GroupRef grp_;
  GL1Elem value_;
};

/// Product in G1; throws ConsistencyError if the result leaves G1 by more than kClosureTol.
G1Elem g1_mul(const G1Elem& x, const G1Elem& y);
G1Elem g1_inv(const G1Elem& x);

/// p1(g, a) = g
Eigen::MatrixXd project_p1(const G1Elem& x);

/// s(g) = (g, 0). Throws DomainError for non-members.
G1Elem split_s(const Eigen::MatrixXd& g, GroupRef grp);

/// Whether a D^2(m) element lies in G^1: linear part in G, algebraic second slot in g^(1).
bool g1_membership(const D2Elem& phi, const GroupDescriptor& grp, double tol = kMemberTol);

}  // namespace jetforge
