#pragma once

// Second-order coframe bundle B^2(M) over a manifold given as a union of
// boxes in R^m with polynomial charts.
//
// A point of B^2 over x is j^2_x f for a pointed local diffeomorphism
// f : (M, x) -> (R^m, 0). In a chart u its natural coordinates are the
// derivatives of u o f^-1 at 0 (the "u-coordinates"); its algebraic
// coordinates are p_i = u_i, p_ij = u^-1 u_ij. D^2(m) acts on the right by
// jet composition. Changing chart a -> b multiplies on the left by the
// gluing jet of the transition u_b o u_a^-1.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetforge/diffgroup.hpp"
#include "jetforge/exec.hpp"
#include "jetforge/group_prolong.hpp"
#include "jetforge/polynomial.hpp"

namespace jetforge {

struct Box {
  std::vector<std::pair<double, double>> bounds;  // [lo, hi] per axis

  int dim() const noexcept { return static_cast<int>(bounds.size()); }
  bool contains(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  bool empty() const noexcept;
  /// Component-wise intersection (may be empty).
  Box intersect(const Box& other) const;
};

struct Chart {
  std::string id;
  Box domain;
  PolyMap map;  // m -> m
};

struct Overlap {
  std::string from;
  std::string to;
  PolyMap transition;  // u_to o u_from^-1, in the coordinates of `from`
};

inline constexpr int kDefaultSamples = 9;
inline constexpr double kTransitionInverseTol = 1e-8;

class PolyAtlas {
 public:
  /// Validates charts (Jacobian invertible on a 5^m grid) and overlaps
  /// (consistent with the chart maps, invertible, mutually inverse when both
  /// directions are present). Throws DomainError on failure.
  PolyAtlas(int m, std::vector<Chart> charts, std::vector<Overlap> overlaps);

  int m() const noexcept { return m_; }
  const std::vector<Chart>& charts() const noexcept { return charts_; }
  const std::vector<Overlap>& overlaps() const noexcept { return overlaps_; }

  const Chart& chart(const std::string& id) const;
  /// Transition from -> to; identity when from == to; nullopt when not supplied.
  std::optional<PolyMap> transition(const std::string& from, const std::string& to) const;

 private:
  int m_;
  std::vector<Chart> charts_;
  std::vector<Overlap> overlaps_;
};

enum class CoordMode { Natural, Algebraic };

struct CoframePoint {
  std::string chart;
  Eigen::VectorXd x;
  CoordMode mode = CoordMode::Natural;
  Eigen::MatrixXd first;  // u^k_i or p^k_i
  SymCube second;         // u^k_ij or p^k_ij

  int m() const noexcept { return static_cast<int>(first.rows()); }
};

/// The natural frame of order two: (delta, 0). Throws DomainError outside the chart domain.
CoframePoint natural_section(const PolyAtlas& atlas, const std::string& chart, const Eigen::VectorXd& x,
                             CoordMode mode = CoordMode::Natural);

/// Right action b . phi in the point's own coordinate mode.
CoframePoint d2_action(const CoframePoint& b, const D2Elem& phi);

CoframePoint convert_coords(const CoframePoint& b, CoordMode target);

/// From the derivatives (f_i, f_ij) of f o u^-1 at u(x):
///   p_i = f~_i,   p^k_ij = -f^k_lm f~^l_i f~^m_j
AlgebraicCoords chart_derivatives_to_algebraic(const Eigen::MatrixXd& f1, const SymCube& f2);
/// Inverse:  f_i = p~_i,   f^k_ij = -p^k_lm p~^l_i p~^m_j
std::pair<Eigen::MatrixXd, SymCube> algebraic_to_chart_derivatives(const Eigen::MatrixXd& p1, const SymCube& p2);

/// First and second derivatives of the transition from -> to at u_from(x).
D2Elem gluing_jet(const PolyAtlas& atlas, const std::string& from, const std::string& to, const Eigen::VectorXd& x);

/// The same bundle point expressed in chart `to`.
CoframePoint change_chart(const PolyAtlas& atlas, const CoframePoint& b, const std::string& to);

/// Deterministic stratified samples inside a box.
std::vector<Eigen::VectorXd> sample_points(const Box& box, int count, std::uint64_t seed);

struct CocycleReport {
  std::string a, b, c;
  double tol = kTestEps;
  std::vector<Eigen::VectorXd> points;
  std::vector<double> residuals;
  double max_residual = 0.0;
  bool skipped = false;
  std::string notice;

  bool passed() const noexcept { return skipped || max_residual <= tol; }
};

/// Checks glue(b->c) * glue(a->b) == glue(a->c) on samples of the triple overlap.
CocycleReport cocycle_check(const PolyAtlas& atlas, const std::string& a, const std::string& b, const std::string& c,
                            int samples = kDefaultSamples, std::uint64_t seed = 0, double tol = kTestEps,
                            Exec exec = Exec::Parallel);

/// Every ordered triple of charts for which all three transitions exist.
std::vector<CocycleReport> cocycle_check_all(const PolyAtlas& atlas, int samples = kDefaultSamples,
                                             std::uint64_t seed = 0, double tol = kTestEps,
                                             Exec exec = Exec::Parallel);

struct OverlapReduction {
  std::string from, to;
  std::size_t points = 0;
  double max_member_residual = 0.0;
  double max_slot_residual = 0.0;
  bool skipped = false;
  std::string notice;
  bool passed = true;
};

struct ReductionReport {
  std::string group;
  double tol = kMemberTol;
  std::vector<OverlapReduction> overlaps;

  bool integrable() const noexcept;
};

/// Whether every gluing jet on every overlap lies in G^1.
ReductionReport reduction_check(const PolyAtlas& atlas, const GroupDescriptor& grp, int samples = kDefaultSamples,
                                std::uint64_t seed = 0, double tol = kMemberTol, Exec exec = Exec::Parallel);

}  // namespace jetforge
