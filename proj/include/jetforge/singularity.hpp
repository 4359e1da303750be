#pragma once

// First-order invariants of a polynomial vector field at its zeros.
//
// A frame eta at x with connection coefficients Gamma^k_ij is sent to
// (V, nabla V) = (V^i, d_j V^i + Gamma^i_js V^s), written in the frame.
// GL1 acts on such pairs on the right:
//
//   (g, a) . (V, N) = (g^-1 V,  g^-1 N g + a(g^-1 V)),   a(w)^k_i = a^k_ij w^j
//
// so that act(x, act(y, p)) == act(gl1_mul(y, x), p). At V = 0 this is
// conjugation N -> g^-1 N g, whose invariants are the similarity invariants
// of the linearization.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "jetforge/diffgroup.hpp"
#include "jetforge/exec.hpp"
#include "jetforge/polynomial.hpp"

namespace jetforge {

inline constexpr double kZeroTol = 1e-12;        // Newton stopping rule, |V|_inf
inline constexpr double kRegularTol = 1e-9;      // |V(x0)| above this is a regular point
inline constexpr int kNewtonMaxIter = 100;
inline constexpr double kCharpolyTol = 1e-8;     // per coefficient
inline constexpr double kEigenClusterTol = 1e-6;
inline constexpr double kSimilarityRankTol = 1e-8;

inline constexpr const char* kActionConvention =
    "right action (g,a).(V,N) = (g^-1 V, g^-1 N g + a(g^-1 V)); act(x, act(y, p)) = act(gl1_mul(y, x), p)";

class PolyVectorField {
 public:
  explicit PolyVectorField(PolyMap components);

  int m() const noexcept { return field_.m(); }
  const PolyMap& components() const noexcept { return field_; }
  Eigen::VectorXd operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const { return field_.evaluate(x); }
  Eigen::MatrixXd jacobian(const Eigen::Ref<const Eigen::VectorXd>& x) const { return field_.jacobian(x); }

 private:
  PolyMap field_;
};

struct FramedPoint {
  Eigen::VectorXd x;
  Eigen::MatrixXd frame;  // coframe eta, invertible
  Cube gamma;             // gamma(k, i, j) = Gamma^k_ij
};

struct ProlongedValue {
  Eigen::VectorXd value;
  Eigen::MatrixXd covderiv;
};

/// frame * V(x)
Eigen::VectorXd evaluate_f(const Eigen::MatrixXd& frame, const PolyVectorField& v, const Eigen::VectorXd& x);

/// (eta V, eta N eta^-1) with N_ij = d_j V^i + Gamma^i_js V^s.
ProlongedValue prolong_f1(const FramedPoint& b, const PolyVectorField& v);

/// The right action above.
ProlongedValue g1_action_on_value(const GL1Elem& x, const ProlongedValue& p);

/// The displayed coordinate formula read literally:
/// (g^-1 V, g^-1 N g + g^-1 a(V) g). Equals g1_action_on_value when V = 0,
/// and in general equals g1_action_on_value with a replaced by g.a.
ProlongedValue g1_action_on_value_literal(const GL1Elem& x, const ProlongedValue& p);

struct ZeroSearch {
  bool converged = false;
  Eigen::VectorXd x;
  double residual = 0.0;  // |V(x)|_inf at the returned iterate
  int iterations = 0;
  std::string message;
};

/// Newton iteration from seed.
ZeroSearch find_zero(const PolyVectorField& v, const Eigen::VectorXd& seed);

struct SingularityReport {
  Eigen::VectorXd x0;
  double residual = 0.0;  // |V(x0)|_2
  bool regular = false;
  Eigen::MatrixXd linearization;  // L_ij = d_j V^i(x0); empty when regular
  std::vector<double> charpoly;   // monic, highest degree first
  double trace = 0.0;
  double det = 0.0;
  std::string note;

  friend bool operator==(const SingularityReport& a, const SingularityReport& b);
};

SingularityReport analyze(const PolyVectorField& v, const Eigen::VectorXd& x0);

/// Faddeev-LeVerrier; returns [1, c_1, ..., c_m] for det(lambda I - a).
std::vector<double> charpoly(const Eigen::MatrixXd& a);

enum class Verdict { Distinguished, NotDistinguishedAtOrder1 };

std::string to_string(Verdict v);

struct Comparison {
  Verdict verdict = Verdict::NotDistinguishedAtOrder1;
  std::string reason;
};

/// Decides similarity of two linearizations; never claims equivalence.
Comparison distinguishable(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct SeedAnalysis {
  ZeroSearch zero;
  std::optional<SingularityReport> report;
};

/// find_zero then analyze, once per seed; output in seed order.
std::vector<SeedAnalysis> analyze_seeds(const PolyVectorField& v, const std::vector<Eigen::VectorXd>& seeds,
                                        Exec exec = Exec::Parallel);

}  // namespace jetforge
