#pragma once

// Sparse multivariate polynomials with real coefficients and the
// polynomial maps built from them. Arithmetic and composition are symbolic
// (coefficient expansion), so derivatives of a composite are exact up to
// coefficient rounding.

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace jetforge {

class Polynomial {
 public:
  using Exponents = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, double c);
  /// The coordinate function x_{var+1} (var is 0-based).
  static Polynomial variable(int nvars, int var);

  int nvars() const noexcept { return nvars_; }
  const std::map<Exponents, double>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree() const noexcept;

  /// Adds c * x^e; drops the term if the coefficient becomes exactly zero.
  void add_term(const Exponents& e, double c);
  double coefficient(const Exponents& e) const;

  double evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Polynomial derivative(int var) const;

  /// this(q_1, ..., q_nvars); all q share one variable count.
  Polynomial compose(const std::vector<Polynomial>& q) const;

  Polynomial pow(int e) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a) { return a *= -1.0; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Text in the parser's grammar, coefficients at 17 significant digits.
  std::string to_string() const;

 private:
  int nvars_ = 0;
  std::map<Exponents, double> terms_;
};

/// A polynomial map R^m -> R^n.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(int m, std::vector<Polynomial> components);

  static PolyMap identity(int m);
  /// x -> a x (a is n x m).
  static PolyMap linear(const Eigen::MatrixXd& a);

  int m() const noexcept { return m_; }
  int n() const noexcept { return static_cast<int>(components_.size()); }
  const std::vector<Polynomial>& components() const noexcept { return components_; }
  const Polynomial& operator[](int k) const { return components_[static_cast<std::size_t>(k)]; }
  int degree() const noexcept;

  Eigen::VectorXd evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// n x m matrix of first partials at x.
  Eigen::MatrixXd jacobian(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  std::vector<std::string> to_strings() const;

 private:
  int m_ = 0;
  std::vector<Polynomial> components_;
};

/// outer o inner, expanded symbolically. Requires outer.m() == inner.n().
PolyMap compose(const PolyMap& outer, const PolyMap& inner);

}  // namespace jetforge
