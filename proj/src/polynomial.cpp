#include "jetforge/polynomial.hpp"

#include <cstdio>
#include <numeric>

#include "jetforge/errors.hpp"

namespace jetforge {

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int var) {
  if (var < 0 || var >= nvars) throw DomainError("Polynomial::variable: index out of range");
  Polynomial p(nvars);
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(var)] = 1;
  p.add_term(e, 1.0);
  return p;
}

int Polynomial::degree() const noexcept {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

void Polynomial::add_term(const Exponents& e, double c) {
  if (static_cast<int>(e.size()) != nvars_) throw DomainError("Polynomial: exponent length mismatch");
  for (int x : e)
    if (x < 0) throw DomainError("Polynomial: negative exponent");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != nvars_) throw DomainError("Polynomial::evaluate: point dimension mismatch");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (int v = 0; v < nvars_; ++v)
      for (int p = 0; p < e[static_cast<std::size_t>(v)]; ++p) t *= x[v];
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw DomainError("Polynomial::derivative: variable out of range");
  Polynomial d(nvars_);
  for (const auto& [e, c] : terms_) {
    const int p = e[static_cast<std::size_t>(var)];
    if (p == 0) continue;
    Exponents f = e;
    f[static_cast<std::size_t>(var)] = p - 1;
    d.add_term(f, c * p);
  }
  return d;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("Polynomial *: variable count mismatch");
  Polynomial r(a.nvars_);
  Polynomial::Exponents e(static_cast<std::size_t>(a.nvars_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw DomainError("Polynomial::pow: negative exponent");
  Polynomial r = constant(nvars_, 1.0);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& q) const {
  if (static_cast<int>(q.size()) != nvars_) throw DomainError("Polynomial::compose: arity mismatch");
  const int out_vars = q.empty() ? 0 : q.front().nvars();
  for (const auto& qi : q)
    if (qi.nvars() != out_vars) throw DomainError("Polynomial::compose: inner variable counts differ");

  // Powers of each inner component, built once.
  std::vector<std::vector<Polynomial>> powers(q.size());
  for (std::size_t v = 0; v < q.size(); ++v) {
    int maxp = 0;
    for (const auto& [e, c] : terms_) maxp = std::max(maxp, e[v]);
    powers[v].push_back(constant(out_vars, 1.0));
    for (int p = 1; p <= maxp; ++p) powers[v].push_back(powers[v].back() * q[v]);
  }

  Polynomial r(out_vars);
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(out_vars, c);
    for (std::size_t v = 0; v < q.size(); ++v)
      if (e[v] > 0) t = t * powers[v][static_cast<std::size_t>(e[v])];
    r += t;
  }
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ != o.nvars_) throw DomainError("Polynomial +: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ != o.nvars_) throw DomainError("Polynomial -: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  char buf[40];
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::snprintf(buf, sizeof buf, "%.17g", first ? c : std::abs(c));
    if (!first) out += c < 0 ? " - " : " + ";
    out += buf;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      out += "*x" + std::to_string(v + 1);
      if (e[v] > 1) out += "^" + std::to_string(e[v]);
    }
    first = false;
  }
  return out;
}

PolyMap::PolyMap(int m, std::vector<Polynomial> components) : m_(m), components_(std::move(components)) {
  for (const auto& p : components_)
    if (p.nvars() != m_) throw DomainError("PolyMap: component variable count != m");
}

PolyMap PolyMap::identity(int m) {
  std::vector<Polynomial> c;
  for (int i = 0; i < m; ++i) c.push_back(Polynomial::variable(m, i));
  return PolyMap(m, std::move(c));
}

PolyMap PolyMap::linear(const Eigen::MatrixXd& a) {
  const int m = static_cast<int>(a.cols());
  std::vector<Polynomial> c;
  for (int k = 0; k < a.rows(); ++k) {
    Polynomial p(m);
    for (int i = 0; i < m; ++i) p += Polynomial::variable(m, i) * a(k, i);
    c.push_back(std::move(p));
  }
  return PolyMap(m, std::move(c));
}

int PolyMap::degree() const noexcept {
  int d = 0;
  for (const auto& p : components_) d = std::max(d, p.degree());
  return d;
}

Eigen::VectorXd PolyMap::evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd y(n());
  for (int k = 0; k < n(); ++k) y[k] = components_[static_cast<std::size_t>(k)].evaluate(x);
  return y;
}

Eigen::MatrixXd PolyMap::jacobian(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::MatrixXd j(n(), m_);
  for (int k = 0; k < n(); ++k)
    for (int i = 0; i < m_; ++i) j(k, i) = components_[static_cast<std::size_t>(k)].derivative(i).evaluate(x);
  return j;
}

std::vector<std::string> PolyMap::to_strings() const {
  std::vector<std::string> s;
  for (const auto& p : components_) s.push_back(p.to_string());
  return s;
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
  if (outer.m() != inner.n()) throw DomainError("compose(PolyMap): outer.m != inner.n");
  std::vector<Polynomial> c;
  for (const auto& p : outer.components()) c.push_back(p.compose(inner.components()));
  return PolyMap(inner.m(), std::move(c));
}

}  // namespace jetforge
