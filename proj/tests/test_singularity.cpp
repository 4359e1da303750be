#include "doctest.h"

#include "jetforge/poly_parser.hpp"
#include "jetforge/singularity.hpp"
#include "support.hpp"

using namespace jetforge;

namespace {

PolyVectorField field(const std::vector<std::string>& c) {
  return PolyVectorField(parse_polymap(c, static_cast<int>(c.size())));
}

Eigen::Matrix2d mat(double a, double b, double c, double d) {
  Eigen::Matrix2d r;
  r << a, b, c, d;
  return r;
}

double diff(const ProlongedValue& a, const ProlongedValue& b) {
  return std::max((a.value - b.value).cwiseAbs().maxCoeff(), (a.covderiv - b.covderiv).cwiseAbs().maxCoeff());
}

ProlongedValue random_value(testing::Rng& rng, int m) {
  return {testing::random_matrix(rng, m, 1), testing::random_matrix(rng, m, m)};
}

}  // namespace

TEST_SUITE("singularity") {

TEST_CASE("evaluate in a frame") {
  PolyVectorField v = field({"x1", "-x2"});
  Eigen::Vector2d x(1, 1);
  CHECK(evaluate_f(Eigen::Matrix2d::Identity(), v, x) == Eigen::Vector2d(1, -1));
  testing::Rng rng(71);
  Eigen::MatrixXd eta = testing::random_invertible(rng, 2), g = testing::random_invertible(rng, 2);
  CHECK((evaluate_f(g * eta, v, x) - g * evaluate_f(eta, v, x)).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("prolongation examples") {
  SUBCASE("zero connection and identity frame give the Jacobian") {
    PolyVectorField v = field({"x1*x2", "x1^2 - x2"});
    Eigen::Vector2d x(0.5, 2.0);
    ProlongedValue r = prolong_f1({x, Eigen::Matrix2d::Identity(), Cube(2, 2)}, v);
    CHECK(r.covderiv == v.jacobian(x));
    CHECK(r.value == v(x));
  }
  SUBCASE("connection is invisible at a zero") {
    testing::Rng rng(72);
    PolyVectorField v = field({"x1", "-x2"});
    ProlongedValue r = prolong_f1({Eigen::Vector2d::Zero(), Eigen::Matrix2d::Identity(), testing::random_cube(rng, 2, 2)}, v);
    CHECK(r.covderiv == Eigen::MatrixXd(mat(1, 0, 0, -1)));
  }
  SUBCASE("constant field picks up the connection") {
    PolyVectorField v(PolyMap(2, {Polynomial::constant(2, 1.0), Polynomial::constant(2, 0.0)}));
    Cube gamma(2, 2);
    gamma(0, 0, 0) = 0.75;
    ProlongedValue r = prolong_f1({Eigen::Vector2d(3, -1), Eigen::Matrix2d::Identity(), gamma}, v);
    CHECK(r.covderiv(0, 0) == 0.75);
    CHECK(r.covderiv(1, 1) == 0.0);
  }
}

TEST_CASE("connection independence at zeros") {
  testing::Rng rng(73);
  PolyVectorField v = field({"x1 + x2^2", "-x2 + x1*x2"});
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd eta = testing::random_invertible(rng, 2);
    ProlongedValue base = prolong_f1({Eigen::Vector2d::Zero(), eta, Cube(2, 2)}, v);
    ProlongedValue r = prolong_f1({Eigen::Vector2d::Zero(), eta, testing::random_cube(rng, 2, 2)}, v);
    CHECK(r.covderiv == base.covderiv);
  }
}

TEST_CASE("group action on values") {
  testing::Rng rng(74);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + trial % 3;
    ProlongedValue p = random_value(rng, m);
    CHECK(diff(g1_action_on_value(GL1Elem::identity(m), p), p) == 0.0);
    GL1Elem x = testing::random_gl1(rng, m), y = testing::random_gl1(rng, m);
    CHECK(diff(g1_action_on_value(x, g1_action_on_value(y, p)), g1_action_on_value(gl1_mul(y, x), p)) <= 1e-10);

    // at V = 0 the a-slot is ignored and the action is conjugation
    ProlongedValue z{Eigen::VectorXd::Zero(m), p.covderiv};
    ProlongedValue r = g1_action_on_value(x, z);
    CHECK(r.value.isZero(0.0));
    CHECK(r.covderiv == g1_action_on_value(GL1Elem(x.g, Cube(m, m)), z).covderiv);
    CHECK((r.covderiv - x.g.inverse() * p.covderiv * x.g).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(diff(g1_action_on_value_literal(x, z), r) <= 1e-12);

    // the literal reading differs from the action by moving a through g
    GL1Elem moved(x.g, module_action(x.g, x.a));
    CHECK(diff(g1_action_on_value_literal(x, p), g1_action_on_value(moved, p)) <= 1e-10);
  }
}

TEST_CASE("framed prolongation is equivariant") {
  // changing the frame by g at a zero conjugates the covariant derivative
  testing::Rng rng(75);
  PolyVectorField v = field({"x1 - x2", "2*x2 + x1^2"});
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd eta = testing::random_invertible(rng, 2), g = testing::random_invertible(rng, 2);
    ProlongedValue p = prolong_f1({Eigen::Vector2d::Zero(), eta, Cube(2, 2)}, v);
    ProlongedValue q = prolong_f1({Eigen::Vector2d::Zero(), g.inverse() * eta, Cube(2, 2)}, v);
    CHECK(diff(g1_action_on_value(GL1Elem(g, Cube(2, 2)), p), q) <= 1e-10);
  }
}

TEST_CASE("find zero") {
  ZeroSearch a = find_zero(field({"x1", "-x2"}), Eigen::Vector2d(0.3, -0.2));
  CHECK(a.converged);
  CHECK(a.x.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(a.iterations <= 2);
  ZeroSearch b = find_zero(field({"x1 - 1", "x2"}), Eigen::Vector2d(2, 1));
  CHECK(b.converged);
  CHECK((b.x - Eigen::Vector2d(1, 0)).cwiseAbs().maxCoeff() <= 1e-12);
  ZeroSearch c = find_zero(PolyVectorField(PolyMap(2, {Polynomial::constant(2, 1.0), Polynomial(2)})), Eigen::Vector2d(0, 0));
  CHECK_FALSE(c.converged);
  CHECK(c.residual == 1.0);
  CHECK_FALSE(c.message.empty());
  ZeroSearch d = find_zero(field({"x1^2 + 1"}), Eigen::VectorXd::Constant(1, 0.5));
  CHECK_FALSE(d.converged);
  CHECK(d.residual >= 1.0);
  ZeroSearch e = find_zero(field({"x1^3 - x1 - 2"}), Eigen::VectorXd::Constant(1, 2.0));
  CHECK(e.converged);
  CHECK(std::abs(e.x[0] * e.x[0] * e.x[0] - e.x[0] - 2) <= 1e-12);
}

TEST_CASE("analyze") {
  SingularityReport a = analyze(field({"x1", "-x2"}), Eigen::Vector2d::Zero());
  CHECK_FALSE(a.regular);
  CHECK(a.trace == 0.0);
  CHECK(a.det == -1.0);
  CHECK(a.charpoly == std::vector<double>{1.0, 0.0, -1.0});
  SingularityReport b = analyze(field({"x2", "-x1"}), Eigen::Vector2d::Zero());
  CHECK(b.trace == 0.0);
  CHECK(b.det == 1.0);
  SingularityReport c = analyze(field({"x1 + x2^2", "-x2"}), Eigen::Vector2d::Zero());
  CHECK(c.trace == 0.0);
  CHECK(c.det == -1.0);
  CHECK(c.linearization == a.linearization);
  SingularityReport d = analyze(field({"x1", "-x2"}), Eigen::Vector2d(1, 0));
  CHECK(d.regular);
  CHECK(d.charpoly.empty());
  CHECK(d.linearization.size() == 0);
  CHECK_FALSE(d.note.empty());
}

TEST_CASE("characteristic polynomial") {
  CHECK(charpoly(mat(2, 0, 0, 3)) == std::vector<double>{1, -5, 6});
  Eigen::Matrix3d a;
  a << 2, 1, 0, 0, 2, 0, 0, 0, 5;
  auto c = charpoly(a);
  // (l-2)^2 (l-5) = l^3 - 9 l^2 + 24 l - 20
  CHECK(c == std::vector<double>{1, -9, 24, -20});
  testing::Rng rng(76);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 3;
    Eigen::MatrixXd l = testing::random_matrix(rng, m, m), g = testing::random_invertible(rng, m);
    auto p = charpoly(l), q = charpoly(g.inverse() * l * g);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p[i] - q[i]) <= 1e-7);
    CHECK(p[1] == doctest::Approx(-l.trace()));
    CHECK(p.back() * (m % 2 ? -1.0 : 1.0) == doctest::Approx(l.determinant()));
  }
}

TEST_CASE("distinguishable") {
  auto verdict = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return distinguishable(a, b).verdict; };
  CHECK(verdict(mat(1, 2, 3, 4), mat(1, 2, 3, 4)) == Verdict::NotDistinguishedAtOrder1);
  CHECK(verdict(mat(1, 0, 0, -1), mat(1, 0, 0, 1)) == Verdict::Distinguished);
  CHECK(verdict(mat(1, 1, 0, 1), Eigen::Matrix2d::Identity()) == Verdict::Distinguished);
  CHECK(verdict(mat(0, 1, -1, 0), mat(0, -1, 1, 0)) == Verdict::NotDistinguishedAtOrder1);
  CHECK(verdict(mat(2, 5, 0, 3), mat(2, 0, 0, 3)) == Verdict::NotDistinguishedAtOrder1);
  // complex pair: rotation generators at different speeds
  CHECK(verdict(mat(0, 1, -1, 0), mat(0, 2, -2, 0)) == Verdict::Distinguished);
  Eigen::Matrix3d j3, j21;
  j3 << 0, 1, 0, 0, 0, 1, 0, 0, 0;
  j21 << 0, 1, 0, 0, 0, 0, 0, 0, 0;
  CHECK(verdict(j3, j21) == Verdict::Distinguished);
  testing::Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd g = testing::random_invertible(rng, 3, 2.0, 1e2);
    CHECK(verdict(j21, g.inverse() * j21 * g) == Verdict::NotDistinguishedAtOrder1);
  }
  CHECK_FALSE(distinguishable(mat(1, 0, 0, -1), mat(1, 0, 0, 1)).reason.empty());
  CHECK(to_string(Verdict::Distinguished) == "distinguished");
  CHECK(to_string(Verdict::NotDistinguishedAtOrder1) == "not-distinguished-at-order-1");
}

TEST_CASE("fields with equal linearization are not distinguished") {
  SingularityReport a = analyze(field({"x1 + x2^2", "-x2"}), Eigen::Vector2d::Zero());
  SingularityReport b = analyze(field({"x1", "-x2"}), Eigen::Vector2d::Zero());
  CHECK(distinguishable(a.linearization, b.linearization).verdict == Verdict::NotDistinguishedAtOrder1);
}

TEST_CASE("analysis from many seeds is deterministic") {
  PolyVectorField v = field({"x1", "-x2"});
  testing::Rng rng(78);
  std::vector<Eigen::VectorXd> seeds;
  for (int i = 0; i < 50; ++i) seeds.push_back(testing::random_matrix(rng, 2, 1, 1.0));
  auto results = analyze_seeds(v, seeds);
  REQUIRE(results.size() == 50);
  REQUIRE(results[0].report.has_value());
  for (const auto& r : results) {
    CHECK(r.zero.converged);
    REQUIRE(r.report.has_value());
    CHECK(*r.report == *results[0].report);
  }
}

}
