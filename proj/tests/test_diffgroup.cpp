#include "doctest.h"

#include "jetforge/diffgroup.hpp"
#include "jetforge/errors.hpp"
#include "support.hpp"

using namespace jetforge;

namespace {

D2Elem scalar_d2(double a, double b) { return D2Elem(Eigen::MatrixXd::Constant(1, 1, a), SymCube(1, 1, {b})); }
GL1Elem scalar_gl1(double a, double b) { return GL1Elem(Eigen::MatrixXd::Constant(1, 1, a), Cube(1, 1, {b})); }

}  // namespace

TEST_SUITE("diffgroup") {

TEST_CASE("dimension count") {
  CHECK(d2_dimension(1) == 2);
  CHECK(d2_dimension(2) == 10);
  CHECK(d2_dimension(3) == 27);
  for (int m = 1; m <= 4; ++m) CHECK(D2Elem::identity(m).phi1.size() + D2Elem::identity(m).phi2.data().size() == d2_dimension(m));
}

TEST_CASE("d2 examples") {
  D2Elem r = d2_mul(scalar_d2(3, 6), scalar_d2(2, 4));
  CHECK(r.phi1(0, 0) == 6.0);
  CHECK(r.phi2(0, 0, 0) == 36.0);
  D2Elem inv = d2_inv(scalar_d2(2, 4));
  CHECK(inv.phi1(0, 0) == 0.5);
  CHECK(inv.phi2(0, 0, 0) == -0.5);
  CHECK_THROWS_AS(scalar_d2(0.0, 1.0), SingularityError);
}

// Inverses enter every check below, so the elements are kept well conditioned;
// the acceptance run covers condition numbers up to 1e3.
constexpr double kCond = 10.0;

TEST_CASE("d2 group axioms") {
  testing::Rng rng(31);
  for (int m = 1; m <= 3; ++m)
    for (int trial = 0; trial < 50; ++trial) {
      D2Elem a = testing::random_d2(rng, m, 2.0, kCond), b = testing::random_d2(rng, m, 2.0, kCond),
             c = testing::random_d2(rng, m, 2.0, kCond);
      CHECK(max_abs_diff(d2_mul(a, d2_mul(b, c)), d2_mul(d2_mul(a, b), c)) <= 1e-10);
      CHECK(max_abs_diff(d2_mul(D2Elem::identity(m), a), a) == 0.0);
      CHECK(max_abs_diff(d2_mul(a, D2Elem::identity(m)), a) == 0.0);
      CHECK(max_abs_diff(d2_mul(a, d2_inv(a)), D2Elem::identity(m)) <= 1e-9);
      CHECK(max_abs_diff(d2_mul(d2_inv(a), a), D2Elem::identity(m)) <= 1e-9);
    }
}

TEST_CASE("algebraic coordinates") {
  AlgebraicCoords c = to_algebraic(scalar_d2(2, 4));
  CHECK(c.g(0, 0) == 2.0);
  CHECK(c.t(0, 0, 0) == 2.0);
  AlgebraicCoords e = to_algebraic(D2Elem::identity(3));
  CHECK(e.g.isIdentity());
  CHECK(e.t.max_abs() == 0.0);

  testing::Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    D2Elem phi = testing::random_d2(rng, 1 + trial % 3);
    CHECK(max_abs_diff(from_algebraic(to_algebraic(phi)), phi) <= 1e-12);
  }
}

TEST_CASE("gl1 examples") {
  GL1Elem r = gl1_mul(scalar_gl1(2, 3), scalar_gl1(5, 7));
  CHECK(r.g(0, 0) == 10.0);
  CHECK(r.a(0, 0, 0) == 22.0);
  testing::Rng rng(33);
  GL1Elem x = testing::random_gl1(rng, 3);
  CHECK(max_abs_diff(gl1_mul(GL1Elem::identity(3), x), x) == 0.0);
  CHECK(max_abs_diff(gl1_mul(x, GL1Elem::identity(3)), x) == 0.0);
  CHECK_FALSE(x.is_holonomic());
}

TEST_CASE("gl1 group axioms") {
  testing::Rng rng(34);
  for (int m = 1; m <= 3; ++m)
    for (int trial = 0; trial < 50; ++trial) {
      GL1Elem a = testing::random_gl1(rng, m, 2.0, kCond), b = testing::random_gl1(rng, m, 2.0, kCond),
              c = testing::random_gl1(rng, m, 2.0, kCond);
      CHECK(max_abs_diff(gl1_mul(a, gl1_mul(b, c)), gl1_mul(gl1_mul(a, b), c)) <= 1e-10);
      CHECK(max_abs_diff(gl1_mul(a, gl1_inv(a)), GL1Elem::identity(m)) <= 1e-9);
      CHECK(max_abs_diff(gl1_mul(gl1_inv(a), a), GL1Elem::identity(m)) <= 1e-9);
    }
}

TEST_CASE("kernel products add exactly") {
  testing::Rng rng(35);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + trial % 3;
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
    Cube a = testing::random_cube(rng, m, m), b = testing::random_cube(rng, m, m);
    GL1Elem r = gl1_mul(GL1Elem(id, a), GL1Elem(id, b));
    CHECK(r.a == a + b);
    CHECK(r.g == id);
  }
}

TEST_CASE("to_algebraic is a homomorphism") {
  testing::Rng rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 3;
    D2Elem psi = testing::random_d2(rng, m, 2.0, kCond), phi = testing::random_d2(rng, m, 2.0, kCond);
    GL1Elem lhs = as_gl1(to_algebraic(d2_mul(psi, phi)));
    GL1Elem rhs = gl1_mul(as_gl1(to_algebraic(psi)), as_gl1(to_algebraic(phi)));
    CHECK(max_abs_diff(lhs, rhs) <= 1e-10);
    CHECK(rhs.is_holonomic(1e-12));
  }
}

TEST_CASE("module action") {
  testing::Rng rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + trial % 3;
    Cube a = testing::random_cube(rng, m, m);
    Eigen::MatrixXd g1 = testing::random_invertible(rng, m), g2 = testing::random_invertible(rng, m);
    CHECK(module_action(Eigen::MatrixXd::Identity(m, m), a) == a);
    CHECK(max_abs_diff(module_action(g1 * g2, a), module_action(g2, module_action(g1, a))) <= 1e-10);
    GL1Elem inside = gl1_mul(GL1Elem(Eigen::MatrixXd::Identity(m, m), a), GL1Elem(g1, Cube(m, m)));
    CHECK(max_abs_diff(inside, GL1Elem(g1, module_action(g1, a))) <= 1e-12);
  }
  // scalar: h^-1 a h h
  CHECK(module_action(Eigen::MatrixXd::Constant(1, 1, 5.0), Cube(1, 1, {3.0}))(0, 0, 0) == doctest::Approx(15.0));
}

}
