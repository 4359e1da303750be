#include "doctest.h"

#include "jetforge/errors.hpp"
#include "jetforge/jets.hpp"
#include "jetforge/poly_parser.hpp"
#include "support.hpp"

using namespace jetforge;

namespace {

Jet2 scalar_jet(double a, double b) { return Jet2(Eigen::MatrixXd::Constant(1, 1, a), SymCube(1, 1, {b})); }

}  // namespace

TEST_SUITE("jets") {

TEST_CASE("jet_at examples") {
  Eigen::VectorXd x0 = Eigen::VectorXd::Constant(1, 0.7);
  Jet2 id = jet_at(PolyMap::identity(1), x0);
  CHECK(id.lin(0, 0) == 1.0);
  CHECK(id.quad(0, 0, 0) == 0.0);

  Jet2 j = jet_at(parse_polymap({"2*x1 + 2*x1^2"}, 1), Eigen::VectorXd::Zero(1));
  CHECK(j.lin(0, 0) == 2.0);
  CHECK(j.quad(0, 0, 0) == 4.0);

  Jet2 k = jet_at(parse_polymap({"x1*x2", "x1^2"}, 2), Eigen::VectorXd::Zero(2));
  CHECK(k.lin.isZero());
  CHECK(k.quad(0, 0, 1) == 1.0);
  CHECK(k.quad(1, 0, 0) == 2.0);
  CHECK(k.quad(0, 0, 0) == 0.0);
  CHECK(k.quad(0, 1, 1) == 0.0);
  CHECK(k.quad(1, 0, 1) == 0.0);
  CHECK(k.quad(1, 1, 1) == 0.0);
}

TEST_CASE("jet_at agrees with the coefficient oracle") {
  testing::Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    PolyMap p = testing::random_polymap(rng, 3, 2, 3);
    Eigen::VectorXd x0 = testing::random_matrix(rng, 3, 1, 1.0);
    Jet2 want = testing::jet_from_coefficients(testing::recentre(p, x0));
    CHECK(max_abs_diff(jet_at(p, x0), want) < 1e-12);
  }
}

TEST_CASE("compose examples") {
  Jet2 phi = scalar_jet(2, 4);
  Jet2 r = compose(scalar_jet(3, 6), phi);
  CHECK(r.lin(0, 0) == 6.0);
  CHECK(r.quad(0, 0, 0) == 36.0);
  // symbolic oracle: 3 f + 3 f^2 with f = 2x + 2x^2
  PolyMap f = parse_polymap({"2*x1 + 2*x1^2"}, 1);
  PolyMap outer = parse_polymap({"3*x1 + 3*x1^2"}, 1);
  CHECK(max_abs_diff(jet_at(compose(outer, f), Eigen::VectorXd::Zero(1)), r) == 0.0);

  CHECK(max_abs_diff(compose(Jet2::identity(1), phi), phi) == 0.0);
  CHECK_THROWS_AS(compose(Jet2::identity(2), Jet2::identity(3)), DomainError);
}

TEST_CASE("invert examples") {
  CHECK(max_abs_diff(invert(Jet2::identity(3)), Jet2::identity(3)) == 0.0);
  Jet2 inv = invert(scalar_jet(2, 4));
  CHECK(inv.lin(0, 0) == 0.5);
  CHECK(inv.quad(0, 0, 0) == -0.5);
  // x/2 - x^2/4 composed with 2x + 2x^2 is x + O(x^3)
  PolyMap f = parse_polymap({"2*x1 + 2*x1^2"}, 1);
  PolyMap g = parse_polymap({"0.5*x1 - 0.25*x1^2"}, 1);
  PolyMap gf = compose(g, f);
  CHECK(gf[0].coefficient({1}) == 1.0);
  CHECK(gf[0].coefficient({2}) == 0.0);

  CHECK_THROWS_AS(invert(scalar_jet(1e-13, 1)), SingularityError);
  CHECK_THROWS_AS(invert(Jet2(Eigen::MatrixXd::Ones(2, 3), SymCube(3, 2))), DomainError);
  try {
    invert(scalar_jet(1e-13, 1));
  } catch (const SingularityError& e) {
    CHECK(e.det() == 1e-13);
  }
}

// Absolute tolerances on inverses only make sense for well-conditioned linear
// parts: the second-order part of the inverse grows like cond^3.
TEST_CASE("inverse laws") {
  testing::Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 3;
    Jet2 j(testing::random_invertible(rng, m, 2.0, 10.0), testing::random_symcube(rng, m, m));
    CHECK(max_abs_diff(compose(invert(j), j), Jet2::identity(m)) < 1e-10);
    CHECK(max_abs_diff(compose(j, invert(j)), Jet2::identity(m)) < 1e-10);
    CHECK(max_abs_diff(invert(invert(j)), j) < 1e-9);
  }
}

TEST_CASE("associativity") {
  testing::Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 3, n = 1 + (trial / 3) % 3, p = 1 + (trial / 9) % 3, q = 1 + trial % 2;
    Jet2 c = testing::random_jet(rng, m, n);
    Jet2 b = testing::random_jet(rng, n, p);
    Jet2 a = testing::random_jet(rng, p, q);
    CHECK(max_abs_diff(compose(a, compose(b, c)), compose(compose(a, b), c)) < 1e-10);
  }
}

TEST_CASE("chain rule against symbolic composition") {
  testing::Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 3, n = 1 + (trial / 3) % 3, p = 1 + (trial / 9) % 3;
    PolyMap f = testing::random_polymap(rng, m, n, 3);
    PolyMap g = testing::random_polymap(rng, n, p, 3);
    Eigen::VectorXd x0 = testing::random_matrix(rng, m, 1, 1.0);
    Jet2 lhs = compose(jet_at(g, f.evaluate(x0)), jet_at(f, x0));
    Jet2 rhs = testing::jet_from_coefficients(testing::recentre(compose(g, f), x0));
    CHECK(max_abs_diff(lhs, rhs) < 1e-9);
  }
}

TEST_CASE("jets compose like their representatives") {
  testing::Rng rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    Jet2 a = testing::random_jet(rng, 2, 2);
    Jet2 b = testing::random_jet(rng, 2, 2);
    PolyMap ab = compose(testing::representative(a), testing::representative(b));
    CHECK(max_abs_diff(compose(a, b), testing::jet_from_coefficients(ab)) < 1e-12);
  }
}

}
