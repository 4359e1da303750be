#include "doctest.h"

#include "jetforge/errors.hpp"
#include "jetforge/io.hpp"
#include "jetforge/poly_parser.hpp"
#include "support.hpp"

using namespace jetforge;
using io::json;

namespace {

std::string data(const std::string& name) { return std::string(JETFORGE_DATA_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("io") {

TEST_CASE("values survive a text round trip") {
  testing::Rng rng(81);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 3;
    Jet2 j = testing::random_jet(rng, m, m);
    D2Elem d = testing::random_d2(rng, m);
    GL1Elem g = testing::random_gl1(rng, m);
    AlgebraicCoords c = to_algebraic(d);
    auto again = [](const json& x) { return json::parse(x.dump()); };
    CHECK(max_abs_diff(io::decode_jet(again(io::encode(j))), j) == 0.0);
    CHECK(max_abs_diff(io::decode_d2(again(io::encode(d))), d) == 0.0);
    CHECK(max_abs_diff(io::decode_gl1(again(io::encode(g))), g) == 0.0);
    AlgebraicCoords c2 = io::decode_algebraic(again(io::encode(c)));
    CHECK(c2.g == c.g);
    CHECK(c2.t == c.t);
  }
}

TEST_CASE("polynomial maps round trip") {
  testing::Rng rng(82);
  PolyMap p = testing::random_polymap(rng, 2, 3, 3);
  PolyMap q = io::decode_polymap(json::parse(io::encode(p).dump()));
  for (int k = 0; k < 3; ++k) CHECK(q[k] == p[k]);
}

TEST_CASE("algebras, prolongations and groups") {
  MatrixLieAlgebra g = io::decode_algebra(io::load_file(data("algebra_o2.json")));
  CHECK(g.dim() == 1);
  MatrixLieAlgebra h = io::decode_algebra(io::encode(MatrixLieAlgebra::sl(3)));
  CHECK(h.dim() == 8);
  ProlongationBasis p = first_prolongation(MatrixLieAlgebra::co(3));
  ProlongationBasis p2 = io::decode_prolongation(json::parse(io::encode(p).dump()));
  REQUIRE(p2.dim() == p.dim());
  for (int i = 0; i < p.dim(); ++i) CHECK(p2.elements[static_cast<std::size_t>(i)] == p.elements[static_cast<std::size_t>(i)]);

  GroupDescriptor o2 = io::decode_group(io::load_file(data("group_o2.json")));
  CHECK(o2.kind() == GroupKind::O);
  CHECK(o2.holonomic());
  GroupDescriptor back = io::decode_group(io::encode(o2));
  CHECK(back.kind() == GroupKind::O);
  CHECK(back.m() == 2);
  GroupDescriptor custom = io::decode_group(io::load_file(data("group_custom_upper.json")));
  CHECK(custom.kind() == GroupKind::CUSTOM);
  CHECK(custom.algebra().dim() == 3);
  GroupDescriptor custom_back = io::decode_group(io::encode(custom));
  CHECK(custom_back.algebra().dim() == 3);
}

TEST_CASE("atlas files") {
  PolyAtlas a = io::decode_atlas(io::load_file(data("quadratic_atlas.json")));
  CHECK(a.charts().size() == 3);
  CHECK(a.overlaps().size() == 6);
  PolyAtlas id = io::decode_atlas(io::load_file(data("identity_atlas.json")));
  CHECK(id.m() == 2);
}

TEST_CASE("reports round trip") {
  SingularityReport r = analyze(PolyVectorField(parse_polymap({"x1 + x2^2", "-x2"}, 2)), Eigen::Vector2d::Zero());
  CHECK(io::decode_singularity_report(json::parse(io::encode(r).dump())) == r);
  SingularityReport reg = analyze(PolyVectorField(parse_polymap({"1", "x2"}, 2)), Eigen::Vector2d::Zero());
  CHECK(io::decode_singularity_report(json::parse(io::encode(reg).dump())) == reg);
}

TEST_CASE("malformed input names the field") {
  CHECK_THROWS_AS(io::load_file(data("does_not_exist.json")), DomainError);
  CHECK_THROWS_WITH_AS(io::decode_d2(json{{"m", 1}, {"phi1", {{2.0}}}}), doctest::Contains("phi2"), DomainError);
  CHECK_THROWS_AS(io::decode_d2(json{{"m", 2}, {"phi1", {{2.0}}}, {"phi2", {{"m", 1}, {"n", 1}, {"data", {1.0}}}}}),
                  DomainError);
  CHECK_THROWS_AS(io::decode_matrix(json{{1.0, 2.0}, {3.0}}), DomainError);
  CHECK_THROWS_AS(io::decode_matrix(json{{1.0, "x"}}), DomainError);
  CHECK_THROWS_AS(io::decode_group(json{{"name", "SP"}, {"m", 2}}), DomainError);
  CHECK_THROWS_AS(io::decode_polymap(json{{"m", 1}, {"components", {"x2"}}}), DomainError);
}

}
