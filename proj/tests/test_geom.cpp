#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "symcap/errors.hpp"
#include "symcap/geometry.hpp"
#include "symcap/lp.hpp"

using namespace symcap;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Vector vec(std::initializer_list<Rational> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const Rational& x : xs) v(i++) = x;
  return v;
}

IntMatrix mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  IntMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

unsigned seed() {
  const char* s = std::getenv("SYMCAP_SEED");
  return s ? static_cast<unsigned>(std::strtoul(s, nullptr, 10)) : 20240611u;
}

// Random element of SL_n(Z) with entries in [-5, 5], by rejection.
IntMatrix random_unimodular(std::mt19937& rng, Index n) {
  std::uniform_int_distribution<int> d(-5, 5);
  for (;;) {
    IntMatrix m(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) m(i, j) = d(rng);
    if (integer_determinant(m) == 1) return m;
  }
}

}  // namespace

TEST_CASE("rational basics") {
  CHECK(q("6/4") == Rational(3, 2));
  CHECK(q("-6/4").str() == "-3/2");
  CHECK(q(" 7 ").str() == "7");
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(7, 2).floor() == 3);
  CHECK_THROWS_AS(q("1/0"), ParseError);
  CHECK_THROWS_AS(q("1.5"), ParseError);
  CHECK_THROWS_AS(q(""), ParseError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), PreconditionError);
  Rational r;
  CHECK(exact_sqrt(Rational(9, 4), r));
  CHECK(r == Rational(3, 2));
  CHECK_FALSE(exact_sqrt(Rational(2), r));
}

TEST_CASE("exact linear algebra") {
  Matrix m(2, 2);
  m << Rational(2), Rational(1), Rational(1), Rational(1);
  CHECK(exact_determinant(m) == Rational(1));
  auto inv = exact_inverse<Rational>(m);
  REQUIRE(inv);
  CHECK((*inv * m).isIdentity());
  Matrix s = Matrix::Zero(2, 2);
  CHECK_FALSE(exact_inverse<Rational>(s));
}

TEST_CASE("lp: small programs") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x,y >= 0 -> (8/5, 6/5), value 14/5
  LinearProgram<Rational> lp(2);
  lp.set_nonnegative(0);
  lp.set_nonnegative(1);
  lp.add_le(vec({1, 2}), Rational(4));
  lp.add_le(vec({3, 1}), Rational(6));
  auto r = lp.maximize(vec({1, 1}));
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == Rational(14, 5));
  CHECK(r.x == vec({Rational(8, 5), Rational(6, 5)}));

  LinearProgram<Rational> bad(1);
  bad.add_le(vec({1}), Rational(0));
  bad.add_ge(vec({1}), Rational(1));
  CHECK(bad.minimize(vec({0})).status == LpStatus::infeasible);

  LinearProgram<Rational> open(1);
  open.add_ge(vec({1}), Rational(-3));
  CHECK(open.maximize(vec({1})).status == LpStatus::unbounded);
  CHECK(open.minimize(vec({1})).objective == Rational(-3));

  LinearProgram<Rational> eq(2);
  eq.add_eq(vec({1, 1}), Rational(1));
  eq.add_eq(vec({2, 2}), Rational(2));  // redundant row
  auto e = eq.minimize(vec({1, 0}));
  CHECK(e.status == LpStatus::unbounded);
}

TEST_CASE("half-space normalization") {
  HalfSpace h = normalized(vec({Rational(1, 2), Rational(1, 3)}), Rational(1));
  CHECK(h.normal == vec({3, 2}));
  CHECK(h.offset == Rational(6));
  CHECK_THROWS_AS(normalized(vec({0, 0}), Rational(1)), PreconditionError);
  Polytope a(2, {{vec({2, 4}), Rational(2)}, {vec({-1, 0}), Rational(0)}});
  Polytope b(2, {{vec({-3, 0}), Rational(0)}, {vec({1, 2}), Rational(1)}, {vec({1, 2}), Rational(1)}});
  CHECK(a == b);
}

TEST_CASE("moment polytopes") {
  auto e = ToricDomain::ellipsoid({Rational(2), Rational(1)});
  CHECK(e.params() == std::vector<Rational>{1, 2});
  Polytope expected(2, {{vec({-1, 0}), 0}, {vec({0, -1}), 0}, {vec({Rational(1), Rational(1, 2)}), 1}});
  CHECK(moment_polytope(e) == expected);

  auto p = ToricDomain::polydisk({1, 1});
  auto pv = vertices(moment_polytope(p));
  CHECK(pv == std::vector<Vector>{vec({0, 0}), vec({0, 1}), vec({1, 0}), vec({1, 1})});

  auto b = ToricDomain::ball(Rational(1), 2);
  auto bv = vertices(moment_polytope(b));
  CHECK(bv == std::vector<Vector>{vec({0, 0}), vec({0, 1}), vec({1, 0})});

  CHECK_THROWS_AS(ToricDomain::ellipsoid({0, 1}), PreconditionError);
  CHECK_THROWS_AS(ToricDomain::polydisk({}), PreconditionError);
  // unbounded and off-orthant polytopes are rejected
  CHECK_THROWS_AS(ToricDomain::polytope(Polytope(2, {{vec({-1, 0}), 0}, {vec({0, -1}), 0}})), PreconditionError);
  CHECK_THROWS_AS(ToricDomain::polytope(Polytope(1, {{vec({-1}), 1}, {vec({1}), 1}})), PreconditionError);
  CHECK_THROWS_AS(ToricDomain::polytope(Polytope(1, {{vec({-1}), 0}, {vec({1}), 0}})), PreconditionError);
}

TEST_CASE("simplex vertices") {
  SimplexImage id(1, AffineMap::identity(2));
  CHECK(simplex_vertices(id) == std::vector<Vector>{vec({0, 0}), vec({1, 0}), vec({0, 1})});
  SimplexImage shear(1, AffineMap(mat2(1, -1, 0, 1), vec({1, 0})));
  CHECK(simplex_vertices(shear) == std::vector<Vector>{vec({1, 0}), vec({2, 0}), vec({0, 1})});
  SimplexImage two(2, AffineMap::identity(2));
  CHECK(simplex_vertices(two) == std::vector<Vector>{vec({0, 0}), vec({2, 0}), vec({0, 2})});
  CHECK_THROWS_AS(AffineMap(mat2(2, 0, 0, 1), vec({0, 0})), PreconditionError);
  CHECK_THROWS_AS(AffineMap(mat2(0, 1, 1, 0), vec({0, 0})), PreconditionError);
  CHECK_THROWS_AS(SimplexImage(0, AffineMap::identity(2)), PreconditionError);
}

TEST_CASE("containment") {
  // {x/2 + y <= 1} written in the long-axis-first orientation
  Polytope tri(2, {{vec({-1, 0}), 0}, {vec({0, -1}), 0}, {vec({Rational(1, 2), Rational(1)}), 1}});
  SimplexImage shear(1, AffineMap(mat2(1, -1, 0, 1), vec({1, 0})));
  CHECK(contains(tri, shear));
  // the same statement in sorted axes: E(1,2) and the mirrored shear
  auto e12 = moment_polytope(ToricDomain::ellipsoid({1, 2}));
  SimplexImage mirrored(1, AffineMap(mat2(1, 0, -1, 1), vec({0, 1})));
  CHECK(simplex_vertices(mirrored) == std::vector<Vector>{vec({0, 1}), vec({1, 0}), vec({0, 2})});
  CHECK(contains(e12, mirrored));
  CHECK_FALSE(contains(e12, shear));

  auto square = moment_polytope(ToricDomain::polydisk({1, 1}));
  CHECK(contains(square, SimplexImage(1, AffineMap::identity(2))));
  auto ball = moment_polytope(ToricDomain::ball(1, 2));
  CHECK_FALSE(contains(ball, SimplexImage(2, AffineMap::identity(2))));
  CHECK_THROWS_AS(contains(ball, SimplexImage(1, AffineMap::identity(3))), PreconditionError);
}

TEST_CASE("disjointness") {
  SimplexImage d1(1, AffineMap::identity(2));
  SimplexImage shear(1, AffineMap(mat2(1, -1, 0, 1), vec({1, 0})));
  CHECK(interiors_disjoint(d1, shear));
  CHECK(interiors_disjoint(shear, d1));
  CHECK_FALSE(interiors_disjoint(d1, d1));
  CHECK(interiors_disjoint(d1, SimplexImage(1, AffineMap::translate(vec({5, 5})))));
  // touching along a vertex only, and overlapping by a sliver
  CHECK(interiors_disjoint(d1, SimplexImage(1, AffineMap::translate(vec({1, 1})))));
  CHECK_FALSE(interiors_disjoint(d1, SimplexImage(1, AffineMap::translate(vec({Rational(99, 100), 0})))));
  std::vector<Vector> flat{vec({0, 0}), vec({1, 0}), vec({2, 0})};
  std::vector<Vector> good{vec({0, 0}), vec({1, 0}), vec({0, 1})};
  CHECK_THROWS_AS(interiors_disjoint(flat, good), PreconditionError);
}

TEST_CASE("scale domain") {
  CHECK(scale_domain(ToricDomain::ellipsoid({1, 2}), 3) == ToricDomain::ellipsoid({3, 6}));
  CHECK(scale_domain(ToricDomain::polydisk({1, 1}), 1) == ToricDomain::polydisk({1, 1}));
  CHECK(scale_domain(ToricDomain::ball(1, 2), 2) == ToricDomain::ball(2, 2));
  CHECK_THROWS_AS(scale_domain(ToricDomain::ball(1, 2), 0), PreconditionError);
  CHECK_THROWS_AS(scale_domain(ToricDomain::ball(1, 2), -1), PreconditionError);
}

TEST_CASE("property: group laws and transform invariance") {
  std::mt19937 rng(seed());
  std::uniform_int_distribution<int> t(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 2 + trial % 2;
    Vector tr(n);
    for (Index i = 0; i < n; ++i) tr(i) = Rational(t(rng), 3);
    AffineMap g(random_unimodular(rng, n), tr);
    CHECK(compose(g, g.inverse()) == AffineMap::identity(n));
    CHECK(compose(g.inverse(), g) == AffineMap::identity(n));
    AffineMap h(random_unimodular(rng, n), Vector::Zero(n));
    CHECK(integer_determinant(compose(g, h).matrix()) == 1);

    auto poly = moment_polytope(n == 2 ? ToricDomain::ellipsoid({1, 2}) : ToricDomain::polydisk({1, 1, 2}));
    SimplexImage s(Rational(1, 1 + trial % 3), AffineMap::translate(Vector::Constant(n, Rational(trial % 2, 4))));
    CHECK(contains(poly, s) == contains(transformed(poly, g), apply(g, s)));

    SimplexImage a(1, AffineMap::identity(n));
    SimplexImage b(1, AffineMap(random_unimodular(rng, n), tr));
    CHECK(interiors_disjoint(a, b) == interiors_disjoint(b, a));
    CHECK_FALSE(interiors_disjoint(b, b));
  }
}

TEST_CASE("property: scaling commutes with moment map") {
  for (int k = 1; k <= 10; ++k) {
    Rational lambda(k, 7);
    for (const auto& d : {ToricDomain::ellipsoid({1, 2, Rational(5, 2)}), ToricDomain::polydisk({Rational(1, 3), 4})}) {
      CHECK(moment_polytope(scale_domain(d, lambda)) == scaled(moment_polytope(d), lambda));
    }
  }
}

TEST_CASE("json round trip") {
  SimplexImage shear(Rational(49, 50), AffineMap(mat2(1, -1, 0, 1), vec({Rational(1, 3), 0})));
  json j = shear;
  CHECK(j["capacity"] == "49/50");
  CHECK(j["transform"]["translation"] == json::array({"1/3", "0"}));
  CHECK(simplex_from_json(json::parse(j.dump())) == shear);
  for (const auto& d : {ToricDomain::ellipsoid({1, 2}), ToricDomain::polydisk({1, Rational(3, 2)}),
                        ToricDomain::polytope(moment_polytope(ToricDomain::ball(1, 3)))}) {
    json dj = d;
    CHECK(domain_from_json(json::parse(dj.dump())) == d);
  }
  CHECK_THROWS_AS(domain_from_json(json{{"kind", "torus"}, {"params", {"1"}}}), ParseError);
  CHECK_THROWS_AS(simplex_from_json(json{{"capacity", "1"}}), ParseError);
}
