#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symcap/capacities.hpp"
#include "symcap/errors.hpp"
#include "symcap/sampling.hpp"

using namespace symcap;

namespace {

Rational q(const char* s) { return parse_rational(s); }
std::vector<ExtRational> ext(std::initializer_list<const char*> xs) {
  std::vector<ExtRational> out;
  for (const char* x : xs) out.push_back(parse_ext_rational(x));
  return out;
}

}  // namespace

TEST_CASE("extended rationals") {
  CHECK(parse_ext_rational("inf").is_infinite());
  CHECK(parse_ext_rational("Infinity").is_infinite());
  CHECK(parse_ext_rational("3/4").finite() == q("3/4"));
  CHECK(ExtRational(5) < ExtRational::infinity());
  CHECK(ExtRational::infinity() == ExtRational::infinity());
  CHECK_THROWS_AS(ExtRational::infinity().finite(), PreconditionError);
  CHECK_THROWS_AS(parse_ext_rational("abc"), ParseError);
}

TEST_CASE("spectral diameter of ellipsoids") {
  CHECK(spectral_diameter_ellipsoid(ext({"1", "1", "1"})).value == 1);
  CHECK(spectral_diameter_ellipsoid(ext({"2", "3"})).value == 3);
  CHECK(spectral_diameter_ellipsoid(ext({"1", "2", "7"})).value == 2);
  CHECK(spectral_diameter_ellipsoid(ext({"1", "inf"})).value == 2);
  CHECK(spectral_diameter_ellipsoid(ext({"1", "7", "inf", "inf"})).value == 2);
  CHECK_FALSE(spectral_diameter_ellipsoid(ext({"1", "2"})).attained);
  CHECK_THROWS_AS(spectral_diameter_ellipsoid(ext({"2", "1"})), PreconditionError);
  CHECK_THROWS_AS(spectral_diameter_ellipsoid(ext({"0", "1"})), PreconditionError);
  CHECK_THROWS_AS(spectral_diameter_ellipsoid(ext({"-1", "1"})), PreconditionError);
  CHECK_THROWS_AS(spectral_diameter_ellipsoid({}), PreconditionError);
  CHECK_THROWS_AS(spectral_diameter_ellipsoid(ext({"inf"})), PreconditionError);
}

TEST_CASE("spectral diameter of polydisks") {
  CHECK(spectral_diameter_polydisk(ext({"2"})).value == 2);
  CHECK(spectral_diameter_polydisk(ext({"1", "1"})).value == 2);
  CHECK(spectral_diameter_polydisk(ext({"1/2", "3", "9"})).value == 1);
  CHECK(spectral_diameter_polydisk(ext({"1", "inf"})).value == 2);
  CHECK_THROWS_AS(spectral_diameter_polydisk(ext({"3", "1"})), PreconditionError);
}

TEST_CASE("c_2B closed form and gromov width") {
  CHECK(c2b_closed_form(ToricDomain::ellipsoid({1, 2})).value == 2);
  CHECK(c2b_closed_form(ToricDomain::polydisk({1, 1})).value == 2);
  CHECK(c2b_closed_form(ToricDomain::ball(1, 2)).value == 1);
  CHECK_FALSE(c2b_closed_form(ToricDomain::ball(1, 2)).attained);
  auto tri = ToricDomain::polytope(moment_polytope(ToricDomain::ball(1, 2)));
  CHECK_THROWS_AS(c2b_closed_form(tri), PreconditionError);
  CHECK_THROWS_AS(spectral_diameter(tri), PreconditionError);
  CHECK(gromov_width_simplex_preimage(1).value == 1);
  CHECK(gromov_width_simplex_preimage(q("7/2")).value == q("7/2"));
  CHECK(gromov_width_simplex_preimage(Rational(3) * Rational(1)).value == 3);
  CHECK_THROWS_AS(gromov_width_simplex_preimage(0), PreconditionError);
}

TEST_CASE("random tuples: min formula, scaling, monotonicity, sandwich") {
  std::mt19937 rng(sampling_seed());
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    auto a = random_sorted_tuple(rng, n);
    std::vector<ExtRational> ea(a.begin(), a.end());
    const Rational g = spectral_diameter_ellipsoid(ea).value;
    REQUIRE(g == std::min(a.back(), Rational(2) * a.front()));
    // sandwich with the gromov width a_1
    CHECK(a.front() <= g);
    CHECK(g <= Rational(2) * a.front());

    const Rational lambda = random_rational(rng, q("1/10"), Rational(5));
    if (lambda.is_zero()) continue;
    auto e = ToricDomain::ellipsoid(a);
    auto p = ToricDomain::polydisk(a);
    CHECK(spectral_diameter(scale_domain(e, lambda)).value == lambda * spectral_diameter(e).value);
    CHECK(spectral_diameter(scale_domain(p, lambda)).value == lambda * spectral_diameter(p).value);

    // componentwise larger tuple
    std::vector<Rational> b = a;
    for (Rational& x : b) x += random_rational(rng, 0, 2);
    std::sort(b.begin(), b.end());
    CHECK(spectral_diameter(e).value <= spectral_diameter(ToricDomain::ellipsoid(b)).value);
    CHECK(spectral_diameter(p).value <= spectral_diameter(ToricDomain::polydisk(b)).value);
  }
  // the branches meet at a_n = 2 a_1
  for (int i = 0; i < 100; ++i) {
    Rational a1 = random_rational(rng, q("1/10"), 5);
    if (a1.is_zero()) continue;
    auto v = spectral_diameter_ellipsoid({a1, a1 * Rational(3, 2), Rational(2) * a1});
    CHECK(v.value == Rational(2) * a1);
  }
}

TEST_CASE("cylinder and displacement arithmetic") {
  CHECK(cylinder_upper_bound(0) == 2);
  CHECK(cylinder_upper_bound(q("1/10")) == q("11/5"));
  CHECK(cylinder_upper_bound(1) == 4);
  CHECK_THROWS_AS(cylinder_upper_bound(-1), PreconditionError);
  auto cyl = cylinder_report({q("1/10"), q("1/100")});
  CHECK(cyl.upper == 2);
  CHECK(cyl.lower == 2);
  CHECK(cyl.steps.size() == 3);

  auto d = displacement_bounds(1);
  CHECK(d.upper == 2);
  CHECK(d.steps[0].value == 1);
  CHECK(displacement_bounds(0).upper == 0);
  auto d3 = displacement_bounds(q("3/2"));
  CHECK(d3.steps[0].value == q("3/2"));
  CHECK(d3.upper == 3);

  auto b = ball_displacement_bracket(q("1/100"), q("1/100"));
  CHECK(b.lower == q("99/100"));
  CHECK(b.upper == q("101/100"));
}

TEST_CASE("ball bound chain") {
  auto r = compose_ball_bound(q("3/4"), q("1/10"));
  CHECK(r.upper == q("21/20"));
  CHECK(r.steps.size() == 6);
  CHECK(r.steps.back().expression == "21/20");
  CHECK(compose_ball_bound(q("2/3"), q("1/100")).upper == q("201/200"));
  CHECK(compose_ball_bound(q("2/3"), q("1/1000000")).upper == q("2000001/2000000"));
  CHECK_THROWS_AS(compose_ball_bound(q("1/2"), q("1/10")), PreconditionError);
  CHECK_THROWS_AS(compose_ball_bound(1, q("1/10")), PreconditionError);
}

TEST_CASE("bound chain rejects wrong-way facts and leftover symbols") {
  auto x = LinearForm::symbol("x");
  auto y = LinearForm::symbol("y");
  BoundChain c(x + y, "start", "test");
  CHECK_THROWS_AS(c.eliminate("x", {"bad", "test", x, Relation::ge, LinearForm(1)}), InvariantError);
  c.eliminate("x", {"ok", "test", x, Relation::le, LinearForm(1)});
  CHECK_THROWS_AS(c.value(), InvariantError);
  CHECK_THROWS_AS(c.eliminate("z", {"none", "test", y, Relation::le, LinearForm(1)}), InvariantError);
  c.eliminate("y", {"ok", "test", -1 * y, Relation::ge, LinearForm(-2)});
  CHECK(c.value() == 3);
}

TEST_CASE("projective space values") {
  auto s = special_ball_values(q("1/4"));
  CHECK(s.capacity == q("3/4"));
  CHECK(s.spectral_diameter == q("3/4"));
  CHECK(s.max_critical == q("3/4"));
  CHECK(s.min_critical == q("-1/4"));
  auto h = special_ball_values(q("1/2"), 2);
  CHECK(h.capacity == q("1/2"));
  CHECK(h.min_critical == q("-1/2"));
  CHECK(special_ball_values(q("1/1000")).capacity == q("999/1000"));
  CHECK_THROWS_AS(special_ball_values(1), PreconditionError);

  CHECK(cpn_two_ball_bound().upper == 1);
  CHECK(cpn_two_ball_bound().steps.size() == 2);
  auto br = cpn_two_ball_bracket(2, q("1/100"));
  CHECK(br.lower == q("49/50"));
  CHECK(br.upper == 1);
  CHECK_FALSE(cpn_two_ball_capacity().attained);
}

TEST_CASE("polytope bounds and agreement with packing") {
  SearchConfig cfg;
  cfg.translation_grid = 20;
  auto tri = ToricDomain::polytope(moment_polytope(ToricDomain::ball(1, 2)));
  auto r = polytope_capacity_bounds(tri, cfg);
  CHECK(r.lower <= r.upper);
  CHECK(r.lower >= q("99/100"));
  CHECK(r.upper == 2);

  for (const auto& d : {ToricDomain::ellipsoid({1, 2}), ToricDomain::ellipsoid({1, 5}), ToricDomain::polydisk({1, 1}),
                        ToricDomain::polydisk({1, 3})}) {
    const Rational c2b = c2b_closed_form(d).value;
    for (const char* e : {"1/10", "1/1000", "1/1000000"}) {
      auto cert = canonical_certificate(d, q(e));
      CHECK(cert.verified);
      CHECK(c2b - cert.total <= q(e));
      CHECK(cert.total <= c2b);
    }
  }
}

TEST_CASE("capacity JSON") {
  auto v = spectral_diameter_ellipsoid(ext({"2", "3"}));
  json j = v;
  CHECK(j["value"] == "3");
  auto back = capacity_from_json(json::parse(j.dump()));
  CHECK(back.value == v.value);
  CHECK(back.provenance == v.provenance);
  CHECK_THROWS_AS(capacity_from_json(json::parse("{}")), ParseError);
}
