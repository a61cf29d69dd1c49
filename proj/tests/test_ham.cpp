#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symcap/checks.hpp"
#include "symcap/errors.hpp"
#include "symcap/oracles.hpp"
#include "symcap/spectrum.hpp"

using namespace symcap;

namespace {

Rational q(const char* s) { return parse_rational(s); }

std::vector<Rational> qs(std::initializer_list<const char*> xs) {
  std::vector<Rational> v;
  for (const char* x : xs) v.push_back(q(x));
  return v;
}

std::vector<RadialProfile> every_construction() {
  std::vector<RadialProfile> out{
      bump(1, q("9/10"), q("1/100")),     bump(q("3/2"), q("1/2"), q("1/10")), reeb(q("1/2"), q("1/10")),
      reeb(q("1/4"), q("1/50")),          reeb_composite(q("3/4"), q("1/10")), reeb_composite(q("2/3"), q("1/100")),
      reeb_composite(q("19/20"), q("1/4")), s_a(q("1/4")),                     s_a(q("1/2"), 2),
      k_a(q("1/3")),                        t_s(q("1/2"), q("1/10"), 0),        t_s(q("1/2"), q("1/10"), q("1/2")),
      t_s(q("1/4"), q("1/50"), 1),          zero_profile(Space::cn(1)),         zero_profile(Space::cpn(2))};
  for (const RadialProfile& p : two_ball(1, 1, q("9/10"), q("4/5"), q("1/100")).implants) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("piecewise quadratic algebra") {
  auto mu = mu_delta(q("1/10"));
  CHECK(mu(-1) == q("1/20"));
  CHECK(mu(q("1/20")) == q("1/16"));
  CHECK(mu(q("1/5")) == q("1/5"));
  CHECK(mu(0) == q("1/20"));
  CHECK(mu.left_derivative(q("1/10")) == 1);
  CHECK(mu.right_derivative(0) == 0);
  CHECK_THROWS_AS(mu_delta(0), PreconditionError);

  auto f = PiecewiseQuadratic::identity();
  auto g = f.compose_affine(-2, 3);  // 3 - 2x
  CHECK(g(1) == 1);
  CHECK((f + g)(q("7/3")) == q("2/3"));
  auto m = pointwise_max(f, g);
  CHECK(m.knots() == std::vector<Rational>{1});
  CHECK(m(0) == 3);
  CHECK(m(2) == 2);
  auto sq = PiecewiseQuadratic(Quadratic{0, 0, 1});
  CHECK_THROWS_AS(pointwise_min(sq, PiecewiseQuadratic::constant(2)), PreconditionError);
  CHECK(pointwise_min(sq, PiecewiseQuadratic::constant(4)).knots() == std::vector<Rational>{-2, 2});
}

TEST_CASE("profile values") {
  CHECK(bump(1, q("9/10"), q("1/100"))(0) == q("179/200"));
  CHECK(s_a(q("1/4"))(1) == q("3/4"));
  CHECK(t_s(q("1/2"), q("1/10"), 0)(0) == q("-1/10"));
  CHECK(reeb(q("1/2"), q("1/10"))(0) == q("-21/40"));
  CHECK_THROWS_AS(bump(1, 1, q("1/100")), PreconditionError);
  CHECK_THROWS_AS(reeb_composite(q("1/2"), q("1/10")), PreconditionError);
  CHECK_THROWS_AS(s_a(1), PreconditionError);
  CHECK_THROWS_AS(t_s(q("1/2"), q("1/2"), 0), PreconditionError);
}

TEST_CASE("C1 continuity of the smooth constructions") {
  for (const RadialProfile& p : every_construction()) {
    const auto& h = p.function();
    for (std::size_t i = 0; i < h.knots().size(); ++i) {
      const Rational& k = h.knots()[i];
      CHECK(h.pieces()[i](k) == h.pieces()[i + 1](k));
      if (!p.kinked()) CHECK(h.pieces()[i].derivative(k) == h.pieces()[i + 1].derivative(k));
    }
  }
}

TEST_CASE("orbits of the bump") {
  auto orbits = find_orbits(bump(1, q("9/10"), q("1/100")));
  REQUIRE(orbits.size() == 2);
  CHECK(orbits[0].locus.kind == LocusKind::center);
  CHECK(orbits[0].action == q("179/200"));
  CHECK(orbits[0].winding == 0);
  CHECK(orbits[1].locus.kind == LocusKind::plateau);
  CHECK(orbits[1].locus.lo == 1);
  CHECK_FALSE(orbits[1].locus.hi.has_value());
  CHECK(orbits[1].action == 0);
}

TEST_CASE("orbits of the Reeb profiles") {
  auto r = find_orbits(reeb(q("1/2"), q("1/10")));
  REQUIRE(r.size() == 1);
  CHECK(r[0].locus == Locus{LocusKind::plateau, 0, Rational(1)});
  CHECK(r[0].winding == 0);
  CHECK(r[0].action == q("-21/40"));

  auto c = find_orbits(reeb_composite(q("3/4"), q("1/10")));
  REQUIRE(c.size() == 2);
  CHECK(c[0].locus == Locus{LocusKind::plateau, 0, Rational(1)});
  CHECK(c[0].winding == 1);
  CHECK(c[0].action == q("-63/40"));
  CHECK(c[1].locus == Locus{LocusKind::radius, q("16/15"), std::nullopt});
  CHECK(c[1].winding == 0);
  CHECK(c[1].action == q("-13/24"));
}

TEST_CASE("spectra") {
  auto tb = action_spectrum(two_ball(1, 1, q("9/10"), q("4/5"), q("1/100")));
  CHECK(tb.spectrum == qs({"-159/200", "0", "179/200"}));
  CHECK(tb.normalization_shift == 0);

  auto sa = action_spectrum(s_a(q("1/4")), 1);
  CHECK(sa.spectrum == qs({"-5/4", "-1/4", "3/4", "7/4"}));
  CHECK(sa.normalization_shift == q("-1/4"));  // a - 1/2
  auto shifted = action_spectrum(s_a(q("1/4")), 0, true);
  CHECK(shifted.spectrum == qs({"-1/2", "1/2"}));
  CHECK(action_spectrum(zero_profile(Space::cn(2))).spectrum == qs({"0"}));
  CHECK(action_spectrum(zero_profile(Space::cpn(1)), 2).spectrum == qs({"-2", "-1", "0", "1", "2"}));

  CHECK(negate_spectrum(bump(1, q("9/10"), q("1/100"))).spectrum == qs({"-179/200", "0"}));
  CHECK(negate_spectrum(reeb(q("1/2"), q("1/10"))).spectrum == qs({"21/40"}));
  CHECK(negate_spectrum(zero_profile(Space::cn(1))).spectrum == qs({"0"}));
}

TEST_CASE("normalization shift on CP^2") {
  // -int_0^1 (x - a) 2 (1 - x) dx = a - 1/3
  CHECK(normalization_shift(s_a(q("1/4"), 2)) == q("1/4") - q("1/3"));
}

TEST_CASE("spectral norm candidates") {
  auto sys = two_ball(1, 1, q("9/10"), q("4/5"), q("1/100"));
  auto c = spectral_norm_candidates(action_spectrum(sys), negate_spectrum(sys));
  CHECK(c.candidates == qs({"159/200", "179/200", "169/100"}));
  CHECK(c.selected == q("169/100"));

  auto b = bump(1, q("9/10"), q("1/100"));
  CHECK(spectral_norm_candidates(action_spectrum(b), negate_spectrum(b)).selected == q("179/200"));
  auto z = zero_profile(Space::cn(1));
  CHECK(spectral_norm_candidates(action_spectrum(z), negate_spectrum(z)).selected == 0);
  CHECK_THROWS_AS(spectral_norm_candidates(action_spectrum(b), action_spectrum(b)), PreconditionError);
}

TEST_CASE("bump limits") {
  for (int k = 2; k <= 40; k *= 2) {
    Rational eta = Rational(1) - Rational(1, k), delta(1, 10 * k);
    auto sys = two_ball(1, 1, eta, eta, delta);
    auto c = spectral_norm_candidates(action_spectrum(sys), negate_spectrum(sys));
    CHECK(c.selected == Rational(2) * eta - delta);
    CHECK(Rational(2) - c.selected <= Rational(3, k));
  }
}

TEST_CASE("property: tangent intercept, negation, conformal scaling") {
  for (const RadialProfile& p : every_construction()) {
    auto rep = action_spectrum(p, 2);
    for (const OrbitRecord& o : rep.orbits) {
      if (o.locus.kind == LocusKind::radius)
        CHECK(o.action == p(o.locus.lo) - o.locus.lo * Rational(o.winding) + Rational(o.recapping));
      if (o.locus.kind == LocusKind::plateau) {
        CHECK(p.function().right_derivative(o.locus.lo) == Rational(o.winding));
        CHECK(o.action == p(o.locus.lo) - o.locus.lo * Rational(o.winding) + Rational(o.recapping));
      }
    }
    std::vector<Rational> neg;
    for (auto it = rep.spectrum.rbegin(); it != rep.spectrum.rend(); ++it) neg.push_back(-*it);
    CHECK(negate_spectrum(p, 2).spectrum == neg);
    if (p.space().kind == Space::Kind::cn) {
      for (const Rational& lambda : qs({"1/3", "2", "7/5"})) {
        auto scaled = action_spectrum(p.conformally_scaled(lambda));
        std::vector<Rational> expect;
        for (const Rational& a : action_spectrum(p).spectrum) expect.push_back(lambda * a);
        CHECK(scaled.spectrum == expect);
      }
    }
  }
}

TEST_CASE("oracle: integer-slope loci agree with a grid scan") {
  for (const RadialProfile& p : every_construction()) {
    auto scan = oracle::scan_integer_slopes(p);
    auto orbits = find_orbits(p);
    for (const OrbitRecord& o : orbits) {
      if (o.locus.kind != LocusKind::radius) continue;
      bool hit = std::any_of(scan.roots.begin(), scan.roots.end(), [&](const oracle::ScanRoot& s) {
        return s.winding == o.winding && std::fabs(s.r - o.locus.lo.to_double()) <= 1e-9;
      });
      CHECK_MESSAGE(hit, p.label() << " radius " << o.locus.lo);
      CHECK(std::fabs(oracle::intercept(p, o.locus.lo.to_double()) - o.action.to_double()) <= 1e-9);
    }
    for (const oracle::ScanRoot& s : scan.roots) {
      bool explained = std::any_of(orbits.begin(), orbits.end(), [&](const OrbitRecord& o) {
        if (o.winding != s.winding) return false;
        const double lo = o.locus.lo.to_double();
        if (o.locus.kind == LocusKind::plateau)
          return s.r >= lo - 1e-9 && (!o.locus.hi || s.r <= o.locus.hi->to_double() + 1e-9);
        return std::fabs(s.r - lo) <= 1e-9;
      });
      CHECK_MESSAGE(explained, p.label() << " scan root " << s.r << " k=" << s.winding);
    }
  }
}

TEST_CASE("max action check") {
  auto c = max_action_check(q("3/4"), q("1/10"));
  CHECK(c.max_action == q("-13/24"));
  CHECK(c.bound == q("-21/40"));
  CHECK(c.ok);
  CHECK(max_action_check(q("2/3"), q("1/100")).ok);
  for (int i = 1; i <= 20; ++i)
    for (int j = 1; j <= 20; ++j) CHECK(max_action_check(Rational(1, 2) + Rational(i, 42), Rational(j, 80)).ok);
  CHECK_THROWS_AS(max_action_check(1, q("1/10")), PreconditionError);
}

TEST_CASE("reeb slope law") {
  auto r = reeb_slope_law(qs({"1/4", "1/2"}), q("1/10"));
  CHECK(r.ok());
  CHECK(r.actions[1] - r.actions[0] == q("-21/80"));
  auto z = reeb_slope_law({Rational(0)}, q("1/10"));
  CHECK(z.actions == qs({"0"}));
  CHECK(reeb_slope_law(qs({"1/10", "9/10"}), q("1/50")).ok());
}

TEST_CASE("deformation family") {
  auto d = deformation_family_check(q("1/2"), q("1/10"), qs({"0", "1/2", "1"}));
  CHECK(d.ok());
  CHECK(t_s(q("1/2"), q("1/10"), 1)(0) == q("-1/2"));
  for (const Rational& s : qs({"0", "1/2", "1"})) CHECK(t_s(q("1/2"), q("1/10"), s)(q("3/4")) == 0);
  for (const Rational& s : qs({"0", "1/3", "1"})) CHECK(t_s(q("1/2"), q("1/10"), s)(q("2/5")) == q("-1/10"));
  CHECK(deformation_family_check(q("1/4"), q("1/50"), qs({"0", "1/4", "3/4", "1"})).ok());
}

TEST_CASE("S_a criticals and the A2 residual") {
  for (const Rational& a : qs({"1/4", "1/3", "1/2"})) {
    auto c = s_a_criticals(a);
    CHECK(c.min_critical == -a);
    CHECK(c.max_critical == Rational(1) - a);
    CHECK(lemma_a2_residual(a) == 0);
  }
  CHECK(lemma_a2_residual(q("1/1000")) == 0);
  CHECK_THROWS_AS(lemma_a2_residual(0), PreconditionError);
}

TEST_CASE("profile specs and JSON") {
  auto spec = parse_profile_spec("bump:a=1,eta=9/10,delta=1/100");
  CHECK(spec.name == "bump");
  CHECK(spec.params.at("eta") == q("9/10"));
  auto sys = build_profile(spec, Space::cn(2));
  CHECK(sys.implants.front()(0) == q("179/200"));
  CHECK_THROWS_AS(build_profile(parse_profile_spec("bump:a=1"), Space::cn(1)), ParseError);
  CHECK_THROWS_AS(build_profile(parse_profile_spec("bump:a=1,eta=1/2,delta=1/10,x=1"), Space::cn(1)), ParseError);
  CHECK_THROWS_AS(build_profile(parse_profile_spec("s_a:a=1/4"), Space::cn(1)), PreconditionError);
  CHECK_THROWS_AS(build_profile(parse_profile_spec("nope"), Space::cn(1)), ParseError);
  CHECK(parse_space("cpn:3") == Space::cpn(3));
  CHECK_THROWS_AS(parse_space("torus:1"), ParseError);

  for (const RadialProfile& p : every_construction()) {
    json j = p;
    CHECK(profile_from_json(json::parse(j.dump())) == p);
    auto rep = action_spectrum(p, 1);
    json rj = rep;
    CHECK(spectrum_from_json(json::parse(rj.dump())) == rep);
  }
}
