#include "symcap/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "symcap/capacities.hpp"
#include "symcap/checks.hpp"
#include "symcap/errors.hpp"
#include "symcap/oracles.hpp"
#include "symcap/packing.hpp"
#include "symcap/profile.hpp"
#include "symcap/sampling.hpp"
#include "symcap/spectrum.hpp"

namespace symcap {

std::size_t SuiteResult::passed() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const SuiteCase& c) { return c.pass; }));
}

namespace {

Rational q(const char* s) { return parse_rational(s); }

std::string join(const std::vector<Rational>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
  return out + "}";
}

std::vector<Rational> sorted(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct Outcome {
  std::string expected;
  std::string actual;
  bool pass;
};

struct Criterion {
  int id;
  const char* name;
  const char* anchor;
  std::function<Outcome(std::mt19937&)> run;
};

// Collects sub-check failures so one case reports them all.
struct Tally {
  int total = 0;
  std::vector<std::string> failures;
  void check(bool ok, const std::string& what) {
    ++total;
    if (!ok) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
  std::string summary(const std::string& head = "") const {
    std::string s = head.empty() ? "" : head + "; ";
    s += std::to_string(total - static_cast<int>(failures.size())) + "/" + std::to_string(total) + " exact";
    for (std::size_t i = 0; i < failures.size() && i < 3; ++i) s += "; failed " + failures[i];
    return s;
  }
};

std::vector<ExtRational> ext(const std::vector<Rational>& a) { return {a.begin(), a.end()}; }

std::vector<RadialProfile> constructions() {
  std::vector<RadialProfile> out{
      bump(1, q("9/10"), q("1/100")),       bump(q("3/2"), q("1/2"), q("1/10")), bump(q("1/3"), q("3/4"), q("1/5"), 2),
      reeb(q("1/2"), q("1/10")),            reeb(q("1/4"), q("1/50")),           reeb(q("9/10"), q("1/4"), 3),
      reeb_composite(q("3/4"), q("1/10")),  reeb_composite(q("2/3"), q("1/100")), reeb_composite(q("19/20"), q("1/4")),
      s_a(q("1/4")),                        s_a(q("1/2"), 2),                    s_a(q("1/3"), 3),
      k_a(q("1/3")),                        k_a(q("1/2"), 2),                    t_s(q("1/2"), q("1/10"), 0),
      t_s(q("1/2"), q("1/10"), q("1/2")),   t_s(q("1/4"), q("1/50"), 1),          zero_profile(Space::cn(1)),
      zero_profile(Space::cpn(2))};
  for (const RadialProfile& p : two_ball(1, 1, q("9/10"), q("4/5"), q("1/100")).implants) out.push_back(p);
  return out;
}

std::vector<RadialProfile> random_constructions(std::mt19937& rng, int count) {
  std::vector<RadialProfile> out;
  std::uniform_int_distribution<int> pick(0, 4);
  while (static_cast<int>(out.size()) < count) {
    try {
      switch (pick(rng)) {
        case 0: {
          Rational a = random_rational(rng, q("1/10"), 3, 10);
          Rational eta = random_rational(rng, q("1/20"), q("19/20"), 20);
          Rational delta = random_rational(rng, q("1/100"), q("1/4"), 100);
          out.push_back(bump(a, eta, delta));
          break;
        }
        case 1: out.push_back(reeb(random_rational(rng, 0, q("19/20"), 20), random_rational(rng, q("1/100"), q("1/4"), 100))); break;
        case 2:
          out.push_back(reeb_composite(random_rational(rng, q("21/40"), q("39/40"), 40), random_rational(rng, q("1/100"), q("1/4"), 100)));
          break;
        case 3: out.push_back(s_a(random_rational(rng, q("1/20"), q("19/20"), 20))); break;
        default: {
          Rational a = random_rational(rng, q("1/10"), q("9/10"), 10);
          Rational eps = random_rational(rng, q("1/100"), a * q("9/10"), 100);
          out.push_back(t_s(a, eps, random_rational(rng, 0, 1, 8)));
        }
      }
    } catch (const PreconditionError&) {
      // parameter draw outside the construction's range
    }
  }
  return out;
}

Outcome ellipsoid_table(std::mt19937&) {
  std::vector<std::pair<std::vector<ExtRational>, Rational>> rows{
      {{1, 1, 1}, 1}, {{2, 3}, 3}, {{1, 2, 7}, 2}, {{1, ExtRational::infinity()}, 2}};
  std::vector<Rational> got;
  bool ok = true;
  for (const auto& [a, want] : rows) {
    got.push_back(spectral_diameter_ellipsoid(a).value);
    ok = ok && got.back() == want;
  }
  return {"1, 3, 2, 2", join(got), ok};
}

Outcome polydisk_table(std::mt19937&) {
  std::vector<std::pair<std::vector<ExtRational>, Rational>> rows{
      {{2}, 2}, {{q("7/3")}, q("7/3")}, {{1, 1}, 2}, {{q("1/2"), 3, 9}, 1}};
  std::vector<Rational> got;
  bool ok = true;
  for (const auto& [a, want] : rows) {
    got.push_back(spectral_diameter_polydisk(a).value);
    ok = ok && got.back() == want;
  }
  return {"2, 7/3, 2, 1", join(got), ok};
}

Outcome scaling_law(std::mt19937& rng) {
  Tally t;
  for (int i = 0; i < 100; ++i) {
    Rational lambda = random_rational(rng, q("1/20"), 10, 20);
    if (lambda.is_zero()) lambda = 1;
    auto a = random_sorted_tuple(rng, std::uniform_int_distribution<std::size_t>(1, 6)(rng));
    for (const ToricDomain& d : {ToricDomain::ellipsoid(a), ToricDomain::polydisk(a)}) {
      const Rational lhs = spectral_diameter(scale_domain(d, lambda)).value;
      t.check(lhs == lambda * spectral_diameter(d).value, to_string(d.kind()) + std::string(" lambda=") + lambda.str());
    }
  }
  return {"gamma(lambda U) = lambda gamma(U)", t.summary(), t.ok()};
}

Outcome min_formula(std::mt19937& rng) {
  Tally t;
  for (int i = 0; i < 1000; ++i) {
    auto a = random_sorted_tuple(rng, std::uniform_int_distribution<std::size_t>(1, 8)(rng));
    t.check(spectral_diameter_ellipsoid(ext(a)).value == std::min(a.back(), Rational(2) * a.front()), join(a));
  }
  for (int i = 0; i < 50; ++i) {
    Rational a1 = random_rational(rng, q("1/10"), 5);
    if (a1.is_zero()) continue;
    auto at = spectral_diameter_ellipsoid({a1, Rational(2) * a1});
    t.check(at.value == a1 * Rational(2) && at.value == Rational(2) * a1, "branch point a_1=" + a1.str());
  }
  return {"min(a_n, 2 a_1)", t.summary(), t.ok()};
}

Outcome packing(std::mt19937&) {
  Tally t;
  std::vector<Rational> totals;
  for (const ToricDomain& d : {ToricDomain::ellipsoid({1, 2}), ToricDomain::polydisk({1, 1})}) {
    auto c = canonical_certificate(d, q("1/100"));
    t.check(c.verified && c.total == q("199/100"), std::string("canonical ") + to_string(d.kind()));
    totals.push_back(c.total);
  }
  SearchConfig cfg;
  cfg.matrix_entry_bound = 2;
  cfg.translation_grid = 20;
  cfg.bisection_tolerance = q("1/100");
  for (const ToricDomain& d : {ToricDomain::ellipsoid({1, 2}), ToricDomain::polydisk({1, 1}), ToricDomain::ball(1, 2)}) {
    auto r = search_two_balls(d, cfg);
    const Rational c2b = c2b_closed_form(d).value;
    t.check(r && r->verified, std::string("search ") + to_string(d.kind()));
    if (!r) continue;
    totals.push_back(r->total);
    t.check(r->total <= c2b, "search total above c_2B");
    const bool ball = d.kind() == ToricDomain::Kind::ellipsoid && d.params().back() == d.params().front();
    t.check(r->total >= (ball ? q("99/100") : q("199/100")), "search total too small");
  }
  return {"canonical 199/100 (x2), search >= 199/100 (x2), all <= c_2B", t.summary("totals " + join(totals)), t.ok()};
}

Outcome two_ball_spectrum(std::mt19937&) {
  Tally t;
  auto sys = two_ball(1, 1, q("9/10"), q("4/5"), q("1/100"));
  auto spec = action_spectrum(sys);
  auto inv = negate_spectrum(sys);
  auto nc = spectral_norm_candidates(spec, inv);
  t.check(spec.spectrum == sorted({0, q("179/200"), q("-159/200")}), "spectrum " + join(spec.spectrum));
  t.check(nc.candidates == sorted({q("179/200"), q("159/200"), q("169/100")}), "candidates " + join(nc.candidates));
  t.check(nc.selected == q("169/100"), "selected " + nc.selected.str());
  Rational last_gap = 2;
  std::vector<Rational> seq;
  for (int m : {10, 100, 1000, 10000}) {
    const Rational eta = Rational(1) - Rational(1, m);
    const Rational delta = Rational(1, m * 10);
    auto s = two_ball(1, 1, eta, eta, delta);
    auto c = spectral_norm_candidates(action_spectrum(s), negate_spectrum(s));
    t.check(c.selected == eta + eta - delta, "selected at m=" + std::to_string(m));
    const Rational gap = Rational(2) - c.selected;
    t.check(gap > 0 && gap < last_gap, "gap not shrinking at m=" + std::to_string(m));
    last_gap = gap;
    seq.push_back(c.selected);
  }
  t.check(last_gap < Rational(1, 1000), "limit not approached");
  return {"{-159/200, 0, 179/200}; {159/200, 179/200, 169/100}; 169/100; -> 2",
          t.summary(join(spec.spectrum) + " selected " + nc.selected.str() + " seq " + join(seq)), t.ok()};
}

Outcome cylinder_displacement(std::mt19937&) {
  Tally t;
  for (const char* d : {"0", "1/10", "1/100", "1", "7/3"}) t.check(cylinder_upper_bound(q(d)) == Rational(2) + Rational(2) * q(d), d);
  auto cyl = cylinder_report({q("1/10"), q("1/100"), q("1/1000")});
  t.check(cyl.upper == 2 && cyl.lower == 2, "cylinder infimum");
  auto disp = displacement_bounds(1);
  t.check(disp.upper == 2, "displacement gamma bound");
  auto br = ball_displacement_bracket(q("1/100"), q("1/100"));
  t.check(br.lower == q("99/100") && br.upper == q("101/100"), "ball bracket");
  t.check(br.lower <= Rational(1) && Rational(1) <= br.upper, "bracket misses 1");
  return {"2+2delta; inf 2; gamma <= 2; [99/100, 101/100]",
          t.summary("inf " + cyl.upper.str() + ", gamma <= " + disp.upper.str() + ", [" + br.lower.str() + ", " +
                    br.upper.str() + "]"),
          t.ok()};
}

Outcome ball_chain(std::mt19937&) {
  Tally t;
  for (int i = 1; i <= 10; ++i)
    for (int j = 1; j <= 10; ++j) {
      const Rational s = Rational(1, 2) + Rational(i, 22);
      const Rational delta = Rational(j, 40);
      Rational got;
      try {
        got = compose_ball_bound(s, delta).upper;
      } catch (const InvariantError& e) {
        t.check(false, e.what());
        continue;
      }
      t.check(got == Rational(1) + delta / Rational(2), "s=" + s.str() + " delta=" + delta.str());
    }
  return {"1 + delta/2 on 10x10 grid", t.summary(), t.ok()};
}

Outcome item_v(std::mt19937&) {
  Tally t;
  for (int i = 1; i <= 20; ++i)
    for (int j = 1; j <= 20; ++j) {
      const Rational s = Rational(1, 2) + Rational(i, 42);
      const Rational delta = Rational(j, 80);
      t.check(max_action_check(s, delta).ok, "s=" + s.str() + " delta=" + delta.str());
    }
  auto c = max_action_check(q("3/4"), q("1/10"));
  t.check(c.max_action == q("-13/24") && c.bound == q("-21/40") && c.ok, "s=3/4 delta=1/10");
  return {"20x20 ok; -13/24 <= -21/40", t.summary(c.max_action.str() + " <= " + c.bound.str()), t.ok()};
}

Outcome reeb_law(std::mt19937&) {
  Tally t;
  std::vector<Rational> sigmas;
  for (int j = 1; j < 20; ++j) sigmas.push_back(Rational(j, 20));
  for (const char* d : {"1/10", "1/50", "1/4"}) {
    const Rational delta = q(d);
    auto r = reeb_slope_law(sigmas, delta);
    t.check(r.ok(), std::string("law at delta=") + d);
    for (std::size_t i = 0; i < sigmas.size(); ++i)
      t.check(r.actions[i] == -sigmas[i] * (Rational(1) + delta / Rational(2)), "singleton value");
  }
  return {"{-sigma(1+delta/2)}, affine in sigma", t.summary(), t.ok()};
}

Outcome negation(std::mt19937& rng) {
  Tally t;
  auto all = constructions();
  for (RadialProfile& p : random_constructions(rng, 30)) all.push_back(p);
  for (const RadialProfile& p : all)
    for (int k : {0, 1, 2}) {
      if (k > 0 && p.space().kind == Space::Kind::cn) continue;
      auto s = action_spectrum(p, k).spectrum;
      auto n = negate_spectrum(p, k).spectrum;
      std::vector<Rational> neg;
      for (const Rational& x : s) neg.push_back(-x);
      t.check(sorted(neg) == n, p.label());
    }
  auto sys = two_ball(1, 1, q("9/10"), q("4/5"), q("1/100"));
  std::vector<Rational> neg;
  for (const Rational& x : action_spectrum(sys).spectrum) neg.push_back(-x);
  t.check(sorted(neg) == negate_spectrum(sys).spectrum, "two_ball system");
  return {"spectrum(-h) = -spectrum(h)", t.summary(), t.ok()};
}

Outcome orbit_oracle(std::mt19937& rng) {
  Tally t;
  auto all = constructions();
  for (RadialProfile& p : random_constructions(rng, 12)) all.push_back(p);
  double worst = 0;
  for (const RadialProfile& p : all) {
    auto scan = oracle::scan_integer_slopes(p);
    auto orbits = find_orbits(p);
    for (const OrbitRecord& o : orbits) {
      if (o.locus.kind != LocusKind::radius) continue;
      double best = 1;
      for (const oracle::ScanRoot& s : scan.roots)
        if (s.winding == o.winding) best = std::min(best, std::fabs(s.r - o.locus.lo.to_double()));
      worst = std::max(worst, best);
      t.check(best <= 1e-9, p.label() + " radius " + o.locus.lo.str());
      t.check(std::fabs(oracle::intercept(p, o.locus.lo.to_double()) - o.action.to_double()) <= 1e-9,
              p.label() + " action");
    }
    for (const oracle::ScanRoot& s : scan.roots) {
      bool explained = std::any_of(orbits.begin(), orbits.end(), [&](const OrbitRecord& o) {
        if (o.winding != s.winding) return false;
        const double lo = o.locus.lo.to_double();
        if (o.locus.kind == LocusKind::plateau)
          return s.r >= lo - 1e-9 && (!o.locus.hi || s.r <= o.locus.hi->to_double() + 1e-9);
        return std::fabs(s.r - lo) <= 1e-9;
      });
      t.check(explained, p.label() + " unexplained scan root");
    }
  }
  std::ostringstream head;
  head << all.size() << " profiles, worst radius gap " << (worst < 1e-12 ? 0.0 : worst);
  return {"|r_exact - r_scan| <= 1e-9", t.summary(head.str()), t.ok()};
}

Outcome projective(std::mt19937&) {
  Tally t;
  for (const char* as : {"1/4", "1/3", "1/2"}) {
    const Rational a = q(as);
    auto c = s_a_criticals(a);
    t.check(c.min_critical == -a && c.max_critical == Rational(1) - a, std::string("criticals a=") + as);
    const int K = 2;
    std::vector<Rational> want;
    for (int k = -K; k <= K + 1; ++k) want.push_back(-a + Rational(k));
    t.check(action_spectrum(s_a(a), K).spectrum == want, std::string("recapped a=") + as);
    auto v = special_ball_values(a);
    t.check(v.capacity == Rational(1) - a && v.spectral_diameter == v.capacity, std::string("ball a=") + as);
    t.check(lemma_a2_residual(a).is_zero(), std::string("residual a=") + as);
  }
  return {"{-a, 1-a}; {-a+k}; 1-a; residual 0", t.summary(), t.ok()};
}

Outcome deformation(std::mt19937&) {
  Tally t;
  std::vector<Rational> ss;
  for (int i = 0; i <= 8; ++i) ss.push_back(Rational(i, 8));
  for (const auto& [a, eps] : {std::pair{q("1/2"), q("1/10")}, std::pair{q("1/4"), q("1/50")}}) {
    auto d = deformation_family_check(a, eps, ss);
    t.check(d.ok(), "a=" + a.str() + " eps=" + eps.str());
    t.check(t_s(a, eps, 0)(0) == -eps, "T_0(0)");
    t.check(t_s(a, eps, 1)(0) == -a, "T_1(0)");
    for (const Rational& s : ss) t.check(t_s(a, eps, s)(a) == 0 && t_s(a, eps, s)(1) == 0, "T_s = 0 past a");
  }
  return {"T_s checks on grid", t.summary(), t.ok()};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "ellipsoid spectral diameter table", "gamma(E) = min(a_n, 2a_1), ball and cylinder cases", ellipsoid_table},
      {2, "polydisk spectral diameter table", "gamma(P) = a_1 for n = 1, 2a_1 for n >= 2", polydisk_table},
      {3, "conformal scaling", "gamma(sqrt(a) U) = a gamma(U)", scaling_law},
      {4, "min formula and branch continuity", "branches a_n and 2a_1 meet at a_n = 2a_1", min_formula},
      {5, "two-ball packings", "simplex packings, a_1 + a_2 <= gamma(U)", packing},
      {6, "two-ball spectrum and norm", "{eta a - delta/2, mu b - delta/2, eta a + mu b - delta}", two_ball_spectrum},
      {7, "cylinder and displacement bounds", "2 + 2 delta; gamma(B(1)) <= 2 e_gamma(B(1)) = 2", cylinder_displacement},
      {8, "ball bound chain", "2s(1+delta/2) + (1-2s)(1+delta/2) = 1 + delta/2", ball_chain},
      {9, "reeb composite action bound", "c(phi R_-2st; 1) <= (1-2s)(1+delta/2)", item_v},
      {10, "reeb slope law", "d/dsigma c(R_-sigma t psi; 1) = -(1+delta/2)", reeb_law},
      {11, "spectrum negation", "action of the reversed capping is negated", negation},
      {12, "orbit oracle", "orbits at integer slopes of h'", orbit_oracle},
      {13, "projective space S_a", "criticals -a and 1-a, ball of capacity 1-a, [M] and Gamma constants", projective},
      {14, "deformation family", "T_s = max{K_a, s K_a - eps}", deformation},
  };
  return list;
}

}  // namespace

SuiteResult run_acceptance(unsigned seed) {
  SuiteResult r;
  for (const Criterion& c : criteria()) {
    std::mt19937 rng(seed + static_cast<unsigned>(c.id));
    SuiteCase sc{c.id, c.name, c.anchor, "", "", false, 0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = c.run(rng);
      sc.expected = o.expected;
      sc.actual = o.actual;
      sc.pass = o.pass;
    } catch (const std::exception& e) {
      sc.actual = std::string("error: ") + e.what();
    }
    sc.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.cases.push_back(std::move(sc));
  }
  return r;
}

std::string render_table(const SuiteResult& r) {
  std::ostringstream out;
  for (const SuiteCase& c : r.cases) {
    out << (c.pass ? "PASS" : "FAIL") << "  [" << c.criterion << "] " << c.name << "\n";
    out << "      anchor:   " << c.anchor << "\n";
    out << "      expected: " << c.expected << "\n";
    out << "      actual:   " << c.actual << "\n";
  }
  out << r.passed() << "/" << r.cases.size() << " criteria passed\n";
  return out.str();
}

void to_json(json& j, const SuiteResult& r) {
  json cases = json::array();
  for (const SuiteCase& c : r.cases)
    cases.push_back({{"criterion", c.criterion},
                     {"name", c.name},
                     {"anchor", c.anchor},
                     {"expected", c.expected},
                     {"actual", c.actual},
                     {"pass", c.pass}});
  j = json{{"cases", std::move(cases)}, {"summary", {{"passed", r.passed()}, {"total", r.cases.size()}}}};
}

}  // namespace symcap
