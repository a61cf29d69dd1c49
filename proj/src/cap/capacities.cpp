#include "symcap/capacities.hpp"

#include <algorithm>
#include <cctype>

#include "symcap/checks.hpp"
#include "symcap/errors.hpp"
#include "symcap/profile.hpp"
#include "symcap/spectrum.hpp"

namespace symcap {

const Rational& ExtRational::finite() const {
  if (!value_) throw PreconditionError("infinite parameter where a finite one is required");
  return *value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
  return *a.value_ <=> *b.value_;
}

ExtRational parse_ext_rational(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "inf" || t == "+inf" || t == "infinity") return ExtRational::infinity();
  return parse_rational(text);
}

Rational min_ext(const ExtRational& a, const ExtRational& b) {
  if (a.is_infinite()) return b.finite();
  if (b.is_infinite()) return a.finite();
  return std::min(a.finite(), b.finite());
}

namespace {

void check_params(const std::vector<ExtRational>& a) {
  require(!a.empty(), "parameter list is empty");
  for (std::size_t i = 0; i < a.size(); ++i) {
    require(a[i].is_infinite() || a[i].finite() > Rational(0), "parameters must be positive");
    require(i == 0 || !(a[i] < a[i - 1]), "parameters must be sorted nondecreasing");
  }
  require(!a.front().is_infinite(), "the smallest parameter must be finite");
}

std::vector<ExtRational> lift(const std::vector<Rational>& a) { return {a.begin(), a.end()}; }

}  // namespace

CapacityValue spectral_diameter_ellipsoid(const std::vector<ExtRational>& a) {
  check_params(a);
  const Rational two_a1 = Rational(2) * a.front().finite();
  const Rational v = min_ext(a.back(), two_a1);
  return {v, false, v == two_a1 ? "ellipsoid: 2 a_1" : "ellipsoid: a_n"};
}

CapacityValue spectral_diameter_polydisk(const std::vector<ExtRational>& a) {
  check_params(a);
  if (a.size() == 1) return {a.front().finite(), false, "polydisk: a_1 (n = 1)"};
  return {Rational(2) * a.front().finite(), false, "polydisk: 2 a_1"};
}

CapacityValue spectral_diameter(const ToricDomain& domain) {
  switch (domain.kind()) {
    case ToricDomain::Kind::ellipsoid: return spectral_diameter_ellipsoid(lift(domain.params()));
    case ToricDomain::Kind::polydisk: return spectral_diameter_polydisk(lift(domain.params()));
    case ToricDomain::Kind::polytope: break;
  }
  throw PreconditionError("no closed form for the spectral diameter of a general polytope; use bounds");
}

CapacityValue c2b_closed_form(const ToricDomain& domain) {
  require(domain.kind() != ToricDomain::Kind::polytope, "no closed form for c_2B of a general polytope; use the packing search");
  CapacityValue v = spectral_diameter(domain);
  v.attained = false;
  v.provenance = "c_2B = gamma (" + v.provenance + ")";
  return v;
}

CapacityValue gromov_width_simplex_preimage(const Rational& a) {
  require(a > Rational(0), "simplex size must be positive");
  return {a, false, "gromov width of the simplex preimage"};
}

Rational cylinder_upper_bound(const Rational& delta) {
  require(delta >= Rational(0), "delta must be nonnegative");
  return Rational(2) + Rational(2) * delta;
}

BoundReport cylinder_report(const std::vector<Rational>& deltas) {
  BoundReport r;
  r.lower = spectral_diameter_ellipsoid({1, ExtRational::infinity()}).value;
  r.upper = Rational(2);
  for (const Rational& d : deltas) {
    Rational u = cylinder_upper_bound(d);
    r.steps.push_back({"gamma(Z(1)) <= 2 (max H' - min H')", "split displacing Hamiltonian, delta = " + d.str(), u,
                       "2 + 2*" + d.str()});
  }
  r.steps.push_back({"infimum over delta > 0", "cylinder limit", r.upper, "2"});
  return r;
}

BoundReport displacement_bounds(const Rational& e) {
  require(e >= Rational(0), "displacement energy must be nonnegative");
  BoundReport r;
  r.lower = Rational(0);
  r.upper = Rational(2) * e;
  r.steps.push_back({"c(phi; 1) <= gamma(psi)", "displacement estimate", e, "c <= " + e.str()});
  r.steps.push_back({"gamma(phi) <= 2 gamma(psi)", "displacement estimate", r.upper, "gamma <= " + r.upper.str()});
  return r;
}

BoundReport compose_ball_bound(const Rational& s, const Rational& delta) {
  require(Rational(1, 2) < s && s < Rational(1), "s must lie in (1/2, 1)");
  require(delta > Rational(0), "delta must be positive");
  const Rational plateau = Rational(1) + delta / Rational(2);
  const auto sym = LinearForm::symbol;
  const std::string g = "gamma(psi)";
  const std::string x = "c(R_-st psi; 1)";
  const std::string y = "c(R_-st psi^-1; 1)";
  const std::string p = "c(R_st psi; pt)";
  const std::string q = "c(phi R_-2st; 1)";
  const std::string m = "c(R_-st psi; pt * 1)";

  BoundChain chain(sym(g), "target", "spectral norm of the ball system");
  chain.eliminate(g, {"Reeb shift of both invariants", "slope law", sym(g), Relation::le,
                      LinearForm(Rational(2) * s * plateau) + sym(x) + sym(y)});
  chain.eliminate(y, {"duality", "inverse system", sym(y), Relation::eq, -1 * sym(p)});
  chain.eliminate(p, {"sub-additivity", "pair of pants product", sym(p) + sym(q), Relation::ge, sym(m)});
  chain.eliminate(m, {"naturality", "unit class", sym(m), Relation::eq, sym(x)});
  chain.eliminate(q, {"spectrum bound", "reeb composite actions", sym(q), Relation::le,
                      LinearForm((Rational(1) - Rational(2) * s) * plateau)});
  BoundReport r;
  r.lower = Rational(0);
  r.upper = chain.value();
  r.steps = chain.steps();
  return r;
}

SpecialBallValues special_ball_values(const Rational& a, int n) {
  require(Rational(0) < a && a < Rational(1), "a must lie in (0, 1)");
  CriticalValues c = s_a_criticals(a, n);
  const Rational cap = Rational(1) - a;
  if (c.max_critical != cap || c.min_critical != -a) throw InvariantError("S_a critical values disagree with the ball size");
  // the complement is a ball B(1 - a) in dimension 2n
  const Rational gamma = spectral_diameter_ellipsoid(std::vector<ExtRational>(static_cast<std::size_t>(n), cap)).value;
  return {cap, gamma, c.max_critical, c.min_critical};
}

BoundReport cpn_two_ball_bound() {
  BoundReport r;
  r.lower = Rational(0);
  r.upper = Rational(1);
  r.steps.push_back({"c_2B <= gamma", "two-ball bound", Rational(1), "c_2B(CP^n) <= gamma(CP^n)"});
  r.steps.push_back({"gamma(CP^n) <= 1", "spectral norm on projective space", Rational(1), "1"});
  return r;
}

BoundReport cpn_two_ball_bracket(int n, const Rational& eps) {
  BoundReport r = cpn_two_ball_bound();
  PackingCertificate c = simplex_certificate(n, eps);
  if (!c.verified) throw InvariantError("half-simplex certificate failed to verify");
  r.lower = c.total;
  r.steps.push_back({"a + b <= c_2B", "packing certificate " + c.provenance, r.lower, "a + b = " + r.lower.str()});
  return r;
}

CapacityValue cpn_two_ball_capacity() { return {Rational(1), false, "c_2B(CP^n) = 1 (supremum)"}; }

BoundReport ball_displacement_bracket(const Rational& eps, const Rational& delta) {
  require(Rational(0) < eps && eps < Rational(1), "eps must lie in (0, 1)");
  require(delta > Rational(0), "delta must be positive");
  const Rational eta = Rational(1) - eps / Rational(2);
  ImplantedSystem sys{{bump(1, eta, eps)}};
  NormCandidates nc = spectral_norm_candidates(action_spectrum(sys), negate_spectrum(sys));
  BoundReport r;
  r.lower = nc.selected;
  r.upper = cylinder_upper_bound(delta) / Rational(2);
  r.steps.push_back({"c(phi; 1) <= e_gamma", "bump eta = " + eta.str() + ", delta = " + eps.str(), r.lower,
                     "1 - " + eps.str()});
  r.steps.push_back({"e_gamma <= max H' - min H'", "split displacing Hamiltonian", r.upper, "1 + " + delta.str()});
  return r;
}

BoundReport polytope_capacity_bounds(const ToricDomain& domain, const SearchConfig& cfg) {
  const Polytope& p = domain.polytope();
  auto box = bounding_box(p);
  require(box.has_value(), "polytope must be bounded");
  BoundReport r;
  r.upper = Rational(2) * box->hi(0);
  Index best = 0;
  for (Index i = 1; i < p.dimension(); ++i)
    if (Rational(2) * box->hi(i) < r.upper) {
      r.upper = Rational(2) * box->hi(i);
      best = i;
    }
  auto cert = p.dimension() >= 2 ? search_two_balls(domain, cfg) : std::nullopt;
  r.lower = cert ? cert->total : Rational(0);
  r.steps.push_back({"a + b <= c_2B <= gamma", cert ? "two-ball search certificate" : "no placement found", r.lower,
                     r.lower.str()});
  r.steps.push_back({"gamma(Z(w)) = 2w, monotonicity", "enclosing cylinder in coordinate " + std::to_string(best + 1),
                     r.upper, r.upper.str()});
  return r;
}

void to_json(json& j, const CapacityValue& c) {
  j = json{{"value", c.value.str()}, {"attained", c.attained}, {"provenance", c.provenance}};
}

CapacityValue capacity_from_json(const json& j) {
  try {
    return {j.at("value").get<Rational>(), j.at("attained").get<bool>(), j.at("provenance").get<std::string>()};
  } catch (const json::exception& e) {
    throw ParseError(std::string("capacity JSON: ") + e.what());
  }
}

}  // namespace symcap
