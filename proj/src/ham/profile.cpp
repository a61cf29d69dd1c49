#include "symcap/profile.hpp"

#include <set>

#include "symcap/errors.hpp"
#include "symcap/geometry.hpp"

namespace symcap {

Space parse_space(std::string_view text) {
  auto colon = text.find(':');
  std::string_view kind = text.substr(0, colon);
  int n = 1;
  if (colon != std::string_view::npos) {
    Rational r = parse_rational(text.substr(colon + 1));
    if (!r.is_integer()) throw ParseError("space dimension must be an integer");
    require(r >= Rational(1), "space dimension must be at least 1");
    require(r <= Rational(64), "space dimension above 64 is not supported");
    n = static_cast<int>(to_int64(r));
  }
  if (kind == "cn") return Space::cn(n);
  if (kind == "cpn") return Space::cpn(n);
  throw ParseError("unknown space '" + std::string(text) + "' (expected cn:N or cpn:N)");
}

std::string to_string(const Space& s) {
  return (s.kind == Space::Kind::cn ? "cn:" : "cpn:") + std::to_string(s.dimension);
}

namespace {

bool reaches_domain(const PiecewiseQuadratic& h, std::size_t i, const Space& space) {
  auto lo = h.lower(i);
  auto hi = h.upper(i);
  if (hi && *hi <= space.domain_lo()) return false;
  if (lo && space.domain_hi() && *lo >= *space.domain_hi()) return false;
  return true;
}

}  // namespace

RadialProfile::RadialProfile(PiecewiseQuadratic h, Space space, std::string label, bool kinked)
    : h_(std::move(h)), space_(space), label_(std::move(label)), kinked_(kinked) {
  require(space_.dimension >= 1, "space dimension must be at least 1");
  const auto& knots = h_.knots();
  const auto& pieces = h_.pieces();
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const Rational& k = knots[i];
    if (k <= space_.domain_lo() || (space_.domain_hi() && k >= *space_.domain_hi())) continue;
    if (pieces[i](k) != pieces[i + 1](k))
      throw InvariantError("profile " + label_ + " is discontinuous at " + k.str());
    if (!kinked_ && pieces[i].derivative(k) != pieces[i + 1].derivative(k))
      throw InvariantError("profile " + label_ + " is not C1 at " + k.str());
  }
  if (space_.kind == Space::Kind::cn)
    require(pieces.back().degree() <= 1, "profile on C^n needs an affine tail");
}

std::vector<Rational> RadialProfile::interior_knots() const {
  std::vector<Rational> out;
  for (const Rational& k : h_.knots())
    if (k > space_.domain_lo() && (!space_.domain_hi() || k < *space_.domain_hi())) out.push_back(k);
  return out;
}

bool RadialProfile::is_zero() const {
  for (std::size_t i = 0; i < h_.pieces().size(); ++i)
    if (reaches_domain(h_, i, space_) && !(h_.pieces()[i] == Quadratic{})) return false;
  return true;
}

RadialProfile RadialProfile::negated() const { return RadialProfile(-h_, space_, "-" + label_, kinked_); }

RadialProfile RadialProfile::conformally_scaled(const Rational& lambda) const {
  require(lambda > Rational(0), "scale factor must be positive");
  require(space_.kind == Space::Kind::cn, "conformal rescaling applies to C^n profiles");
  return RadialProfile(h_.compose_affine(Rational(1) / lambda, Rational(0)).scaled(lambda), space_,
                       label_ + "*" + lambda.str(), kinked_);
}

ImplantedSystem ImplantedSystem::negated() const {
  ImplantedSystem out;
  for (const RadialProfile& p : implants) out.implants.push_back(p.negated());
  return out;
}

bool ImplantedSystem::is_identity() const {
  for (const RadialProfile& p : implants)
    if (!p.is_zero()) return false;
  return true;
}

PiecewiseQuadratic mu_delta(const Rational& delta) {
  require(delta > Rational(0), "delta must be positive");
  return PiecewiseQuadratic({Rational(0), delta},
                            {Quadratic{delta / Rational(2), 0, 0}, Quadratic{delta / Rational(2), 0, Rational(1) / (Rational(2) * delta)},
                             Quadratic{0, 1, 0}});
}

namespace {

bool in_open_unit(const Rational& x) { return Rational(0) < x && x < Rational(1); }

std::string tag(const char* name, std::initializer_list<std::pair<const char*, Rational>> params) {
  std::string s = name;
  char sep = ':';
  for (const auto& [k, v] : params) {
    s += sep;
    s += k;
    s += '=';
    s += v.str();
    sep = ',';
  }
  return s;
}

}  // namespace

RadialProfile bump(const Rational& a, const Rational& eta, const Rational& delta, int n) {
  require(a > Rational(0), "bump: a must be positive");
  require(in_open_unit(eta), "bump: eta must lie in (0,1)");
  require(delta > Rational(0) && delta <= eta * a, "bump: delta must lie in (0, eta*a]");
  auto h = mu_delta(delta).compose_affine(-eta, eta * a).shifted(-delta / Rational(2));
  return RadialProfile(std::move(h), Space::cn(n), tag("bump", {{"a", a}, {"eta", eta}, {"delta", delta}}));
}

RadialProfile reeb(const Rational& sigma, const Rational& delta, int n) {
  require(sigma >= Rational(0) && sigma < Rational(1), "reeb: sigma must lie in [0,1)");
  auto h = mu_delta(delta).compose_affine(1, -1).shifted(1).scaled(-sigma);
  return RadialProfile(std::move(h), Space::cn(n), tag("reeb", {{"sigma", sigma}, {"delta", delta}}));
}

RadialProfile reeb_composite(const Rational& s, const Rational& delta, int n) {
  require(Rational(1, 2) < s && s < Rational(1), "reeb_composite: s must lie in (1/2,1)");
  auto h = PiecewiseQuadratic::identity() + mu_delta(delta).compose_affine(1, -1).shifted(1).scaled(Rational(-2) * s);
  return RadialProfile(std::move(h), Space::cn(n), tag("reeb_composite", {{"s", s}, {"delta", delta}}));
}

RadialProfile s_a(const Rational& a, int n) {
  require(in_open_unit(a), "s_a: a must lie in (0,1)");
  return RadialProfile(PiecewiseQuadratic(Quadratic{-a, 1, 0}), Space::cpn(n), tag("s_a", {{"a", a}}));
}

RadialProfile k_a(const Rational& a, int n) {
  require(in_open_unit(a), "k_a: a must lie in (0,1)");
  auto h = pointwise_min(s_a(a, n).function(), PiecewiseQuadratic());
  return RadialProfile(std::move(h), Space::cpn(n), tag("k_a", {{"a", a}}), true);
}

RadialProfile t_s(const Rational& a, const Rational& eps, const Rational& s, int n) {
  require(in_open_unit(a), "t_s: a must lie in (0,1)");
  require(Rational(0) < eps && eps < a, "t_s: eps must lie in (0,a)");
  require(Rational(0) <= s && s <= Rational(1), "t_s: s must lie in [0,1]");
  const PiecewiseQuadratic k = k_a(a, n).function();
  auto h = pointwise_max(k, k.scaled(s).shifted(-eps));
  return RadialProfile(std::move(h), Space::cpn(n), tag("t_s", {{"a", a}, {"eps", eps}, {"s", s}}), true);
}

RadialProfile zero_profile(Space space) { return RadialProfile(PiecewiseQuadratic(), space, "zero"); }

ImplantedSystem two_ball(const Rational& a, const Rational& b, const Rational& eta, const Rational& mu,
                         const Rational& delta, int n) {
  ImplantedSystem sys;
  sys.implants.push_back(bump(a, eta, delta, n));
  sys.implants.push_back(bump(b, mu, delta, n).negated());
  return sys;
}

ProfileSpec parse_profile_spec(std::string_view text) {
  ProfileSpec spec;
  auto colon = text.find(':');
  spec.name = std::string(text.substr(0, colon));
  if (spec.name.empty()) throw ParseError("empty profile name");
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) throw ParseError("expected key=value in '" + std::string(item) + "'");
    std::string key(item.substr(0, eq));
    if (spec.params.count(key)) throw ParseError("duplicate parameter '" + key + "'");
    spec.params.emplace(std::move(key), parse_rational(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return spec;
}

namespace {

class Params {
 public:
  Params(const ProfileSpec& spec, std::set<std::string> allowed) : spec_(spec) {
    for (const auto& [k, v] : spec.params)
      if (!allowed.count(k)) throw ParseError("unknown parameter '" + k + "' for profile " + spec.name);
  }
  const Rational& operator[](const std::string& key) const {
    auto it = spec_.params.find(key);
    if (it == spec_.params.end()) throw ParseError("profile " + spec_.name + " needs parameter '" + key + "'");
    return it->second;
  }

 private:
  const ProfileSpec& spec_;
};

void need(const Space& space, Space::Kind kind, const std::string& name) {
  require(space.kind == kind, "profile " + name + " lives on " + (kind == Space::Kind::cn ? "cn" : "cpn"));
}

}  // namespace

ImplantedSystem build_profile(const ProfileSpec& spec, Space space) {
  const std::string& name = spec.name;
  const int n = space.dimension;
  auto single = [](RadialProfile p) { return ImplantedSystem{{std::move(p)}}; };
  if (name == "zero") {
    Params p(spec, {});
    return single(zero_profile(space));
  }
  if (name == "bump") {
    Params p(spec, {"a", "eta", "delta"});
    need(space, Space::Kind::cn, name);
    return single(bump(p["a"], p["eta"], p["delta"], n));
  }
  if (name == "reeb") {
    Params p(spec, {"sigma", "delta"});
    need(space, Space::Kind::cn, name);
    return single(reeb(p["sigma"], p["delta"], n));
  }
  if (name == "reeb_composite") {
    Params p(spec, {"s", "delta"});
    need(space, Space::Kind::cn, name);
    return single(reeb_composite(p["s"], p["delta"], n));
  }
  if (name == "two_ball") {
    Params p(spec, {"a", "b", "eta", "mu", "delta"});
    need(space, Space::Kind::cn, name);
    return two_ball(p["a"], p["b"], p["eta"], p["mu"], p["delta"], n);
  }
  if (name == "s_a") {
    Params p(spec, {"a"});
    need(space, Space::Kind::cpn, name);
    return single(s_a(p["a"], n));
  }
  if (name == "k_a") {
    Params p(spec, {"a"});
    need(space, Space::Kind::cpn, name);
    return single(k_a(p["a"], n));
  }
  if (name == "t_s") {
    Params p(spec, {"a", "eps", "s"});
    need(space, Space::Kind::cpn, name);
    return single(t_s(p["a"], p["eps"], p["s"], n));
  }
  throw ParseError("unknown profile '" + name + "'");
}

void to_json(json& j, const RadialProfile& p) {
  const auto& h = p.function();
  json pieces = json::array();
  for (std::size_t i = 0; i < h.pieces().size(); ++i) {
    const Quadratic& q = h.pieces()[i];
    auto lo = h.lower(i);
    auto hi = h.upper(i);
    pieces.push_back(json{{"lo", lo ? json(lo->str()) : json(nullptr)},
                          {"hi", hi ? json(hi->str()) : json(nullptr)},
                          {"coeffs", json::array({q.c0.str(), q.c1.str(), q.c2.str()})}});
  }
  j = json{{"label", p.label()}, {"space", to_string(p.space())}, {"kinked", p.kinked()}, {"pieces", std::move(pieces)}};
}

RadialProfile profile_from_json(const json& j) {
  try {
    std::vector<Rational> knots;
    std::vector<Quadratic> pieces;
    for (const json& piece : j.at("pieces")) {
      const json& c = piece.at("coeffs");
      if (c.size() != 3) throw ParseError("profile piece needs three coefficients");
      pieces.push_back(Quadratic{c[0].get<Rational>(), c[1].get<Rational>(), c[2].get<Rational>()});
      if (!piece.at("hi").is_null()) knots.push_back(piece.at("hi").get<Rational>());
    }
    if (pieces.empty()) throw ParseError("profile needs at least one piece");
    return RadialProfile(PiecewiseQuadratic(std::move(knots), std::move(pieces)), parse_space(j.at("space").get<std::string>()),
                         j.at("label").get<std::string>(), j.at("kinked").get<bool>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad profile JSON: ") + e.what());
  }
}

}  // namespace symcap
