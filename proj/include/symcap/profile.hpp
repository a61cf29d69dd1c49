#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "symcap/piecewise.hpp"

namespace symcap {

/// Where a radial profile lives. On C^n the variable is r = pi|z|^2 on
/// [0, inf); on CP^n it is the moment coordinate x in [0, 1].
struct Space {
  enum class Kind { cn, cpn };
  Kind kind = Kind::cn;
  int dimension = 1;

  static Space cn(int n) { return Space{Kind::cn, n}; }
  static Space cpn(int n) { return Space{Kind::cpn, n}; }

  Rational domain_lo() const { return Rational(0); }
  /// nullopt for the unbounded radial domain of C^n.
  std::optional<Rational> domain_hi() const {
    return kind == Kind::cpn ? std::optional<Rational>(Rational(1)) : std::nullopt;
  }
  friend bool operator==(const Space&, const Space&) = default;
};

/// "cn:2", "cpn:1"
Space parse_space(std::string_view text);
std::string to_string(const Space& s);

/// Rotation-invariant Hamiltonian h(r) given by a piecewise quadratic.
///
/// Construction checks continuity on the domain and, unless `kinked` is
/// set, matching one-sided derivatives at every interior knot. On C^n the
/// last piece must be affine.
class RadialProfile {
 public:
  RadialProfile(PiecewiseQuadratic h, Space space, std::string label, bool kinked = false);

  const PiecewiseQuadratic& function() const { return h_; }
  const Space& space() const { return space_; }
  const std::string& label() const { return label_; }
  bool kinked() const { return kinked_; }

  Rational operator()(const Rational& r) const { return h_(r); }
  /// Knots strictly inside the domain.
  std::vector<Rational> interior_knots() const;
  /// True iff h vanishes identically on the domain.
  bool is_zero() const;

  RadialProfile negated() const;
  /// r -> lambda h(r / lambda); the radial shadow of conformal rescaling.
  RadialProfile conformally_scaled(const Rational& lambda) const;

  friend bool operator==(const RadialProfile&, const RadialProfile&) = default;

 private:
  PiecewiseQuadratic h_;
  Space space_;
  std::string label_;
  bool kinked_;
};

/// Several radial profiles implanted in disjointly supported balls.
/// Each implant keeps its own radial variable.
struct ImplantedSystem {
  std::vector<RadialProfile> implants;

  ImplantedSystem negated() const;
  bool is_identity() const;
};

/// The C^1 cut-off: delta/2 for x <= 0, delta/2 + x^2/(2 delta) on [0, delta],
/// x for x >= delta.
PiecewiseQuadratic mu_delta(const Rational& delta);

RadialProfile bump(const Rational& a, const Rational& eta, const Rational& delta, int n = 1);
/// -sigma (mu_delta(r - 1) + 1)
RadialProfile reeb(const Rational& sigma, const Rational& delta, int n = 1);
/// r - 2s (mu_delta(r - 1) + 1)
RadialProfile reeb_composite(const Rational& s, const Rational& delta, int n = 1);
/// x - a on CP^n
RadialProfile s_a(const Rational& a, int n = 1);
/// min(S_a, 0)
RadialProfile k_a(const Rational& a, int n = 1);
/// max(K_a, s K_a - eps)
RadialProfile t_s(const Rational& a, const Rational& eps, const Rational& s, int n = 1);
RadialProfile zero_profile(Space space);
/// bump(a, eta, delta) and -bump(b, mu, delta) in two disjoint balls.
ImplantedSystem two_ball(const Rational& a, const Rational& b, const Rational& eta, const Rational& mu,
                         const Rational& delta, int n = 1);

/// Named construction with parameters, e.g. "bump:a=1,eta=9/10,delta=1/100".
struct ProfileSpec {
  std::string name;
  std::map<std::string, Rational> params;
};

ProfileSpec parse_profile_spec(std::string_view text);
/// Builds the construction on `space`. Throws PreconditionError on
/// out-of-range parameters or a construction that does not live on `space`,
/// ParseError on unknown names or missing parameters.
ImplantedSystem build_profile(const ProfileSpec& spec, Space space);

using nlohmann::json;
void to_json(json& j, const RadialProfile& p);
RadialProfile profile_from_json(const json& j);

}  // namespace symcap
