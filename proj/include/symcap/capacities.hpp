#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symcap/bounds.hpp"
#include "symcap/geometry.hpp"
#include "symcap/packing.hpp"

namespace symcap {

/// A positive rational or +infinity (cylinder factors).
class ExtRational {
 public:
  ExtRational(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  ExtRational(I value) : value_(Rational(value)) {}  // NOLINT(google-explicit-constructor)
  static ExtRational infinity() { return ExtRational(); }

  bool is_infinite() const { return !value_; }
  /// Throws PreconditionError when infinite.
  const Rational& finite() const;
  std::string str() const { return value_ ? value_->str() : "inf"; }

  friend bool operator==(const ExtRational&, const ExtRational&) = default;
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

 private:
  ExtRational() = default;
  std::optional<Rational> value_;
};

/// Accepts "inf", "+inf", "infinity" besides a rational literal.
ExtRational parse_ext_rational(std::string_view text);

struct CapacityValue {
  Rational value;
  bool attained = false;
  std::string provenance;
};

Rational min_ext(const ExtRational& a, const ExtRational& b);

/// min(a_n, 2 a_1); a_1 must be finite.
CapacityValue spectral_diameter_ellipsoid(const std::vector<ExtRational>& a);
/// a_1 for n = 1, 2 a_1 otherwise.
CapacityValue spectral_diameter_polydisk(const std::vector<ExtRational>& a);
CapacityValue spectral_diameter(const ToricDomain& domain);

/// Equal to the spectral diameter on ellipsoids and polydisks. Polytope
/// domains have no closed form (PreconditionError).
CapacityValue c2b_closed_form(const ToricDomain& domain);

CapacityValue gromov_width_simplex_preimage(const Rational& a);

/// 2 + 2 delta: twice the oscillation of the split displacing Hamiltonian.
Rational cylinder_upper_bound(const Rational& delta);
/// Upper bounds 2 + 2 delta over the sampled deltas and their infimum 2,
/// with the exact lower bound gamma(E(1, inf)) = 2.
BoundReport cylinder_report(const std::vector<Rational>& deltas);

/// Given a displacement energy e: c(phi; 1) <= e and gamma(phi) <= 2e.
/// The report's upper is the gamma bound.
BoundReport displacement_bounds(const Rational& e);

/// Symbolic chain for the unit ball bound at 1/2 < s < 1, delta > 0. The
/// five facts are eliminated in order and the Floer terms must cancel.
BoundReport compose_ball_bound(const Rational& s, const Rational& delta);

struct SpecialBallValues {
  Rational capacity;
  Rational spectral_diameter;
  Rational max_critical;
  Rational min_critical;
};
/// The complement of the hyperplane neighbourhood in CP^n with parameter a.
SpecialBallValues special_ball_values(const Rational& a, int n = 1);

/// c_2B(CP^n) <= gamma(CP^n) <= 1.
BoundReport cpn_two_ball_bound();
/// [1 - 2 eps, 1]: the lower end from the two half-simplex certificate.
BoundReport cpn_two_ball_bracket(int n, const Rational& eps);
/// Supremum 1, never attained by a packing.
CapacityValue cpn_two_ball_capacity();

/// e_gamma(B(1)) in [1 - eps, 1 + delta]: the lower end is the spectral norm
/// of a bump supported in the ball, the upper the split Hamiltonian.
BoundReport ball_displacement_bracket(const Rational& eps, const Rational& delta);

/// Polytope domains: lower bound from the two-ball search (c_2B <= gamma),
/// upper bound 2 min_i max x_i from the enclosing cylinders.
BoundReport polytope_capacity_bounds(const ToricDomain& domain, const SearchConfig& cfg);

void to_json(json& j, const CapacityValue& c);
CapacityValue capacity_from_json(const json& j);

}  // namespace symcap
