#pragma once

#include <string>
#include <vector>

#include "symcap/spectrum.hpp"

namespace symcap {

struct MaxActionCheck {
  Rational max_action;
  Rational bound;
  bool ok = false;
};

/// Largest action of reeb_composite(s, delta) against (1 - 2s)(1 + delta/2).
MaxActionCheck max_action_check(const Rational& s, const Rational& delta);

struct ReebSlopeCheck {
  std::vector<Rational> sigmas;
  std::vector<Rational> actions;
  bool singletons = false;
  bool affine_law = false;
  bool ok() const { return singletons && affine_law; }
};

/// Spectra of the pure Reeb family are {-sigma (1 + delta/2)} and differ by
/// -(sigma2 - sigma1)(1 + delta/2) between any two members.
ReebSlopeCheck reeb_slope_law(const std::vector<Rational>& sigmas, const Rational& delta);

struct DeformationCheck {
  std::size_t points = 0;
  bool agrees_on_region = true;  // T_s = K_a where K_a >= -eps
  bool monotone_in_s = true;     // s <= s' implies T_s' <= T_s
  bool t0_close = true;          // -eps <= T_0 <= 0
  bool t1_is_ka = true;          // T_1 = K_a as functions
  std::vector<std::string> failures;
  bool ok() const { return agrees_on_region && monotone_in_s && t0_close && t1_is_ka; }
};

/// Pointwise checks of T_s = max(K_a, s K_a - eps) on the grid j/grid,
/// j = 0..grid, together with the breakpoints a - eps and a.
DeformationCheck deformation_family_check(const Rational& a, const Rational& eps, const std::vector<Rational>& s_samples,
                                          int grid = 200);

struct CriticalValues {
  Rational min_critical;
  Rational max_critical;
};

/// Extreme fixed-locus actions of S_a on CP^n.
CriticalValues s_a_criticals(const Rational& a, int n = 1);

/// With the trivial system: the constant of the first identity is the
/// negated minimum critical value of S_a, that of the second is the maximum;
/// returns their sum minus 1. Both critical values must occur in the
/// recapped spectrum with window K (InvariantError otherwise).
Rational lemma_a2_residual(const Rational& a, int K = 1);

}  // namespace symcap
