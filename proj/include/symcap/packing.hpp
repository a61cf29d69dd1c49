#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symcap/geometry.hpp"

namespace symcap {

struct PackingCertificate {
  ToricDomain domain;
  std::vector<SimplexImage> simplices;
  Rational total;
  bool verified = false;
  /// "canonical", "search", ...
  std::string provenance;
};

struct SearchConfig {
  int matrix_entry_bound = 2;
  int translation_grid = 20;
  Rational bisection_tolerance = Rational(1, 100);
  bool equal_balls = false;
};

/// Two copies of Delta(a_1 - eps/2): for an ellipsoid with a_n >= 2 a_1 the
/// second copy sits above the first across {sum x = a_1}; for a polydisk
/// (n >= 2) it is the point reflection in the first two coordinates placed
/// at the corner (a_1, a_1). Requires 0 < eps < 2 a_1.
PackingCertificate canonical_certificate(const ToricDomain& domain, const Rational& eps);

/// Two copies of Delta(1/2 - eps) in the unit simplex (moment image of
/// CP^n), the second translated by e_1 / 2. Requires 0 < eps < 1/2.
PackingCertificate simplex_certificate(int n, const Rational& eps);

/// Recomputes both containments, the disjointness and the total; stores
/// the verdict in c.verified and returns it.
bool verify_certificate(PackingCertificate& c);

/// Bisection on the total a + b over [0, 2W] (W the widest side of the
/// bounding box). Each trial total tries the equal split first and then
/// a = T j / q for j > q/2 unless equal_balls; placements enumerate
/// matrices with entries in [-B, B] and determinant 1 in lexicographic
/// order, then grid translations lo + (k/q)(hi - lo) lexicographically.
/// The first disjoint pair found is kept. Returns nullopt when no trial
/// total admits a placement. Dimension at most 4.
std::optional<PackingCertificate> search_two_balls(const ToricDomain& domain, const SearchConfig& cfg);

/// Placement test behind the search at a fixed split: first pair in
/// enumeration order, or nullopt.
std::optional<std::pair<SimplexImage, SimplexImage>> place_two_balls(const Polytope& p, const Rational& a, const Rational& b,
                                                                      const SearchConfig& cfg);

using nlohmann::json;
void to_json(json& j, const PackingCertificate& c);
PackingCertificate certificate_from_json(const json& j);

}  // namespace symcap
