#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symcap/profile.hpp"

namespace symcap {

enum class LocusKind { center, radius, plateau, boundary };

/// center: r = 0 on C^n. radius: an isolated circle of orbits at r = lo.
/// plateau: every radius in [lo, hi] (hi nullopt = unbounded).
/// boundary: the fixed locus x = lo (0 or 1) on CP^n.
struct Locus {
  LocusKind kind = LocusKind::radius;
  Rational lo;
  std::optional<Rational> hi;

  friend bool operator==(const Locus&, const Locus&) = default;
};

struct OrbitRecord {
  Locus locus;
  std::int64_t winding = 0;
  /// h(r) - r h'(r) + recapping (rho = 1), plus the normalization shift
  /// when it was requested.
  Rational action;
  std::int64_t recapping = 0;
  /// Index of the implant the orbit lives in.
  int source = 0;

  friend bool operator==(const OrbitRecord&, const OrbitRecord&) = default;
};

struct SpectrumReport {
  Space space;
  std::vector<OrbitRecord> orbits;
  /// Sorted, deduplicated actions of `orbits`.
  std::vector<Rational> spectrum;
  /// -mean of the profile against n(1 - x)^{n-1} dx on CP^n; 0 on C^n.
  Rational normalization_shift;
  bool shift_applied = false;
  /// Per implant: false when that implant is identically zero.
  std::vector<bool> implant_nontrivial;

  bool is_identity() const;
  friend bool operator==(const SpectrumReport&, const SpectrumReport&) = default;
};

/// 1-periodic orbits of the radial flow: loci where h' is an integer, the
/// center (C^n) or the two boundary loci (CP^n). No recappings.
std::vector<OrbitRecord> find_orbits(const RadialProfile& p);

/// Tangent-line intercept h(r) - r k.
Rational intercept_action(const RadialProfile& p, const Rational& r, std::int64_t k);

Rational normalization_shift(const RadialProfile& p);

/// Orbits with recappings k in [-K, K] on CP^n (K ignored on C^n).
SpectrumReport action_spectrum(const RadialProfile& p, int recapping_window = 0, bool apply_shift = false);
SpectrumReport action_spectrum(const ImplantedSystem& sys, int recapping_window = 0, bool apply_shift = false);

/// Spectrum of the inverse system, computed from the negated profile.
SpectrumReport negate_spectrum(const RadialProfile& p, int recapping_window = 0);
SpectrumReport negate_spectrum(const ImplantedSystem& sys, int recapping_window = 0);

struct NormCandidates {
  std::vector<Rational> candidates;
  /// Candidates surviving the implant-degeneration test.
  std::vector<Rational> surviving;
  Rational selected;
};

/// All sums x + y (x from `spec`, y from `spec_inv`) that are >= 0, with 0
/// kept only for the identity. With two or more nontrivial implants a sum
/// is discarded when it collapses to 0 once any single implant is switched
/// off; the largest survivor is selected.
NormCandidates spectral_norm_candidates(const SpectrumReport& spec, const SpectrumReport& spec_inv);

using nlohmann::json;
const char* to_string(LocusKind kind);
void to_json(json& j, const OrbitRecord& o);
OrbitRecord orbit_from_json(const json& j);
void to_json(json& j, const SpectrumReport& r);
SpectrumReport spectrum_from_json(const json& j);
void to_json(json& j, const NormCandidates& c);

}  // namespace symcap
