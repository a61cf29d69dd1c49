#include "symcap/spectrum.hpp"

#include <algorithm>
#include <tuple>

#include "symcap/errors.hpp"
#include "symcap/geometry.hpp"

namespace symcap {

namespace {

std::int64_t as_winding(const Rational& k) { return to_int64(k); }

bool covers(const OrbitRecord& plateau, const Rational& r) {
  return plateau.locus.lo <= r && (!plateau.locus.hi || r <= *plateau.locus.hi);
}

int kind_rank(LocusKind k) {
  switch (k) {
    case LocusKind::center: return 0;
    case LocusKind::boundary: return 1;
    case LocusKind::plateau: return 2;
    case LocusKind::radius: return 3;
  }
  return 4;
}

bool orbit_less(const OrbitRecord& a, const OrbitRecord& b) {
  if (a.source != b.source) return a.source < b.source;
  if (a.recapping != b.recapping) return a.recapping < b.recapping;
  if (a.locus.lo != b.locus.lo) return a.locus.lo < b.locus.lo;
  if (kind_rank(a.locus.kind) != kind_rank(b.locus.kind)) return kind_rank(a.locus.kind) < kind_rank(b.locus.kind);
  return a.winding < b.winding;
}

Rational power(const Rational& x, int n) {
  Rational out(1);
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

}  // namespace

Rational intercept_action(const RadialProfile& p, const Rational& r, std::int64_t k) {
  return p(r) - r * Rational(k);
}

std::vector<OrbitRecord> find_orbits(const RadialProfile& p) {
  const PiecewiseQuadratic& h = p.function();
  const Space& space = p.space();
  const Rational dlo = space.domain_lo();
  const std::optional<Rational> dhi = space.domain_hi();

  std::vector<OrbitRecord> plateaus;
  std::vector<std::pair<Rational, std::int64_t>> points;

  for (std::size_t i = 0; i < h.pieces().size(); ++i) {
    const Quadratic& q = h.pieces()[i];
    Rational l = h.lower(i) ? std::max(*h.lower(i), dlo) : dlo;
    std::optional<Rational> u = h.upper(i);
    if (dhi) u = u ? std::min(*u, *dhi) : *dhi;
    if (u && *u <= l) continue;
    if (q.c2.is_zero()) {
      if (q.c1.is_integer())
        plateaus.push_back(OrbitRecord{Locus{LocusKind::plateau, l, u}, as_winding(q.c1), q.c0, 0, 0});
      continue;
    }
    if (!u) throw InvariantError("quadratic piece without an upper bound");
    Rational d1 = q.derivative(l), d2 = q.derivative(*u);
    if (d2 < d1) std::swap(d1, d2);
    for (BigInt k = d1.ceil(); k <= d2.floor(); ++k) {
      Rational r = (Rational(k) - q.c1) / (Rational(2) * q.c2);
      points.emplace_back(r, as_winding(Rational(k)));
    }
  }
  // A kink contributes every winding between its one-sided slopes.
  for (const Rational& x : p.interior_knots()) {
    Rational d1 = h.left_derivative(x), d2 = h.right_derivative(x);
    if (d1 == d2) continue;
    if (d2 < d1) std::swap(d1, d2);
    for (BigInt k = d1.ceil(); k <= d2.floor(); ++k) points.emplace_back(x, as_winding(Rational(k)));
  }

  std::sort(plateaus.begin(), plateaus.end(), orbit_less);
  std::vector<OrbitRecord> merged;
  for (OrbitRecord& pl : plateaus) {
    if (!merged.empty() && merged.back().locus.hi && *merged.back().locus.hi == pl.locus.lo &&
        merged.back().winding == pl.winding) {
      if (merged.back().action != pl.action) throw InvariantError("action varies along a plateau of " + p.label());
      merged.back().locus.hi = pl.locus.hi;
      continue;
    }
    merged.push_back(std::move(pl));
  }

  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<OrbitRecord> out = merged;
  for (const auto& [r, k] : points) {
    bool absorbed = std::any_of(merged.begin(), merged.end(),
                                [&](const OrbitRecord& pl) { return pl.winding == k && covers(pl, r); });
    if (absorbed || r == dlo || (dhi && r == *dhi)) continue;
    out.push_back(OrbitRecord{Locus{LocusKind::radius, r, std::nullopt}, k, intercept_action(p, r, k), 0, 0});
  }

  if (space.kind == Space::Kind::cn) {
    bool in_plateau = std::any_of(merged.begin(), merged.end(), [&](const OrbitRecord& pl) { return covers(pl, dlo); });
    if (!in_plateau) {
      Rational slope = h.right_derivative(dlo);
      std::int64_t k = slope.is_integer() ? as_winding(slope) : 0;
      out.push_back(OrbitRecord{Locus{LocusKind::center, dlo, std::nullopt}, k, h(dlo), 0, 0});
    }
  } else {
    out.push_back(OrbitRecord{Locus{LocusKind::boundary, dlo, std::nullopt}, 0, h(dlo), 0, 0});
    out.push_back(OrbitRecord{Locus{LocusKind::boundary, *dhi, std::nullopt}, 0, h(*dhi), 0, 0});
  }
  std::sort(out.begin(), out.end(), orbit_less);
  return out;
}

Rational normalization_shift(const RadialProfile& p) {
  if (p.space().kind == Space::Kind::cn) return Rational(0);
  const int n = p.space().dimension;
  const PiecewiseQuadratic& h = p.function();
  // With y = 1 - x: q(1 - y) = A + B y + C y^2 against n y^{n-1} dy.
  Rational total(0);
  for (std::size_t i = 0; i < h.pieces().size(); ++i) {
    Rational l = h.lower(i) ? std::max(*h.lower(i), Rational(0)) : Rational(0);
    Rational u = h.upper(i) ? std::min(*h.upper(i), Rational(1)) : Rational(1);
    if (u <= l) continue;
    Quadratic g = compose_affine(h.pieces()[i], Rational(-1), Rational(1));
    auto antiderivative = [&](const Rational& y) {
      return g.c0 * power(y, n) + g.c1 * Rational(n, n + 1) * power(y, n + 1) + g.c2 * Rational(n, n + 2) * power(y, n + 2);
    };
    total += antiderivative(Rational(1) - l) - antiderivative(Rational(1) - u);
  }
  return -total;
}

bool SpectrumReport::is_identity() const {
  return std::none_of(implant_nontrivial.begin(), implant_nontrivial.end(), [](bool b) { return b; });
}

SpectrumReport action_spectrum(const ImplantedSystem& sys, int recapping_window, bool apply_shift) {
  require(!sys.implants.empty(), "system without implants");
  require(recapping_window >= 0, "recapping window must be nonnegative");
  SpectrumReport report;
  report.space = sys.implants.front().space();
  report.normalization_shift = Rational(0);
  for (std::size_t i = 0; i < sys.implants.size(); ++i) {
    const RadialProfile& p = sys.implants[i];
    require(p.space() == report.space, "implants must share a space");
    report.implant_nontrivial.push_back(!p.is_zero());
    report.normalization_shift += normalization_shift(p);
    const int window = report.space.kind == Space::Kind::cpn ? recapping_window : 0;
    for (const OrbitRecord& base : find_orbits(p)) {
      for (int k = -window; k <= window; ++k) {
        OrbitRecord o = base;
        o.recapping = k;
        o.action += Rational(k);
        o.source = static_cast<int>(i);
        report.orbits.push_back(std::move(o));
      }
    }
  }
  if (apply_shift) {
    for (OrbitRecord& o : report.orbits) o.action += report.normalization_shift;
    report.shift_applied = true;
  }
  std::sort(report.orbits.begin(), report.orbits.end(), orbit_less);
  for (const OrbitRecord& o : report.orbits) report.spectrum.push_back(o.action);
  std::sort(report.spectrum.begin(), report.spectrum.end());
  report.spectrum.erase(std::unique(report.spectrum.begin(), report.spectrum.end()), report.spectrum.end());
  return report;
}

SpectrumReport action_spectrum(const RadialProfile& p, int recapping_window, bool apply_shift) {
  return action_spectrum(ImplantedSystem{{p}}, recapping_window, apply_shift);
}

SpectrumReport negate_spectrum(const ImplantedSystem& sys, int recapping_window) {
  return action_spectrum(sys.negated(), recapping_window);
}

SpectrumReport negate_spectrum(const RadialProfile& p, int recapping_window) {
  return action_spectrum(p.negated(), recapping_window);
}

NormCandidates spectral_norm_candidates(const SpectrumReport& spec, const SpectrumReport& spec_inv) {
  std::vector<Rational> negated;
  for (auto it = spec.spectrum.rbegin(); it != spec.spectrum.rend(); ++it) negated.push_back(-*it);
  require(negated == spec_inv.spectrum, "spectra are not negation-consistent");
  require(spec.implant_nontrivial == spec_inv.implant_nontrivial, "reports describe different systems");

  const bool identity = spec.is_identity();
  std::vector<int> live;
  for (std::size_t i = 0; i < spec.implant_nontrivial.size(); ++i)
    if (spec.implant_nontrivial[i]) live.push_back(static_cast<int>(i));

  NormCandidates out;
  for (const OrbitRecord& x : spec.orbits) {
    for (const OrbitRecord& y : spec_inv.orbits) {
      Rational v = x.action + y.action;
      if (v < Rational(0) || (v.is_zero() && !identity)) continue;
      out.candidates.push_back(v);
      bool survives = true;
      if (live.size() >= 2) {
        for (int i : live) {
          Rational rest = (x.source != i ? x.action : Rational(0)) + (y.source != i ? y.action : Rational(0));
          if (rest.is_zero()) survives = false;
        }
      }
      if (survives) out.surviving.push_back(v);
    }
  }
  for (auto* v : {&out.candidates, &out.surviving}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  if (out.surviving.empty()) throw InvariantError("no spectral norm candidate survives elimination");
  out.selected = out.surviving.back();
  return out;
}

const char* to_string(LocusKind kind) {
  switch (kind) {
    case LocusKind::center: return "center";
    case LocusKind::radius: return "radius";
    case LocusKind::plateau: return "plateau";
    case LocusKind::boundary: return "boundary";
  }
  return "?";
}

void to_json(json& j, const OrbitRecord& o) {
  json locus{{"kind", to_string(o.locus.kind)}, {"lo", o.locus.lo.str()}};
  if (o.locus.kind == LocusKind::plateau) locus["hi"] = o.locus.hi ? json(o.locus.hi->str()) : json(nullptr);
  j = json{{"locus", std::move(locus)},
           {"winding", o.winding},
           {"action", o.action.str()},
           {"recapping", o.recapping},
           {"source", o.source}};
}

OrbitRecord orbit_from_json(const json& j) {
  try {
    OrbitRecord o;
    const json& locus = j.at("locus");
    const std::string kind = locus.at("kind").get<std::string>();
    if (kind == "center") o.locus.kind = LocusKind::center;
    else if (kind == "radius") o.locus.kind = LocusKind::radius;
    else if (kind == "plateau") o.locus.kind = LocusKind::plateau;
    else if (kind == "boundary") o.locus.kind = LocusKind::boundary;
    else throw ParseError("unknown locus kind '" + kind + "'");
    o.locus.lo = locus.at("lo").get<Rational>();
    if (locus.contains("hi") && !locus["hi"].is_null()) o.locus.hi = locus["hi"].get<Rational>();
    o.winding = j.at("winding").get<std::int64_t>();
    o.action = j.at("action").get<Rational>();
    o.recapping = j.at("recapping").get<std::int64_t>();
    o.source = j.at("source").get<int>();
    return o;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad orbit JSON: ") + e.what());
  }
}

void to_json(json& j, const SpectrumReport& r) {
  json orbits = json::array();
  for (const OrbitRecord& o : r.orbits) orbits.push_back(o);
  json spectrum = json::array();
  for (const Rational& a : r.spectrum) spectrum.push_back(a.str());
  j = json{{"space", to_string(r.space)},
           {"orbits", std::move(orbits)},
           {"spectrum", std::move(spectrum)},
           {"normalization_shift", r.normalization_shift.str()},
           {"shift_applied", r.shift_applied},
           {"implant_nontrivial", r.implant_nontrivial}};
}

SpectrumReport spectrum_from_json(const json& j) {
  try {
    SpectrumReport r;
    r.space = parse_space(j.at("space").get<std::string>());
    for (const json& o : j.at("orbits")) r.orbits.push_back(orbit_from_json(o));
    for (const json& a : j.at("spectrum")) r.spectrum.push_back(a.get<Rational>());
    r.normalization_shift = j.at("normalization_shift").get<Rational>();
    r.shift_applied = j.at("shift_applied").get<bool>();
    r.implant_nontrivial = j.at("implant_nontrivial").get<std::vector<bool>>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad spectrum JSON: ") + e.what());
  }
}

void to_json(json& j, const NormCandidates& c) {
  auto strs = [](const std::vector<Rational>& v) {
    json a = json::array();
    for (const Rational& x : v) a.push_back(x.str());
    return a;
  };
  j = json{{"candidates", strs(c.candidates)}, {"surviving", strs(c.surviving)}, {"selected", c.selected.str()}};
}

}  // namespace symcap
