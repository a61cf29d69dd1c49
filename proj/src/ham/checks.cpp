#include "symcap/checks.hpp"

#include <algorithm>

#include "symcap/errors.hpp"

namespace symcap {

MaxActionCheck max_action_check(const Rational& s, const Rational& delta) {
  require(Rational(1, 2) < s && s < Rational(1), "s must lie in (1/2,1)");
  require(delta > Rational(0), "delta must be positive");
  SpectrumReport r = action_spectrum(reeb_composite(s, delta));
  MaxActionCheck out;
  out.max_action = r.spectrum.back();
  out.bound = (Rational(1) - Rational(2) * s) * (Rational(1) + delta / Rational(2));
  out.ok = out.max_action <= out.bound;
  return out;
}

ReebSlopeCheck reeb_slope_law(const std::vector<Rational>& sigmas, const Rational& delta) {
  require(!sigmas.empty(), "need at least one sigma");
  ReebSlopeCheck out;
  out.sigmas = sigmas;
  out.singletons = true;
  const Rational rate = Rational(1) + delta / Rational(2);
  for (const Rational& sigma : sigmas) {
    SpectrumReport r = action_spectrum(reeb(sigma, delta));
    if (r.spectrum.size() != 1 || r.spectrum.front() != -sigma * rate) out.singletons = false;
    out.actions.push_back(r.spectrum.front());
  }
  out.affine_law = true;
  for (std::size_t i = 0; i < sigmas.size(); ++i)
    for (std::size_t j = i + 1; j < sigmas.size(); ++j)
      if (out.actions[j] - out.actions[i] != -(sigmas[j] - sigmas[i]) * rate) out.affine_law = false;
  return out;
}

DeformationCheck deformation_family_check(const Rational& a, const Rational& eps, const std::vector<Rational>& s_samples,
                                          int grid) {
  require(Rational(0) < eps && eps < a && a < Rational(1), "need 0 < eps < a < 1");
  require(grid >= 1, "grid must be positive");
  for (const Rational& s : s_samples) require(Rational(0) <= s && s <= Rational(1), "s samples must lie in [0,1]");

  const RadialProfile k = k_a(a);
  std::vector<Rational> samples = s_samples;
  samples.push_back(0);
  samples.push_back(1);
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  std::vector<RadialProfile> t;
  for (const Rational& s : samples) t.push_back(t_s(a, eps, s));

  std::vector<Rational> xs;
  for (int j = 0; j <= grid; ++j) xs.emplace_back(j, grid);
  xs.push_back(a - eps);
  xs.push_back(a);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  DeformationCheck out;
  const RadialProfile& t0 = t.front();
  const RadialProfile& t1 = t.back();
  out.t1_is_ka = t1.function() == k.function();
  if (!out.t1_is_ka) out.failures.push_back("T_1 differs from K_a");
  for (const Rational& x : xs) {
    ++out.points;
    const Rational kx = k(x);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Rational tx = t[i](x);
      if (kx >= -eps && tx != kx) {
        out.agrees_on_region = false;
        out.failures.push_back("T_" + samples[i].str() + "(" + x.str() + ") != K_a");
      }
      if (i > 0 && tx > t[i - 1](x)) {
        out.monotone_in_s = false;
        out.failures.push_back("T increases in s at x=" + x.str());
      }
    }
    if (t0(x) < -eps || t0(x) > Rational(0)) {
      out.t0_close = false;
      out.failures.push_back("T_0(" + x.str() + ") outside [-eps,0]");
    }
    if (t1(x) != kx) out.t1_is_ka = false;
  }
  return out;
}

CriticalValues s_a_criticals(const Rational& a, int n) {
  std::vector<Rational> values;
  for (const OrbitRecord& o : find_orbits(s_a(a, n)))
    if (o.locus.kind == LocusKind::boundary) values.push_back(o.action);
  if (values.empty()) throw InvariantError("S_a without fixed loci");
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return CriticalValues{*lo, *hi};
}

Rational lemma_a2_residual(const Rational& a, int K) {
  require(Rational(0) < a && a < Rational(1), "a must lie in (0,1)");
  const CriticalValues c = s_a_criticals(a);
  const SpectrumReport r = action_spectrum(s_a(a), K);
  for (const Rational& v : {c.min_critical, c.max_critical})
    if (!std::binary_search(r.spectrum.begin(), r.spectrum.end(), v))
      throw InvariantError("critical value " + v.str() + " missing from the spectrum");
  const Rational first = -c.min_critical;  // c(H;[M]) - c(S_a # H;Gamma)
  const Rational second = c.max_critical;  // c(S_a # H;[M]) - c(H;[pt])
  return first + second - Rational(1);
}

}  // namespace symcap
