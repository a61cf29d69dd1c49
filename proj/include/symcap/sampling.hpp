#pragma once

#include <algorithm>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "symcap/rational.hpp"

namespace symcap {

/// SYMCAP_SEED when set, else a fixed default.
inline unsigned sampling_seed() {
  const char* s = std::getenv("SYMCAP_SEED");
  return s && *s ? static_cast<unsigned>(std::stoul(s)) : 20240611u;
}

/// Uniform p/q with 1 <= q <= max_den and p/q in [lo, hi].
inline Rational random_rational(std::mt19937& rng, const Rational& lo, const Rational& hi, int max_den = 12) {
  const int q = std::uniform_int_distribution<int>(1, max_den)(rng);
  const auto plo = (lo * Rational(q)).ceil();
  const auto phi = (hi * Rational(q)).floor();
  if (phi < plo) return lo;
  const long long span = static_cast<long long>(phi - plo);
  return Rational(plo + BigInt(std::uniform_int_distribution<long long>(0, span)(rng)), BigInt(q));
}

/// Sorted positive tuple of length n in (0, hi].
inline std::vector<Rational> random_sorted_tuple(std::mt19937& rng, std::size_t n, const Rational& hi = Rational(10)) {
  std::vector<Rational> a;
  while (a.size() < n) {
    Rational r = random_rational(rng, Rational(0), hi);
    if (r > Rational(0)) a.push_back(r);
  }
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace symcap
