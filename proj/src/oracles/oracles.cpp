#include "symcap/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "symcap/lp.hpp"

namespace symcap::oracle {

namespace {

constexpr double kZero = 1e-12;

struct DoubleProfile {
  std::vector<double> knots;
  std::vector<double> c0, c1, c2;

  explicit DoubleProfile(const RadialProfile& p) {
    for (const Rational& k : p.function().knots()) knots.push_back(k.to_double());
    for (const Quadratic& q : p.function().pieces()) {
      c0.push_back(q.c0.to_double());
      c1.push_back(q.c1.to_double());
      c2.push_back(q.c2.to_double());
    }
  }
  std::size_t index(double x) const {
    return static_cast<std::size_t>(std::lower_bound(knots.begin(), knots.end(), x) - knots.begin());
  }
  double value(double x) const {
    auto i = index(x);
    return c0[i] + c1[i] * x + c2[i] * x * x;
  }
  double slope(double x) const {
    auto i = index(x);
    return c1[i] + 2 * c2[i] * x;
  }
  double slope_right(double x) const {
    auto i = static_cast<std::size_t>(std::upper_bound(knots.begin(), knots.end(), x) - knots.begin());
    return c1[i] + 2 * c2[i] * x;
  }
};

int sign_of(double v) { return std::fabs(v) <= kZero ? 0 : (v > 0 ? 1 : -1); }

}  // namespace

double intercept(const RadialProfile& p, double r) {
  DoubleProfile d(p);
  return d.value(r) - r * d.slope(r);
}

ScanResult scan_integer_slopes(const RadialProfile& p, double step, double tol) {
  DoubleProfile d(p);
  const double lo = 0.0;
  double hi = 1.0;
  if (p.space().kind == Space::Kind::cn) hi = (d.knots.empty() ? 0.0 : std::max(0.0, d.knots.back())) + 1.0;
  const long n = static_cast<long>(std::ceil((hi - lo) / step));
  std::vector<double> xs(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) xs[static_cast<std::size_t>(i)] = std::min(hi, lo + static_cast<double>(i) * step);

  double smin = d.slope(lo), smax = smin;
  for (double x : xs) {
    smin = std::min(smin, d.slope(x));
    smax = std::max(smax, d.slope(x));
  }
  for (double k : d.knots) {
    if (k < lo || k > hi) continue;
    for (double s : {d.slope(k), d.slope_right(k)}) {
      smin = std::min(smin, s);
      smax = std::max(smax, s);
    }
  }

  ScanResult out;
  for (long k = static_cast<long>(std::ceil(smin - kZero)); k <= static_cast<long>(std::floor(smax + kZero)); ++k) {
    auto f = [&](double x) { return d.slope(x) - static_cast<double>(k); };
    std::vector<int> sg(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) sg[i] = sign_of(f(xs[i]));
    for (std::size_t i = 0; i < xs.size();) {
      if (sg[i] == 0) {
        std::size_t j = i;
        while (j + 1 < xs.size() && sg[j + 1] == 0) ++j;
        if (j == i) out.roots.push_back({xs[i], k});
        else out.runs.push_back({xs[i], xs[j], k});
        i = j + 1;
        continue;
      }
      if (i + 1 < xs.size() && sg[i + 1] != 0 && sg[i + 1] != sg[i]) {
        double a = xs[i], b = xs[i + 1];
        const int sa = sg[i];
        double root = 0.5 * (a + b);
        while (b - a > tol) {
          double m = 0.5 * (a + b);
          int sm = sign_of(f(m));
          if (sm == 0) {
            a = b = m;
            break;
          }
          if (sm == sa) a = m;
          else b = m;
        }
        root = 0.5 * (a + b);
        out.roots.push_back({root, k});
      }
      ++i;
    }
  }
  return out;
}

bool open_hulls_intersect(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  const Index n = a.front().size();
  const Index na = static_cast<Index>(a.size()), nb = static_cast<Index>(b.size());
  // variables: lambda (na), mu (nb), t
  const Index vars = na + nb + 1;
  LinearProgram<Rational> lp(vars);
  for (Index c = 0; c < n; ++c) {
    Vector row = Vector::Zero(vars);
    for (Index i = 0; i < na; ++i) row(i) = a[static_cast<std::size_t>(i)](c);
    for (Index j = 0; j < nb; ++j) row(na + j) = -b[static_cast<std::size_t>(j)](c);
    lp.add_eq(std::move(row), Rational(0));
  }
  Vector sa = Vector::Zero(vars), sb = Vector::Zero(vars);
  sa.head(na).setConstant(Rational(1));
  sb.segment(na, nb).setConstant(Rational(1));
  lp.add_eq(sa, Rational(1));
  lp.add_eq(sb, Rational(1));
  for (Index i = 0; i < na + nb; ++i) {
    Vector row = Vector::Zero(vars);
    row(i) = Rational(-1);
    row(vars - 1) = Rational(1);
    lp.add_le(std::move(row), Rational(0));  // t <= weight
  }
  Vector cap = Vector::Zero(vars);
  cap(vars - 1) = Rational(1);
  lp.add_le(cap, Rational(1));
  auto r = lp.maximize(cap);
  return r.status == LpStatus::optimal && r.objective > Rational(0);
}

}  // namespace symcap::oracle
