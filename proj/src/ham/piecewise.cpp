#include "symcap/piecewise.hpp"

#include <algorithm>
#include <cmath>

#include "symcap/errors.hpp"

namespace symcap {

Quadratic compose_affine(const Quadratic& q, const Rational& alpha, const Rational& beta) {
  return Quadratic{q.c0 + q.c1 * beta + q.c2 * beta * beta, q.c1 * alpha + Rational(2) * q.c2 * alpha * beta,
                   q.c2 * alpha * alpha};
}

PiecewiseQuadratic::PiecewiseQuadratic(std::vector<Rational> knots, std::vector<Quadratic> pieces)
    : knots_(std::move(knots)), pieces_(std::move(pieces)) {
  require(pieces_.size() == knots_.size() + 1, "piecewise quadratic needs one more piece than knots");
  for (std::size_t i = 1; i < knots_.size(); ++i) require(knots_[i - 1] < knots_[i], "knots must increase strictly");
  simplify();
}

void PiecewiseQuadratic::simplify() {
  std::vector<Rational> k;
  std::vector<Quadratic> p{pieces_.front()};
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (pieces_[i + 1] == p.back()) continue;
    k.push_back(knots_[i]);
    p.push_back(pieces_[i + 1]);
  }
  knots_ = std::move(k);
  pieces_ = std::move(p);
}

std::size_t PiecewiseQuadratic::piece_index(const Rational& x) const {
  return static_cast<std::size_t>(std::lower_bound(knots_.begin(), knots_.end(), x) - knots_.begin());
}

Rational PiecewiseQuadratic::right_derivative(const Rational& x) const {
  auto i = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), x) - knots_.begin());
  return pieces_[i].derivative(x);
}

std::optional<Rational> PiecewiseQuadratic::lower(std::size_t i) const {
  if (i == 0) return std::nullopt;
  return knots_[i - 1];
}

std::optional<Rational> PiecewiseQuadratic::upper(std::size_t i) const {
  if (i >= knots_.size()) return std::nullopt;
  return knots_[i];
}

PiecewiseQuadratic PiecewiseQuadratic::scaled(const Rational& s) const {
  std::vector<Quadratic> p;
  for (const Quadratic& q : pieces_) p.push_back(s * q);
  return PiecewiseQuadratic(knots_, std::move(p));
}

PiecewiseQuadratic PiecewiseQuadratic::shifted(const Rational& c) const {
  std::vector<Quadratic> p = pieces_;
  for (Quadratic& q : p) q.c0 += c;
  return PiecewiseQuadratic(knots_, std::move(p));
}

PiecewiseQuadratic PiecewiseQuadratic::compose_affine(const Rational& alpha, const Rational& beta) const {
  require(!alpha.is_zero(), "affine reparametrization needs a nonzero slope");
  std::vector<Rational> k;
  std::vector<Quadratic> p;
  for (const Rational& t : knots_) k.push_back((t - beta) / alpha);
  for (const Quadratic& q : pieces_) p.push_back(symcap::compose_affine(q, alpha, beta));
  if (alpha < Rational(0)) {
    std::reverse(k.begin(), k.end());
    std::reverse(p.begin(), p.end());
  }
  return PiecewiseQuadratic(std::move(k), std::move(p));
}

std::vector<Quadratic> PiecewiseQuadratic::pieces_on(const std::vector<Rational>& finer) const {
  std::vector<Quadratic> out;
  out.reserve(finer.size() + 1);
  for (std::size_t i = 0; i <= finer.size(); ++i) {
    // any point strictly inside the i-th interval of `finer` selects the piece
    Rational probe = finer.empty() ? Rational(0)
                     : i == 0      ? finer.front() - Rational(1)
                     : i == finer.size() ? finer.back() + Rational(1)
                                         : (finer[i - 1] + finer[i]) / Rational(2);
    out.push_back(pieces_[piece_index(probe)]);
  }
  return out;
}

namespace {

std::vector<Rational> merged_knots(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> k;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(k));
  return k;
}

Rational interval_probe(const std::vector<Rational>& knots, std::size_t i) {
  if (knots.empty()) return Rational(0);
  if (i == 0) return knots.front() - Rational(1);
  if (i == knots.size()) return knots.back() + Rational(1);
  return (knots[i - 1] + knots[i]) / Rational(2);
}

bool strictly_inside(const Rational& x, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  return (!lo || *lo < x) && (!hi || x < *hi);
}

// Rational zeros of d strictly inside (lo, hi); throws on an irrational one.
std::vector<Rational> crossings(const Quadratic& d, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  std::vector<Rational> out;
  if (d.c2.is_zero()) {
    if (!d.c1.is_zero()) {
      Rational r = -d.c0 / d.c1;
      if (strictly_inside(r, lo, hi)) out.push_back(r);
    }
    return out;
  }
  Rational disc = d.c1 * d.c1 - Rational(4) * d.c2 * d.c0;
  if (disc < Rational(0)) return out;
  Rational root;
  if (!exact_sqrt(disc, root)) {
    const double s = std::sqrt(disc.to_double());
    for (double r : {(-d.c1.to_double() - s) / (2 * d.c2.to_double()), (-d.c1.to_double() + s) / (2 * d.c2.to_double())}) {
      if ((!lo || lo->to_double() < r) && (!hi || r < hi->to_double()))
        throw PreconditionError("pointwise extremum has an irrational crossing point");
    }
    return out;
  }
  for (const Rational& r : {(-d.c1 - root) / (Rational(2) * d.c2), (-d.c1 + root) / (Rational(2) * d.c2)})
    if (strictly_inside(r, lo, hi)) out.push_back(r);
  return out;
}

PiecewiseQuadratic pointwise_select(const PiecewiseQuadratic& f, const PiecewiseQuadratic& g, bool take_max) {
  std::vector<Rational> knots = merged_knots(f.knots(), g.knots());
  {
    auto fp = f.pieces_on(knots);
    auto gp = g.pieces_on(knots);
    std::vector<Rational> extra;
    for (std::size_t i = 0; i <= knots.size(); ++i) {
      std::optional<Rational> lo = i == 0 ? std::nullopt : std::optional<Rational>(knots[i - 1]);
      std::optional<Rational> hi = i == knots.size() ? std::nullopt : std::optional<Rational>(knots[i]);
      for (Rational& r : crossings(fp[i] - gp[i], lo, hi)) extra.push_back(std::move(r));
    }
    std::sort(extra.begin(), extra.end());
    knots = merged_knots(knots, extra);
  }
  auto fp = f.pieces_on(knots);
  auto gp = g.pieces_on(knots);
  std::vector<Quadratic> out;
  for (std::size_t i = 0; i <= knots.size(); ++i) {
    Rational x = interval_probe(knots, i);
    const bool f_wins = take_max ? fp[i](x) >= gp[i](x) : fp[i](x) <= gp[i](x);
    out.push_back(f_wins ? fp[i] : gp[i]);
  }
  return PiecewiseQuadratic(std::move(knots), std::move(out));
}

}  // namespace

PiecewiseQuadratic operator+(const PiecewiseQuadratic& f, const PiecewiseQuadratic& g) {
  std::vector<Rational> knots = merged_knots(f.knots(), g.knots());
  auto fp = f.pieces_on(knots);
  auto gp = g.pieces_on(knots);
  for (std::size_t i = 0; i < fp.size(); ++i) fp[i] = fp[i] + gp[i];
  return PiecewiseQuadratic(std::move(knots), std::move(fp));
}

PiecewiseQuadratic pointwise_min(const PiecewiseQuadratic& f, const PiecewiseQuadratic& g) {
  return pointwise_select(f, g, false);
}

PiecewiseQuadratic pointwise_max(const PiecewiseQuadratic& f, const PiecewiseQuadratic& g) {
  return pointwise_select(f, g, true);
}

}  // namespace symcap
