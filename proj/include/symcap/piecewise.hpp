#pragma once

#include <optional>
#include <vector>

#include "symcap/rational.hpp"

namespace symcap {

/// c0 + c1 x + c2 x^2
struct Quadratic {
  Rational c0, c1, c2;

  Rational operator()(const Rational& x) const { return c0 + x * (c1 + x * c2); }
  Rational derivative(const Rational& x) const { return c1 + Rational(2) * c2 * x; }
  int degree() const { return !c2.is_zero() ? 2 : !c1.is_zero() ? 1 : 0; }

  friend Quadratic operator+(const Quadratic& a, const Quadratic& b) { return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2}; }
  friend Quadratic operator-(const Quadratic& a, const Quadratic& b) { return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2}; }
  friend Quadratic operator*(const Rational& s, const Quadratic& q) { return {s * q.c0, s * q.c1, s * q.c2}; }
  friend bool operator==(const Quadratic&, const Quadratic&) = default;
};

/// q(alpha x + beta)
Quadratic compose_affine(const Quadratic& q, const Rational& alpha, const Rational& beta);

/// Continuous piecewise quadratic on the whole line.
///
/// knots k_0 < ... < k_{m-1}; piece i lives on [k_{i-1}, k_i] with
/// k_{-1} = -inf and k_m = +inf, so there are m+1 pieces.
class PiecewiseQuadratic {
 public:
  PiecewiseQuadratic() : pieces_{Quadratic{}} {}
  explicit PiecewiseQuadratic(Quadratic q) : pieces_{std::move(q)} {}
  /// Throws PreconditionError unless knots increase strictly and
  /// pieces.size() == knots.size() + 1.
  PiecewiseQuadratic(std::vector<Rational> knots, std::vector<Quadratic> pieces);

  static PiecewiseQuadratic constant(const Rational& c) { return PiecewiseQuadratic(Quadratic{c, 0, 0}); }
  static PiecewiseQuadratic identity() { return PiecewiseQuadratic(Quadratic{0, 1, 0}); }

  const std::vector<Rational>& knots() const { return knots_; }
  const std::vector<Quadratic>& pieces() const { return pieces_; }

  /// Index of the piece whose closed interval holds x (left piece at a knot).
  std::size_t piece_index(const Rational& x) const;
  Rational operator()(const Rational& x) const { return pieces_[piece_index(x)](x); }
  Rational left_derivative(const Rational& x) const { return pieces_[piece_index(x)].derivative(x); }
  Rational right_derivative(const Rational& x) const;

  /// Lower and upper bound of piece i (nullopt for the infinite ends).
  std::optional<Rational> lower(std::size_t i) const;
  std::optional<Rational> upper(std::size_t i) const;

  PiecewiseQuadratic operator-() const { return scaled(Rational(-1)); }
  PiecewiseQuadratic scaled(const Rational& s) const;
  PiecewiseQuadratic shifted(const Rational& c) const;
  /// x -> f(alpha x + beta), alpha != 0.
  PiecewiseQuadratic compose_affine(const Rational& alpha, const Rational& beta) const;

  friend PiecewiseQuadratic operator+(const PiecewiseQuadratic& f, const PiecewiseQuadratic& g);
  friend PiecewiseQuadratic operator-(const PiecewiseQuadratic& f, const PiecewiseQuadratic& g) { return f + (-g); }
  friend bool operator==(const PiecewiseQuadratic&, const PiecewiseQuadratic&) = default;

  /// Restates the function on a finer knot set (must contain knots()).
  std::vector<Quadratic> pieces_on(const std::vector<Rational>& finer) const;

 private:
  void simplify();

  std::vector<Rational> knots_;
  std::vector<Quadratic> pieces_;
};

/// Pointwise extrema. Crossing points must be rational; an irrational
/// crossing raises PreconditionError.
PiecewiseQuadratic pointwise_min(const PiecewiseQuadratic& f, const PiecewiseQuadratic& g);
PiecewiseQuadratic pointwise_max(const PiecewiseQuadratic& f, const PiecewiseQuadratic& g);

}  // namespace symcap
