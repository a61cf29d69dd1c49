#pragma once

#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "symcap/linalg.hpp"
#include "symcap/rational.hpp"

namespace symcap {

/// The closed half-space { x : normal . x <= offset }.
///
/// Normals are kept as coprime integer vectors so that two descriptions of
/// the same half-space compare equal.
struct HalfSpace {
  Vector normal;
  Rational offset;

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

/// Rescales by a positive factor so the normal is a primitive integer vector.
/// Throws PreconditionError for a zero normal.
HalfSpace normalized(Vector normal, Rational offset);

/// Polytope given by half-spaces, stored in canonical (normalized, sorted,
/// deduplicated) order.
class Polytope {
 public:
  Polytope(Index dimension, std::vector<HalfSpace> halfspaces);

  Index dimension() const { return dim_; }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }

  bool contains(const Vector& point) const;

  friend bool operator==(const Polytope&, const Polytope&) = default;

 private:
  Index dim_;
  std::vector<HalfSpace> halfspaces_;
};

struct Box {
  Vector lo;
  Vector hi;
};

/// True iff the polytope has an interior point (exact LP).
bool has_nonempty_interior(const Polytope& p);
/// Axis-aligned bounding box; nullopt when the polytope is unbounded or empty.
std::optional<Box> bounding_box(const Polytope& p);
/// All vertices, deduplicated, in lexicographic order. Requires a bounded polytope.
std::vector<Vector> vertices(const Polytope& p);
/// Every offset multiplied by `factor` > 0.
Polytope scaled(const Polytope& p, const Rational& factor);

/// Element of SL_n(Z) x R^n acting by x -> M x + t.
class AffineMap {
 public:
  /// Throws PreconditionError unless `matrix` is square with determinant +1
  /// and `translation` has matching length.
  AffineMap(IntMatrix matrix, Vector translation);

  static AffineMap identity(Index n);
  static AffineMap translate(Vector t);

  Index dimension() const { return matrix_.rows(); }
  const IntMatrix& matrix() const { return matrix_; }
  const Vector& translation() const { return translation_; }

  Vector operator()(const Vector& x) const;
  /// Linear part applied to x.
  Vector linear(const Vector& x) const;
  AffineMap inverse() const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

 private:
  IntMatrix matrix_;
  Vector translation_;
};

/// (g o h)(x) = g(h(x))
AffineMap compose(const AffineMap& g, const AffineMap& h);

/// Image of {x : normal . x <= offset} constraints under g.
Polytope transformed(const Polytope& p, const AffineMap& g);

/// g applied to the closed standard simplex conv{0, a e_1, ..., a e_n}.
class SimplexImage {
 public:
  SimplexImage(Rational capacity, AffineMap transform);

  const Rational& capacity() const { return capacity_; }
  const AffineMap& transform() const { return transform_; }
  Index dimension() const { return transform_.dimension(); }

  friend bool operator==(const SimplexImage&, const SimplexImage&) = default;

 private:
  Rational capacity_;
  AffineMap transform_;
};

/// n+1 vertices: g(0), g(a e_1), ..., g(a e_n).
std::vector<Vector> simplex_vertices(const SimplexImage& s);

/// g . s, i.e. the simplex with transform g o s.transform.
SimplexImage apply(const AffineMap& g, const SimplexImage& s);

/// Closed containment: every vertex satisfies every constraint.
bool contains(const Polytope& p, const SimplexImage& s);

/// True iff the open simplices do not meet. Decided by searching for a
/// separating hyperplane with the exact LP solver.
bool interiors_disjoint(const SimplexImage& a, const SimplexImage& b);
/// Same test on raw vertex lists; each list must span a full-dimensional
/// simplex (PreconditionError otherwise).
bool interiors_disjoint(std::span<const Vector> a, std::span<const Vector> b);

/// Throws PreconditionError if the n+1 points are affinely dependent.
void require_full_dimensional(std::span<const Vector> simplex);

/// Ellipsoid, polydisk, or a general moment polytope in the closed
/// nonnegative orthant.
class ToricDomain {
 public:
  enum class Kind { ellipsoid, polydisk, polytope };

  /// Parameters must be positive; they are sorted nondecreasing.
  static ToricDomain ellipsoid(std::vector<Rational> a);
  static ToricDomain polydisk(std::vector<Rational> a);
  /// Must be bounded, inside the nonnegative orthant, with nonempty interior.
  static ToricDomain polytope(Polytope p);
  static ToricDomain ball(const Rational& a, Index n) { return ellipsoid(std::vector<Rational>(static_cast<std::size_t>(n), a)); }

  Kind kind() const { return kind_; }
  Index dimension() const;
  /// Sorted parameters (ellipsoid/polydisk only; empty for polytopes).
  const std::vector<Rational>& params() const { return params_; }
  /// The H-rep for polytope kind; for the other kinds, the moment polytope.
  const Polytope& polytope() const { return *polytope_; }

  friend bool operator==(const ToricDomain&, const ToricDomain&) = default;

 private:
  ToricDomain(Kind kind, std::vector<Rational> params, Polytope p);

  Kind kind_;
  std::vector<Rational> params_;
  std::optional<Polytope> polytope_;
};

const char* to_string(ToricDomain::Kind kind);

/// Toric image: E(a) -> {x >= 0, sum x_i / a_i <= 1}; P(a) -> prod [0, a_i].
Polytope moment_polytope(const ToricDomain& domain);

/// Conformal rescaling by sqrt(factor): moment coordinates scale by factor.
ToricDomain scale_domain(const ToricDomain& domain, const Rational& factor);

// JSON: rationals as "p/q" strings, vectors as arrays.
using nlohmann::json;
void to_json(json& j, const Rational& r);
void from_json(const json& j, Rational& r);
json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);
void to_json(json& j, const AffineMap& g);
AffineMap affine_map_from_json(const json& j);
void to_json(json& j, const HalfSpace& h);
void to_json(json& j, const Polytope& p);
Polytope polytope_from_json(const json& j);
void to_json(json& j, const SimplexImage& s);
SimplexImage simplex_from_json(const json& j);
void to_json(json& j, const ToricDomain& d);
ToricDomain domain_from_json(const json& j);

}  // namespace symcap
