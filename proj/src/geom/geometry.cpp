#include "symcap/geometry.hpp"

#include <algorithm>
#include <boost/multiprecision/integer.hpp>
#include <string>

#include "symcap/errors.hpp"
#include "symcap/lp.hpp"

namespace symcap {

namespace {

bool lex_less(const Vector& a, const Vector& b) {
  const Index n = std::min(a.size(), b.size());
  for (Index i = 0; i < n; ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return a.size() < b.size();
}

bool same(const Vector& a, const Vector& b) { return a.size() == b.size() && a == b; }

bool halfspace_less(const HalfSpace& a, const HalfSpace& b) {
  if (lex_less(a.normal, b.normal)) return true;
  if (lex_less(b.normal, a.normal)) return false;
  return a.offset < b.offset;
}

Vector unit(Index n, Index i) {
  Vector e = Vector::Zero(n);
  e(i) = Rational(1);
  return e;
}

}  // namespace

HalfSpace normalized(Vector normal, Rational offset) {
  BigInt lcm = 1;
  for (Index i = 0; i < normal.size(); ++i) {
    BigInt d = normal(i).denominator();
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  BigInt g = 0;
  for (Index i = 0; i < normal.size(); ++i) {
    BigInt v = (normal(i) * Rational(lcm)).numerator();
    g = boost::multiprecision::gcd(g, v < 0 ? BigInt(-v) : v);
  }
  if (g == 0) throw PreconditionError("half-space with zero normal");
  Rational factor(lcm, g);
  for (Index i = 0; i < normal.size(); ++i) normal(i) *= factor;
  offset *= factor;
  return HalfSpace{std::move(normal), std::move(offset)};
}

Polytope::Polytope(Index dimension, std::vector<HalfSpace> halfspaces) : dim_(dimension) {
  require(dimension >= 1, "polytope dimension must be positive");
  for (HalfSpace& h : halfspaces) {
    require(h.normal.size() == dimension, "half-space normal has wrong dimension");
    halfspaces_.push_back(normalized(std::move(h.normal), std::move(h.offset)));
  }
  std::sort(halfspaces_.begin(), halfspaces_.end(), halfspace_less);
  halfspaces_.erase(std::unique(halfspaces_.begin(), halfspaces_.end(),
                                [](const HalfSpace& a, const HalfSpace& b) {
                                  return same(a.normal, b.normal) && a.offset == b.offset;
                                }),
                    halfspaces_.end());
}

bool Polytope::contains(const Vector& point) const {
  require(point.size() == dim_, "dimension mismatch");
  return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                     [&](const HalfSpace& h) { return h.normal.dot(point) <= h.offset; });
}

namespace {

LinearProgram<Rational> constraint_program(const Polytope& p, Index extra_vars) {
  const Index n = p.dimension();
  LinearProgram<Rational> lp(n + extra_vars);
  for (const HalfSpace& h : p.halfspaces()) {
    Vector row = Vector::Zero(n + extra_vars);
    row.head(n) = h.normal;
    lp.add_le(std::move(row), h.offset);
  }
  return lp;
}

}  // namespace

bool has_nonempty_interior(const Polytope& p) {
  const Index n = p.dimension();
  LinearProgram<Rational> lp(n + 1);
  for (const HalfSpace& h : p.halfspaces()) {
    Vector row = Vector::Zero(n + 1);
    row.head(n) = h.normal;
    row(n) = Rational(1);
    lp.add_le(std::move(row), h.offset);
  }
  lp.add_le(unit(n + 1, n), Rational(1));
  auto r = lp.maximize(unit(n + 1, n));
  return r.status == LpStatus::optimal && r.objective > Rational(0);
}

std::optional<Box> bounding_box(const Polytope& p) {
  const Index n = p.dimension();
  LinearProgram<Rational> lp = constraint_program(p, 0);
  Box box{Vector::Zero(n), Vector::Zero(n)};
  for (Index j = 0; j < n; ++j) {
    auto hi = lp.maximize(unit(n, j));
    auto lo = lp.minimize(unit(n, j));
    if (hi.status != LpStatus::optimal || lo.status != LpStatus::optimal) return std::nullopt;
    box.hi(j) = hi.objective;
    box.lo(j) = lo.objective;
  }
  return box;
}

std::vector<Vector> vertices(const Polytope& p) {
  const Index n = p.dimension();
  const auto& hs = p.halfspaces();
  const std::size_t m = hs.size();
  std::vector<Vector> out;
  if (m < static_cast<std::size_t>(n)) return out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
  for (;;) {
    Matrix a(n, n);
    Vector b(n);
    for (Index r = 0; r < n; ++r) {
      a.row(r) = hs[pick[static_cast<std::size_t>(r)]].normal.transpose();
      b(r) = hs[pick[static_cast<std::size_t>(r)]].offset;
    }
    if (auto x = exact_solve<Rational>(a, b); x && p.contains(*x)) out.push_back(*x);
    // next combination
    Index k = n - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == m - static_cast<std::size_t>(n) + static_cast<std::size_t>(k)) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (Index j = k + 1; j < n; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end(), same), out.end());
  return out;
}

Polytope scaled(const Polytope& p, const Rational& factor) {
  require(factor > Rational(0), "scale factor must be positive");
  std::vector<HalfSpace> hs = p.halfspaces();
  for (HalfSpace& h : hs) h.offset *= factor;
  return Polytope(p.dimension(), std::move(hs));
}

AffineMap::AffineMap(IntMatrix matrix, Vector translation)
    : matrix_(std::move(matrix)), translation_(std::move(translation)) {
  require(matrix_.rows() == matrix_.cols() && matrix_.rows() >= 1, "transform matrix must be square");
  require(translation_.size() == matrix_.rows(), "translation length does not match matrix");
  require(integer_determinant(matrix_) == 1, "transform matrix must have determinant +1");
}

AffineMap AffineMap::identity(Index n) { return AffineMap(IntMatrix::Identity(n, n), Vector::Zero(n)); }

AffineMap AffineMap::translate(Vector t) {
  const Index n = t.size();
  return AffineMap(IntMatrix::Identity(n, n), std::move(t));
}

Vector AffineMap::linear(const Vector& x) const {
  require(x.size() == dimension(), "dimension mismatch");
  Vector y = Vector::Zero(dimension());
  for (Index i = 0; i < dimension(); ++i)
    for (Index j = 0; j < dimension(); ++j)
      if (matrix_(i, j) != 0) y(i) += Rational(matrix_(i, j)) * x(j);
  return y;
}

Vector AffineMap::operator()(const Vector& x) const { return linear(x) + translation_; }

AffineMap AffineMap::inverse() const {
  auto inv = exact_inverse<Rational>(to_rational(matrix_));
  if (!inv) throw InvariantError("unimodular matrix without inverse");
  IntMatrix m = to_integer(*inv);
  Vector t = -(*inv * translation_);
  return AffineMap(std::move(m), std::move(t));
}

AffineMap compose(const AffineMap& g, const AffineMap& h) {
  require(g.dimension() == h.dimension(), "dimension mismatch");
  IntMatrix m = g.matrix() * h.matrix();
  return AffineMap(std::move(m), g(h.translation()));
}

Polytope transformed(const Polytope& p, const AffineMap& g) {
  require(p.dimension() == g.dimension(), "dimension mismatch");
  auto inv = exact_inverse<Rational>(to_rational(g.matrix()));
  if (!inv) throw InvariantError("unimodular matrix without inverse");
  Matrix inv_t = inv->transpose();
  std::vector<HalfSpace> hs;
  for (const HalfSpace& h : p.halfspaces()) {
    Vector normal = inv_t * h.normal;
    Rational offset = h.offset + normal.dot(g.translation());
    hs.push_back(HalfSpace{std::move(normal), std::move(offset)});
  }
  return Polytope(p.dimension(), std::move(hs));
}

SimplexImage::SimplexImage(Rational capacity, AffineMap transform)
    : capacity_(std::move(capacity)), transform_(std::move(transform)) {
  require(capacity_ > Rational(0), "simplex capacity must be positive");
}

std::vector<Vector> simplex_vertices(const SimplexImage& s) {
  const Index n = s.dimension();
  const AffineMap& g = s.transform();
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  out.push_back(g.translation());
  for (Index j = 0; j < n; ++j) {
    Vector v = g.translation();
    for (Index i = 0; i < n; ++i)
      if (g.matrix()(i, j) != 0) v(i) += Rational(g.matrix()(i, j)) * s.capacity();
    out.push_back(std::move(v));
  }
  return out;
}

SimplexImage apply(const AffineMap& g, const SimplexImage& s) {
  return SimplexImage(s.capacity(), compose(g, s.transform()));
}

bool contains(const Polytope& p, const SimplexImage& s) {
  require(p.dimension() == s.dimension(), "dimension mismatch between polytope and simplex");
  for (const Vector& v : simplex_vertices(s))
    if (!p.contains(v)) return false;
  return true;
}

void require_full_dimensional(std::span<const Vector> simplex) {
  require(!simplex.empty(), "empty simplex");
  const Index n = simplex.front().size();
  require(static_cast<Index>(simplex.size()) == n + 1, "simplex needs n+1 vertices");
  Matrix edges(n, n);
  for (Index j = 0; j < n; ++j) {
    require(simplex[static_cast<std::size_t>(j + 1)].size() == n, "dimension mismatch");
    edges.col(j) = simplex[static_cast<std::size_t>(j + 1)] - simplex.front();
  }
  require(exact_determinant(edges) != Rational(0), "degenerate (zero-volume) simplex");
}

bool interiors_disjoint(std::span<const Vector> a, std::span<const Vector> b) {
  require_full_dimensional(a);
  require_full_dimensional(b);
  const Index n = a.front().size();
  require(b.front().size() == n, "dimension mismatch");
  // Unknowns (w, c): w.v <= c on a, w.u >= c on b, and a normalization that
  // forces w != 0 for full-dimensional inputs.
  LinearProgram<Rational> lp(n + 1);
  Vector norm = Vector::Zero(n + 1);
  for (const Vector& v : a) {
    Vector row(n + 1);
    row.head(n) = v;
    row(n) = Rational(-1);
    lp.add_le(row, Rational(0));
    norm -= row;
  }
  for (const Vector& u : b) {
    Vector row(n + 1);
    row.head(n) = u;
    row(n) = Rational(-1);
    lp.add_ge(row, Rational(0));
    norm += row;
  }
  lp.add_eq(std::move(norm), Rational(1));
  return lp.feasible();
}

bool interiors_disjoint(const SimplexImage& a, const SimplexImage& b) {
  require(a.dimension() == b.dimension(), "dimension mismatch between simplices");
  auto va = simplex_vertices(a);
  auto vb = simplex_vertices(b);
  return interiors_disjoint(std::span<const Vector>(va), std::span<const Vector>(vb));
}

ToricDomain::ToricDomain(Kind kind, std::vector<Rational> params, Polytope p)
    : kind_(kind), params_(std::move(params)), polytope_(std::move(p)) {}

namespace {

std::vector<Rational> sorted_positive(std::vector<Rational> a, const char* what) {
  require(!a.empty(), std::string(what) + " needs at least one parameter");
  for (const Rational& x : a) require(x > Rational(0), std::string(what) + " parameters must be positive");
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

ToricDomain ToricDomain::ellipsoid(std::vector<Rational> a) {
  a = sorted_positive(std::move(a), "ellipsoid");
  const Index n = static_cast<Index>(a.size());
  std::vector<HalfSpace> hs;
  Vector diag(n);
  for (Index i = 0; i < n; ++i) {
    hs.push_back(HalfSpace{-unit(n, i), Rational(0)});
    diag(i) = Rational(1) / a[static_cast<std::size_t>(i)];
  }
  hs.push_back(HalfSpace{diag, Rational(1)});
  Polytope p(n, std::move(hs));
  return ToricDomain(Kind::ellipsoid, std::move(a), std::move(p));
}

ToricDomain ToricDomain::polydisk(std::vector<Rational> a) {
  a = sorted_positive(std::move(a), "polydisk");
  const Index n = static_cast<Index>(a.size());
  std::vector<HalfSpace> hs;
  for (Index i = 0; i < n; ++i) {
    hs.push_back(HalfSpace{-unit(n, i), Rational(0)});
    hs.push_back(HalfSpace{unit(n, i), a[static_cast<std::size_t>(i)]});
  }
  Polytope p(n, std::move(hs));
  return ToricDomain(Kind::polydisk, std::move(a), std::move(p));
}

ToricDomain ToricDomain::polytope(Polytope p) {
  require(p.dimension() <= 8, "polytope dimension above 8 is not supported");
  auto box = bounding_box(p);
  require(box.has_value(), "polytope must be bounded and nonempty");
  for (Index i = 0; i < p.dimension(); ++i)
    require(box->lo(i) >= Rational(0), "polytope must lie in the nonnegative orthant");
  require(has_nonempty_interior(p), "polytope must have nonempty interior");
  return ToricDomain(Kind::polytope, {}, std::move(p));
}

Index ToricDomain::dimension() const { return polytope_->dimension(); }

const char* to_string(ToricDomain::Kind kind) {
  switch (kind) {
    case ToricDomain::Kind::ellipsoid: return "ellipsoid";
    case ToricDomain::Kind::polydisk: return "polydisk";
    case ToricDomain::Kind::polytope: return "polytope";
  }
  return "?";
}

Polytope moment_polytope(const ToricDomain& domain) { return domain.polytope(); }

ToricDomain scale_domain(const ToricDomain& domain, const Rational& factor) {
  require(factor > Rational(0), "scale factor must be positive");
  if (domain.kind() == ToricDomain::Kind::polytope) return ToricDomain::polytope(scaled(domain.polytope(), factor));
  std::vector<Rational> a = domain.params();
  for (Rational& x : a) x *= factor;
  return domain.kind() == ToricDomain::Kind::ellipsoid ? ToricDomain::ellipsoid(std::move(a))
                                                       : ToricDomain::polydisk(std::move(a));
}

// --- JSON -------------------------------------------------------------------

void to_json(json& j, const Rational& r) { j = r.str(); }

void from_json(const json& j, Rational& r) {
  if (j.is_string()) {
    r = parse_rational(j.get<std::string>());
  } else if (j.is_number_integer()) {
    r = Rational(j.get<std::int64_t>());
  } else {
    throw ParseError("expected a rational string, got " + j.dump());
  }
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = j[i].get<Rational>();
  return v;
}

void to_json(json& j, const AffineMap& g) {
  json rows = json::array();
  for (Index i = 0; i < g.dimension(); ++i) {
    json row = json::array();
    for (Index k = 0; k < g.dimension(); ++k) row.push_back(g.matrix()(i, k));
    rows.push_back(std::move(row));
  }
  j = json{{"matrix", std::move(rows)}, {"translation", vector_to_json(g.translation())}};
}

AffineMap affine_map_from_json(const json& j) {
  try {
    const json& rows = j.at("matrix");
    const Index n = static_cast<Index>(rows.size());
    IntMatrix m(n, n);
    for (Index i = 0; i < n; ++i) {
      if (static_cast<Index>(rows[static_cast<std::size_t>(i)].size()) != n) throw ParseError("matrix must be square");
      for (Index k = 0; k < n; ++k) m(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<std::int64_t>();
    }
    return AffineMap(std::move(m), vector_from_json(j.at("translation")));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad transform JSON: ") + e.what());
  }
}

void to_json(json& j, const HalfSpace& h) {
  j = json{{"normal", vector_to_json(h.normal)}, {"offset", h.offset}};
}

void to_json(json& j, const Polytope& p) {
  json hs = json::array();
  for (const HalfSpace& h : p.halfspaces()) hs.push_back(h);
  j = json{{"dimension", p.dimension()}, {"halfspaces", std::move(hs)}};
}

Polytope polytope_from_json(const json& j) {
  try {
    const Index n = j.at("dimension").get<Index>();
    std::vector<HalfSpace> hs;
    for (const json& h : j.at("halfspaces")) hs.push_back(HalfSpace{vector_from_json(h.at("normal")), h.at("offset").get<Rational>()});
    return Polytope(n, std::move(hs));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad polytope JSON: ") + e.what());
  }
}

void to_json(json& j, const SimplexImage& s) {
  json verts = json::array();
  for (const Vector& v : simplex_vertices(s)) verts.push_back(vector_to_json(v));
  j = json{{"capacity", s.capacity()}, {"transform", s.transform()}, {"vertices", std::move(verts)}};
}

SimplexImage simplex_from_json(const json& j) {
  try {
    return SimplexImage(j.at("capacity").get<Rational>(), affine_map_from_json(j.at("transform")));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad simplex JSON: ") + e.what());
  }
}

void to_json(json& j, const ToricDomain& d) {
  j = json{{"kind", to_string(d.kind())}};
  if (d.kind() == ToricDomain::Kind::polytope) {
    j["polytope"] = d.polytope();
  } else {
    json params = json::array();
    for (const Rational& a : d.params()) params.push_back(a.str());
    j["params"] = std::move(params);
  }
}

ToricDomain domain_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "polytope") return ToricDomain::polytope(polytope_from_json(j.at("polytope")));
    std::vector<Rational> params;
    for (const json& a : j.at("params")) params.push_back(a.get<Rational>());
    if (kind == "ellipsoid") return ToricDomain::ellipsoid(std::move(params));
    if (kind == "polydisk") return ToricDomain::polydisk(std::move(params));
    throw ParseError("unknown domain kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad domain JSON: ") + e.what());
  }
}

}  // namespace symcap
