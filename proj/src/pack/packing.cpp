#include "symcap/packing.hpp"

#include <boost/multiprecision/integer.hpp>
#include <limits>

#include "symcap/errors.hpp"

namespace symcap {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

Vector unit(Index n, Index i) {
  Vector e = Vector::Zero(n);
  e(i) = Rational(1);
  return e;
}

}  // namespace

PackingCertificate canonical_certificate(const ToricDomain& domain, const Rational& eps) {
  require(domain.kind() != ToricDomain::Kind::polytope, "canonical certificates exist for ellipsoids and polydisks only");
  const Index n = domain.dimension();
  const auto& a = domain.params();
  const Rational& a1 = a.front();
  require(n >= 2, "two-ball certificate needs dimension at least 2");
  require(Rational(0) < eps && eps < Rational(2) * a1, "slack must lie in (0, 2 a_1)");
  const Rational c = a1 - eps / Rational(2);

  IntMatrix m = IntMatrix::Identity(n, n);
  Vector t = Vector::Zero(n);
  if (domain.kind() == ToricDomain::Kind::ellipsoid) {
    require(a.back() >= Rational(2) * a1, "ellipsoid needs a_n >= 2 a_1 for the canonical certificate; use the search");
    for (Index j = 0; j + 1 < n; ++j) m(n - 1, j) = -1;
    t(n - 1) = a1;
  } else {
    m(0, 0) = -1;
    m(1, 1) = -1;
    t(0) = a1;
    t(1) = a1;
  }
  PackingCertificate cert{domain, {SimplexImage(c, AffineMap::identity(n)), SimplexImage(c, AffineMap(m, t))},
                          Rational(2) * c, false, "canonical"};
  verify_certificate(cert);
  return cert;
}

PackingCertificate simplex_certificate(int n, const Rational& eps) {
  require(n >= 1, "dimension must be positive");
  require(Rational(0) < eps && eps < Rational(1, 2), "slack must lie in (0, 1/2)");
  const Rational c = Rational(1, 2) - eps;
  ToricDomain unit_simplex = ToricDomain::polytope(moment_polytope(ToricDomain::ball(1, n)));
  PackingCertificate cert{unit_simplex,
                          {SimplexImage(c, AffineMap::identity(n)),
                           SimplexImage(c, AffineMap::translate(unit(n, 0) * Rational(1, 2)))},
                          Rational(2) * c, false, "simplex-halves"};
  verify_certificate(cert);
  return cert;
}

bool verify_certificate(PackingCertificate& c) {
  c.verified = false;
  if (c.simplices.size() != 2) return false;
  const Polytope& p = c.domain.polytope();
  for (const SimplexImage& s : c.simplices)
    if (s.dimension() != p.dimension() || !contains(p, s)) return false;
  if (!interiors_disjoint(c.simplices[0], c.simplices[1])) return false;
  if (c.total != c.simplices[0].capacity() + c.simplices[1].capacity()) return false;
  c.verified = true;
  return true;
}

namespace {

i64 small_det(const IntMatrix& m) {
  const Index n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  i64 det = 0;
  IntMatrix minor(n - 1, n - 1);
  for (Index c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    for (Index i = 1; i < n; ++i)
      for (Index j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    det += (c % 2 == 0 ? 1 : -1) * m(0, c) * small_det(minor);
  }
  return det;
}

IntMatrix adjugate(const IntMatrix& m) {
  const Index n = m.rows();
  if (n == 1) return IntMatrix::Ones(1, 1);
  IntMatrix adj(n, n);
  IntMatrix minor(n - 1, n - 1);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) {
      for (Index i = 0, a = 0; i < n; ++i) {
        if (i == r) continue;
        for (Index j = 0, b = 0; j < n; ++j)
          if (j != c) minor(a, b++) = m(i, j);
        ++a;
      }
      adj(c, r) = ((r + c) % 2 == 0 ? 1 : -1) * small_det(minor);
    }
  return adj;
}

struct Unimodular {
  IntMatrix m;
  IntMatrix inv;
};

std::vector<Unimodular> enumerate_matrices(Index n, int bound) {
  std::vector<Unimodular> out;
  const Index cells = n * n;
  std::vector<int> digits(static_cast<std::size_t>(cells), -bound);
  IntMatrix m(n, n);
  for (;;) {
    for (Index i = 0; i < cells; ++i) m(i / n, i % n) = digits[static_cast<std::size_t>(i)];
    if (small_det(m) == 1) out.push_back(Unimodular{m, adjugate(m)});
    Index pos = cells - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == bound) digits[static_cast<std::size_t>(pos--)] = -bound;
    if (pos < 0) break;
    ++digits[static_cast<std::size_t>(pos)];
  }
  return out;
}

i64 to_i64_checked(const Rational& r, const char* what) {
  if (!r.is_integer()) throw InvariantError(std::string("non-integral scaled ") + what);
  const BigInt v = r.numerator();
  const BigInt limit = BigInt(1) << 52;
  if (v > limit || v < -limit) throw PreconditionError("search grid too fine for the integer kernel");
  return v.convert_to<i64>();
}

// A placed simplex in coordinates scaled by the common denominator D.
struct Placed {
  std::size_t mat = 0;
  std::vector<int> grid;
  std::vector<i64> verts;   // (n+1) x n
  std::vector<i64> normals; // (n+1) x n, outward
  std::vector<i128> offsets;
  std::vector<i64> lo, hi;
};

class Kernel {
 public:
  Kernel(const Polytope& p, const Box& box, const std::vector<Rational>& sizes, int q) : n_(p.dimension()), q_(q) {
    BigInt d = 1;
    for (const Rational& s : sizes) d = boost::multiprecision::lcm(d, s.denominator());
    for (Index i = 0; i < n_; ++i) d = boost::multiprecision::lcm(d, boost::multiprecision::lcm(box.lo(i).denominator(), box.hi(i).denominator()) * q);
    for (const HalfSpace& h : p.halfspaces()) d = boost::multiprecision::lcm(d, h.offset.denominator());
    scale_ = Rational(d);
    for (const HalfSpace& h : p.halfspaces()) {
      std::vector<i64> row;
      for (Index c = 0; c < n_; ++c) row.push_back(to_i64_checked(h.normal(c), "normal"));
      normals_.push_back(std::move(row));
      offsets_.push_back(to_i64_checked(h.offset * scale_, "offset"));
    }
    axis_.resize(static_cast<std::size_t>(n_));
    axis_rational_.resize(static_cast<std::size_t>(n_));
    for (Index c = 0; c < n_; ++c)
      for (int k = 0; k <= q; ++k) {
        Rational t = box.lo(c) + Rational(k, q) * (box.hi(c) - box.lo(c));
        axis_[static_cast<std::size_t>(c)].push_back(to_i64_checked(t * scale_, "translation"));
        axis_rational_[static_cast<std::size_t>(c)].push_back(t);
      }
  }

  /// Every placement of Delta(size) inside the polytope, in enumeration order.
  std::vector<Placed> placements(const std::vector<Unimodular>& mats, const Rational& size) const {
    const i64 a = to_i64_checked(size * scale_, "capacity");
    const std::size_t facets = normals_.size();
    std::vector<Placed> out;
    std::vector<i64> reach(facets);
    std::vector<int> grid(static_cast<std::size_t>(n_));
    std::vector<i64> t(static_cast<std::size_t>(n_));
    for (std::size_t mi = 0; mi < mats.size(); ++mi) {
      const IntMatrix& m = mats[mi].m;
      for (std::size_t f = 0; f < facets; ++f) {
        i64 best = 0;
        for (Index j = 0; j < n_; ++j) {
          i64 w = 0;
          for (Index c = 0; c < n_; ++c) w += normals_[f][static_cast<std::size_t>(c)] * m(c, j);
          best = std::max(best, w);
        }
        reach[f] = best * a;
      }
      std::fill(grid.begin(), grid.end(), 0);
      for (;;) {
        for (Index c = 0; c < n_; ++c) t[static_cast<std::size_t>(c)] = axis_[static_cast<std::size_t>(c)][static_cast<std::size_t>(grid[static_cast<std::size_t>(c)])];
        bool inside = true;
        for (std::size_t f = 0; f < facets && inside; ++f) {
          i128 s = reach[f];
          for (Index c = 0; c < n_; ++c) s += static_cast<i128>(normals_[f][static_cast<std::size_t>(c)]) * t[static_cast<std::size_t>(c)];
          inside = s <= offsets_[f];
        }
        if (inside) out.push_back(place(mats, mi, grid, t, a));
        Index pos = n_ - 1;
        while (pos >= 0 && grid[static_cast<std::size_t>(pos)] == q_) grid[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
        ++grid[static_cast<std::size_t>(pos)];
      }
    }
    return out;
  }

  bool disjoint(const Placed& x, const Placed& y) const {
    const std::size_t n = static_cast<std::size_t>(n_);
    for (std::size_t c = 0; c < n; ++c)
      if (x.hi[c] <= y.lo[c] || y.hi[c] <= x.lo[c]) return true;
    if (separated_by_facet(x, y) || separated_by_facet(y, x)) return true;
    // In the plane the facet normals of the two triangles are the only
    // candidate separating directions.
    if (n_ == 2) return false;
    if (centroid_inside(x, y) || centroid_inside(y, x)) return false;
    auto vx = rational_vertices(x), vy = rational_vertices(y);
    return interiors_disjoint(std::span<const Vector>(vx), std::span<const Vector>(vy));
  }

  SimplexImage simplex(const std::vector<Unimodular>& mats, const Placed& p, const Rational& size) const {
    Vector t(n_);
    for (Index c = 0; c < n_; ++c) t(c) = axis_rational_[static_cast<std::size_t>(c)][static_cast<std::size_t>(p.grid[static_cast<std::size_t>(c)])];
    return SimplexImage(size, AffineMap(mats[p.mat].m, t));
  }

 private:
  Placed place(const std::vector<Unimodular>& mats, std::size_t mi, const std::vector<int>& grid, const std::vector<i64>& t,
               i64 a) const {
    const std::size_t n = static_cast<std::size_t>(n_);
    const IntMatrix& m = mats[mi].m;
    const IntMatrix& inv = mats[mi].inv;
    Placed p;
    p.mat = mi;
    p.grid = grid;
    p.verts.assign((n + 1) * n, 0);
    for (std::size_t c = 0; c < n; ++c) p.verts[c] = t[c];
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t c = 0; c < n; ++c)
        p.verts[(j + 1) * n + c] = t[c] + a * m(static_cast<Index>(c), static_cast<Index>(j));
    p.lo.assign(n, std::numeric_limits<i64>::max());
    p.hi.assign(n, std::numeric_limits<i64>::min());
    for (std::size_t v = 0; v <= n; ++v)
      for (std::size_t c = 0; c < n; ++c) {
        p.lo[c] = std::min(p.lo[c], p.verts[v * n + c]);
        p.hi[c] = std::max(p.hi[c], p.verts[v * n + c]);
      }
    // Facets of Delta(a): -x_i <= 0 and sum x <= a, pulled back through M^{-1}.
    p.normals.assign((n + 1) * n, 0);
    p.offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t c = 0; c < n; ++c) {
        i64 w = 0;
        if (i < n) w = -inv(static_cast<Index>(i), static_cast<Index>(c));
        else
          for (std::size_t r = 0; r < n; ++r) w += inv(static_cast<Index>(r), static_cast<Index>(c));
        p.normals[i * n + c] = w;
        p.offsets[i] += static_cast<i128>(w) * t[c];
      }
      if (i == n) p.offsets[i] += a;
    }
    return p;
  }

  i128 dot(const Placed& s, std::size_t facet, const Placed& other, std::size_t vertex) const {
    const std::size_t n = static_cast<std::size_t>(n_);
    i128 acc = 0;
    for (std::size_t c = 0; c < n; ++c) acc += static_cast<i128>(s.normals[facet * n + c]) * other.verts[vertex * n + c];
    return acc;
  }

  // Is `y` on the far side of one of x's facet planes?
  bool separated_by_facet(const Placed& x, const Placed& y) const {
    const std::size_t n = static_cast<std::size_t>(n_);
    for (std::size_t f = 0; f <= n; ++f) {
      bool all = true;
      for (std::size_t v = 0; v <= n && all; ++v) all = dot(x, f, y, v) >= x.offsets[f];
      if (all) return true;
    }
    return false;
  }

  bool centroid_inside(const Placed& x, const Placed& y) const {
    const std::size_t n = static_cast<std::size_t>(n_);
    for (std::size_t f = 0; f <= n; ++f) {
      i128 s = 0;
      for (std::size_t v = 0; v <= n; ++v) s += dot(x, f, y, v);
      if (s >= static_cast<i128>(n + 1) * x.offsets[f]) return false;
    }
    return true;
  }

  std::vector<Vector> rational_vertices(const Placed& p) const {
    const std::size_t n = static_cast<std::size_t>(n_);
    std::vector<Vector> out;
    for (std::size_t v = 0; v <= n; ++v) {
      Vector x(n_);
      for (std::size_t c = 0; c < n; ++c) x(static_cast<Index>(c)) = Rational(p.verts[v * n + c]) / scale_;
      out.push_back(std::move(x));
    }
    return out;
  }

  Index n_;
  int q_;
  Rational scale_;
  std::vector<std::vector<i64>> normals_;
  std::vector<i64> offsets_;
  std::vector<std::vector<i64>> axis_;
  std::vector<std::vector<Rational>> axis_rational_;
};

void check_config(const SearchConfig& cfg) {
  require(cfg.matrix_entry_bound >= 1, "matrix entry bound must be at least 1");
  require(cfg.translation_grid >= 1, "translation grid must be at least 1");
  require(cfg.bisection_tolerance > Rational(0), "bisection tolerance must be positive");
}

std::optional<std::pair<SimplexImage, SimplexImage>> place_with(const Polytope& p, const Box& box, const Rational& a,
                                                                 const Rational& b, const SearchConfig& cfg,
                                                                 const std::vector<Unimodular>& mats) {
  Kernel k(p, box, {a, b}, cfg.translation_grid);
  const std::vector<Placed> la = k.placements(mats, a);
  if (la.empty()) return std::nullopt;
  const std::vector<Placed> lb = a == b ? la : k.placements(mats, b);
  for (const Placed& x : la)
    for (const Placed& y : lb)
      if (k.disjoint(x, y)) return std::make_pair(k.simplex(mats, x, a), k.simplex(mats, y, b));
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<SimplexImage, SimplexImage>> place_two_balls(const Polytope& p, const Rational& a, const Rational& b,
                                                                      const SearchConfig& cfg) {
  check_config(cfg);
  require(p.dimension() <= 4, "search is limited to dimension 4");
  require(a > Rational(0) && b > Rational(0), "capacities must be positive");
  auto box = bounding_box(p);
  require(box.has_value(), "search needs a bounded nonempty polytope");
  return place_with(p, *box, a, b, cfg, enumerate_matrices(p.dimension(), cfg.matrix_entry_bound));
}

std::optional<PackingCertificate> search_two_balls(const ToricDomain& domain, const SearchConfig& cfg) {
  check_config(cfg);
  const Polytope& p = domain.polytope();
  require(p.dimension() <= 4, "search is limited to dimension 4");
  const auto box = bounding_box(p);
  require(box.has_value(), "search needs a bounded nonempty polytope");
  Rational width(0);
  for (Index i = 0; i < p.dimension(); ++i) width = std::max(width, box->hi(i) - box->lo(i));
  const auto mats = enumerate_matrices(p.dimension(), cfg.matrix_entry_bound);
  const int q = cfg.translation_grid;

  Rational lo(0), hi = Rational(2) * width;
  std::optional<PackingCertificate> best;
  while (hi - lo > cfg.bisection_tolerance) {
    const Rational total = (lo + hi) / Rational(2);
    std::vector<Rational> splits{total / Rational(2)};
    if (!cfg.equal_balls)
      for (int j = q / 2 + 1; j < q; ++j) splits.push_back(total * Rational(j, q));
    std::optional<std::pair<SimplexImage, SimplexImage>> found;
    for (const Rational& a : splits) {
      found = place_with(p, *box, a, total - a, cfg, mats);
      if (found) break;
    }
    if (found) {
      best = PackingCertificate{domain, {found->first, found->second}, total, false, "search"};
      lo = total;
    } else {
      hi = total;
    }
  }
  if (best && !verify_certificate(*best)) throw InvariantError("search produced a certificate that fails verification");
  return best;
}

void to_json(json& j, const PackingCertificate& c) {
  json simplices = json::array();
  json contained = json::array();
  for (const SimplexImage& s : c.simplices) {
    simplices.push_back(s);
    contained.push_back(s.dimension() == c.domain.dimension() && contains(c.domain.polytope(), s));
  }
  j = json{{"domain", c.domain},
           {"simplices", std::move(simplices)},
           {"total", c.total.str()},
           {"verified", c.verified},
           {"provenance", c.provenance},
           {"checks", json{{"contained", std::move(contained)},
                           {"disjoint", c.simplices.size() == 2 && interiors_disjoint(c.simplices[0], c.simplices[1])}}}};
}

PackingCertificate certificate_from_json(const json& j) {
  try {
    PackingCertificate c{domain_from_json(j.at("domain")), {}, j.at("total").get<Rational>(), j.at("verified").get<bool>(),
                         j.at("provenance").get<std::string>()};
    for (const json& s : j.at("simplices")) c.simplices.push_back(simplex_from_json(s));
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad certificate JSON: ") + e.what());
  }
}

}  // namespace symcap
