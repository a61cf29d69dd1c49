#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include <Eigen/Core>

#include "symcap/rational.hpp"

namespace symcap {

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = Vec<Rational>;
using Matrix = Mat<Rational>;
using IntMatrix = Mat<std::int64_t>;
using Index = Eigen::Index;

/// Determinant by fraction-producing Gaussian elimination. Exact for any
/// field-valued Scalar; pivots on the first nonzero entry.
template <class Derived>
typename Derived::Scalar exact_determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Mat<Scalar> a = m;
  const Index n = a.rows();
  Scalar det(1);
  for (Index col = 0; col < n; ++col) {
    Index pivot = col;
    while (pivot < n && a(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    for (Index r = col + 1; r < n; ++r) {
      if (a(r, col) == Scalar(0)) continue;
      Scalar f = a(r, col) / a(col, col);
      for (Index c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

/// Gauss-Jordan inverse; nullopt when singular.
template <class Scalar>
std::optional<Mat<Scalar>> exact_inverse(const Mat<Scalar>& m) {
  const Index n = m.rows();
  Mat<Scalar> a = m;
  Mat<Scalar> inv = Mat<Scalar>::Identity(n, n);
  for (Index col = 0; col < n; ++col) {
    Index pivot = col;
    while (pivot < n && a(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == n) return std::nullopt;
    a.row(pivot).swap(a.row(col));
    inv.row(pivot).swap(inv.row(col));
    Scalar p = a(col, col);
    a.row(col) /= p;
    inv.row(col) /= p;
    for (Index r = 0; r < n; ++r) {
      if (r == col || a(r, col) == Scalar(0)) continue;
      Scalar f = a(r, col);
      a.row(r) -= f * a.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  return inv;
}

/// Solves the square system a x = b; nullopt when singular.
template <class Scalar>
std::optional<Vec<Scalar>> exact_solve(const Mat<Scalar>& a, const Vec<Scalar>& b) {
  auto inv = exact_inverse<Scalar>(a);
  if (!inv) return std::nullopt;
  return Vec<Scalar>(*inv * b);
}

inline Matrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }

/// Converts an integral rational matrix back to int64; throws InvariantError
/// if an entry is fractional.
inline IntMatrix to_integer(const Matrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = to_int64(m(i, j));
  return out;
}

inline std::int64_t integer_determinant(const IntMatrix& m) {
  return to_int64(exact_determinant(to_rational(m)));
}

}  // namespace symcap
