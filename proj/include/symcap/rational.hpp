#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace symcap {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction in lowest terms with a positive denominator.
///
/// Thin value wrapper over boost's cpp_rational. The wrapper exists so that
/// the scalar only converts from integers, which keeps Eigen's scalar
/// promotion machinery away from boost's template constructors.
class Rational {
 public:
  using Rep = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                            boost::multiprecision::et_off>;

  Rational() = default;
  template <std::integral I>
  Rational(I value) : rep_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& value) : rep_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& numerator, const BigInt& denominator);
  template <std::integral I, std::integral J>
  Rational(I numerator, J denominator) : Rational(BigInt(numerator), BigInt(denominator)) {}
  explicit Rational(Rep rep) : rep_(std::move(rep)) {}

  BigInt numerator() const { return boost::multiprecision::numerator(rep_); }
  BigInt denominator() const { return boost::multiprecision::denominator(rep_); }

  bool is_zero() const { return rep_.is_zero(); }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return rep_.sign(); }

  BigInt floor() const;
  BigInt ceil() const;
  double to_double() const { return rep_.convert_to<double>(); }

  /// "p/q", or "p" when the value is an integer.
  std::string str() const;

  const Rep& rep() const { return rep_; }

  Rational operator-() const { return Rational(Rep(-rep_)); }
  Rational& operator+=(const Rational& o) { rep_ += o.rep_; return *this; }
  Rational& operator-=(const Rational& o) { rep_ -= o.rep_; return *this; }
  Rational& operator*=(const Rational& o) { rep_ *= o.rep_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.rep_ == b.rep_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.rep_ < b.rep_) return std::strong_ordering::less;
    if (b.rep_ < a.rep_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  Rep rep_;
};

/// Parses "p", "-p", "p/q" or "-p/q" exactly. Throws ParseError.
Rational parse_rational(std::string_view text);

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Exact square root when `r` is the square of a rational.
bool exact_sqrt(const Rational& r, Rational& root);

/// Converts an integral Rational to int64; throws InvariantError otherwise.
std::int64_t to_int64(const Rational& r);

}  // namespace symcap

template <>
struct std::hash<symcap::Rational> {
  std::size_t operator()(const symcap::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};

namespace Eigen {
template <>
struct NumTraits<symcap::Rational> : GenericNumTraits<symcap::Rational> {
  using Real = symcap::Rational;
  using NonInteger = symcap::Rational;
  using Nested = symcap::Rational;
  using Literal = symcap::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
