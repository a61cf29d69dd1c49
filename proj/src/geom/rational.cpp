#include "symcap/rational.hpp"

#include <boost/multiprecision/integer.hpp>
#include <limits>
#include <ostream>

#include "symcap/errors.hpp"

namespace symcap {

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw PreconditionError("rational with zero denominator");
  rep_ = Rep(numerator, denominator);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw PreconditionError("division by zero");
  rep_ /= o.rep_;
  return *this;
}

BigInt Rational::floor() const {
  BigInt n = numerator();
  BigInt d = denominator();
  BigInt q = n / d;  // truncates toward zero
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

BigInt Rational::ceil() const {
  BigInt f = floor();
  return is_integer() ? f : BigInt(f + 1);
}

std::string Rational::str() const {
  if (is_integer()) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s;
  std::string_view den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw ParseError("not a rational literal: '" + std::string(text) + "'");
  BigInt n{std::string(num)};
  BigInt d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return Rational(n, d);
}

bool exact_sqrt(const Rational& r, Rational& root) {
  if (r.sign() < 0) return false;
  BigInt n = r.numerator();
  BigInt d = r.denominator();
  BigInt sn = boost::multiprecision::sqrt(n);
  BigInt sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return false;
  root = Rational(sn, sd);
  return true;
}

std::int64_t to_int64(const Rational& r) {
  if (!r.is_integer()) throw InvariantError("expected an integer, got " + r.str());
  BigInt n = r.numerator();
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
    throw InvariantError("integer out of int64 range: " + n.str());
  return n.convert_to<std::int64_t>();
}

}  // namespace symcap
