#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "symcap/rational.hpp"

namespace symcap {

/// constant + sum of coefficient * symbol, with opaque named symbols.
class LinearForm {
 public:
  LinearForm() = default;
  LinearForm(Rational constant) : constant_(std::move(constant)) {}  // NOLINT(google-explicit-constructor)
  static LinearForm symbol(const std::string& name);

  const Rational& constant() const { return constant_; }
  Rational coefficient(const std::string& name) const;
  const std::map<std::string, Rational>& terms() const { return terms_; }
  bool is_constant() const { return terms_.empty(); }

  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator-=(const LinearForm& o) { return *this += o * Rational(-1); }
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator*(LinearForm a, const Rational& s);
  friend LinearForm operator*(const Rational& s, LinearForm a) { return std::move(a) * s; }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;

  std::string str() const;

 private:
  std::map<std::string, Rational> terms_;
  Rational constant_;
};

enum class Relation { eq, le, ge };

/// lhs (relation) rhs, tagged with the rule that justifies it.
struct Fact {
  std::string rule;
  std::string anchor;
  LinearForm lhs;
  Relation relation;
  LinearForm rhs;
};

struct BoundStep {
  std::string rule;
  std::string anchor;
  /// Constant part of the running bound after this step.
  Rational value;
  /// The running bound after this step, symbols included.
  std::string expression;
};

struct BoundReport {
  Rational lower;
  Rational upper;
  std::vector<BoundStep> steps;
};

/// Running upper bound "target <= expression". Each fact eliminates one
/// symbol; a fact that would weaken the bound in the wrong direction raises
/// InvariantError.
class BoundChain {
 public:
  explicit BoundChain(LinearForm start, std::string rule, std::string anchor);

  void eliminate(const std::string& symbol, const Fact& fact);
  const LinearForm& expression() const { return expr_; }
  const std::vector<BoundStep>& steps() const { return steps_; }

  /// Throws InvariantError unless every symbol has cancelled.
  Rational value() const;

 private:
  LinearForm expr_;
  std::vector<BoundStep> steps_;
};

using nlohmann::json;
void to_json(json& j, const BoundStep& s);
void to_json(json& j, const BoundReport& r);

}  // namespace symcap
