#include "symcap/bounds.hpp"

#include "symcap/errors.hpp"

namespace symcap {

LinearForm LinearForm::symbol(const std::string& name) {
  LinearForm f;
  f.terms_[name] = Rational(1);
  return f;
}

Rational LinearForm::coefficient(const std::string& name) const {
  auto it = terms_.find(name);
  return it == terms_.end() ? Rational(0) : it->second;
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  constant_ += o.constant_;
  for (const auto& [name, c] : o.terms_) {
    Rational& slot = terms_[name];
    slot += c;
    if (slot.is_zero()) terms_.erase(name);
  }
  return *this;
}

LinearForm operator*(LinearForm a, const Rational& s) {
  if (s.is_zero()) return LinearForm();
  a.constant_ *= s;
  for (auto& [name, c] : a.terms_) c *= s;
  return a;
}

std::string LinearForm::str() const {
  std::string out;
  for (const auto& [name, c] : terms_) {
    if (!out.empty()) out += c.sign() < 0 ? " - " : " + ";
    else if (c.sign() < 0) out += "-";
    Rational m = abs(c);
    if (m != Rational(1)) out += m.str() + "*";
    out += name;
  }
  if (out.empty()) return constant_.str();
  if (!constant_.is_zero()) out += (constant_.sign() < 0 ? " - " : " + ") + abs(constant_).str();
  return out;
}

BoundChain::BoundChain(LinearForm start, std::string rule, std::string anchor) : expr_(std::move(start)) {
  steps_.push_back(BoundStep{std::move(rule), std::move(anchor), expr_.constant(), expr_.str()});
}

void BoundChain::eliminate(const std::string& symbol, const Fact& fact) {
  const Rational k = expr_.coefficient(symbol);
  LinearForm d = fact.lhs - fact.rhs;  // d (relation) 0
  const Rational m = d.coefficient(symbol);
  if (k.is_zero()) throw InvariantError("symbol " + symbol + " does not occur in the bound");
  if (m.is_zero()) throw InvariantError("rule '" + fact.rule + "' does not mention " + symbol);
  const Rational f = k / m;
  // expr - f d >= expr needs f d <= 0
  if ((fact.relation == Relation::le && f < Rational(0)) || (fact.relation == Relation::ge && f > Rational(0)))
    throw InvariantError("rule '" + fact.rule + "' points the wrong way to bound " + symbol);
  expr_ -= d * f;
  steps_.push_back(BoundStep{fact.rule, fact.anchor, expr_.constant(), expr_.str()});
}

Rational BoundChain::value() const {
  if (!expr_.is_constant()) throw InvariantError("spectral terms did not cancel: " + expr_.str());
  return expr_.constant();
}

void to_json(json& j, const BoundStep& s) {
  j = json{{"rule", s.rule}, {"anchor", s.anchor}, {"value", s.value.str()}, {"expression", s.expression}};
}

void to_json(json& j, const BoundReport& r) {
  json steps = json::array();
  for (const BoundStep& s : r.steps) steps.push_back(s);
  j = json{{"lower", r.lower.str()}, {"upper", r.upper.str()}, {"steps", std::move(steps)}};
}

}  // namespace symcap
