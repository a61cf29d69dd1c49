#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "symcap/errors.hpp"
#include "symcap/linalg.hpp"

namespace symcap {

enum class LpStatus { optimal, infeasible, unbounded };

template <class Scalar>
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Scalar objective{};
  Vec<Scalar> x;
};

/// Small dense linear program solved by the two-phase tableau simplex
/// method with Bland's rule. Intended for exact scalars and a few dozen
/// variables at most; every pivot is exact.
///
/// Variables are free unless marked nonnegative.
template <class Scalar>
class LinearProgram {
 public:
  explicit LinearProgram(Index num_vars) : n_(num_vars), nonneg_(static_cast<std::size_t>(num_vars), false) {}

  Index num_vars() const { return n_; }

  void set_nonnegative(Index j) { nonneg_.at(static_cast<std::size_t>(j)) = true; }

  /// a . x <= b
  void add_le(Vec<Scalar> a, Scalar b) { add(std::move(a), std::move(b), Sense::le); }
  /// a . x >= b
  void add_ge(Vec<Scalar> a, Scalar b) { add(std::move(a), std::move(b), Sense::ge); }
  /// a . x == b
  void add_eq(Vec<Scalar> a, Scalar b) { add(std::move(a), std::move(b), Sense::eq); }

  LpResult<Scalar> maximize(const Vec<Scalar>& c) const {
    LpResult<Scalar> r = minimize(Vec<Scalar>(-c));
    if (r.status == LpStatus::optimal) r.objective = -r.objective;
    return r;
  }

  LpResult<Scalar> minimize(const Vec<Scalar>& c) const;

  bool feasible() const { return minimize(Vec<Scalar>::Zero(n_)).status != LpStatus::infeasible; }

 private:
  enum class Sense { le, ge, eq };
  struct Row {
    Vec<Scalar> a;
    Scalar b;
    Sense sense;
  };

  void add(Vec<Scalar> a, Scalar b, Sense sense) {
    if (a.size() != n_) throw PreconditionError("constraint length does not match variable count");
    rows_.push_back(Row{std::move(a), std::move(b), sense});
  }

  Index n_;
  std::vector<bool> nonneg_;
  std::vector<Row> rows_;
};

namespace detail {

/// Dense tableau; the last row holds reduced costs, the last column the
/// right-hand side.
template <class Scalar>
class Tableau {
 public:
  Tableau(Index rows, Index cols) : t_(Mat<Scalar>::Zero(rows + 1, cols + 1)), basis_(static_cast<std::size_t>(rows), -1) {}

  Scalar& at(Index i, Index j) { return t_(i, j); }
  const Scalar& at(Index i, Index j) const { return t_(i, j); }
  Index rows() const { return t_.rows() - 1; }
  Index cols() const { return t_.cols() - 1; }
  Index rhs() const { return t_.cols() - 1; }
  Index obj() const { return t_.rows() - 1; }
  std::vector<Index>& basis() { return basis_; }

  void pivot(Index pr, Index pc) {
    Scalar p = t_(pr, pc);
    t_.row(pr) /= p;
    for (Index r = 0; r < t_.rows(); ++r) {
      if (r == pr || t_(r, pc) == Scalar(0)) continue;
      Scalar f = t_(r, pc);
      t_.row(r) -= f * t_.row(pr);
    }
    basis_[static_cast<std::size_t>(pr)] = pc;
  }

  /// Installs the reduced-cost row for cost vector `cost` (size cols()).
  void price(const Vec<Scalar>& cost) {
    for (Index j = 0; j <= cols(); ++j) t_(obj(), j) = j < cols() ? cost(j) : Scalar(0);
    for (Index i = 0; i < rows(); ++i) {
      Scalar cb = cost(basis_[static_cast<std::size_t>(i)]);
      if (cb == Scalar(0)) continue;
      t_.row(obj()) -= cb * t_.row(i);
    }
  }

  /// Runs Bland's rule to optimality over columns [0, allowed).
  /// Returns false if unbounded.
  bool run(Index allowed) {
    for (;;) {
      Index enter = -1;
      for (Index j = 0; j < allowed; ++j) {
        if (t_(obj(), j) < Scalar(0)) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Index leave = -1;
      Scalar best{};
      for (Index i = 0; i < rows(); ++i) {
        if (!(t_(i, enter) > Scalar(0))) continue;
        Scalar ratio = t_(i, rhs()) / t_(i, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

 private:
  Mat<Scalar> t_;
  std::vector<Index> basis_;
};

}  // namespace detail

template <class Scalar>
LpResult<Scalar> LinearProgram<Scalar>::minimize(const Vec<Scalar>& c) const {
  if (c.size() != n_) throw PreconditionError("objective length does not match variable count");

  // Column layout: structural columns (free variables split in two), then
  // one slack per inequality, then one artificial per row.
  std::vector<Index> pos_col(static_cast<std::size_t>(n_)), neg_col(static_cast<std::size_t>(n_), -1);
  Index cols = 0;
  for (Index j = 0; j < n_; ++j) {
    pos_col[static_cast<std::size_t>(j)] = cols++;
    if (!nonneg_[static_cast<std::size_t>(j)]) neg_col[static_cast<std::size_t>(j)] = cols++;
  }
  const Index structural = cols;
  for (const Row& row : rows_)
    if (row.sense != Sense::eq) ++cols;
  const Index m = static_cast<Index>(rows_.size());
  const Index artificial_begin = cols;
  cols += m;

  detail::Tableau<Scalar> tab(m, cols);
  Index slack = structural;
  for (Index i = 0; i < m; ++i) {
    const Row& row = rows_[static_cast<std::size_t>(i)];
    const bool flip = row.b < Scalar(0);
    const Scalar sgn = flip ? Scalar(-1) : Scalar(1);
    for (Index j = 0; j < n_; ++j) {
      if (row.a(j) == Scalar(0)) continue;
      tab.at(i, pos_col[static_cast<std::size_t>(j)]) = sgn * row.a(j);
      if (neg_col[static_cast<std::size_t>(j)] >= 0) tab.at(i, neg_col[static_cast<std::size_t>(j)]) = -sgn * row.a(j);
    }
    if (row.sense == Sense::le) tab.at(i, slack++) = sgn;
    if (row.sense == Sense::ge) tab.at(i, slack++) = -sgn;
    tab.at(i, artificial_begin + i) = Scalar(1);
    tab.at(i, tab.rhs()) = sgn * row.b;
    tab.basis()[static_cast<std::size_t>(i)] = artificial_begin + i;
  }

  // Phase 1: minimize the sum of artificials.
  Vec<Scalar> phase1 = Vec<Scalar>::Zero(cols);
  for (Index i = 0; i < m; ++i) phase1(artificial_begin + i) = Scalar(1);
  tab.price(phase1);
  tab.run(cols);
  LpResult<Scalar> result;
  if (tab.at(tab.obj(), tab.rhs()) != Scalar(0)) {
    result.status = LpStatus::infeasible;
    return result;
  }
  // Drive zero-valued artificials out of the basis where possible; rows
  // with no structural support are redundant and stay inert.
  for (Index i = 0; i < m; ++i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < artificial_begin) continue;
    for (Index j = 0; j < artificial_begin; ++j) {
      if (tab.at(i, j) != Scalar(0)) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2 over non-artificial columns.
  Vec<Scalar> cost = Vec<Scalar>::Zero(cols);
  for (Index j = 0; j < n_; ++j) {
    cost(pos_col[static_cast<std::size_t>(j)]) = c(j);
    if (neg_col[static_cast<std::size_t>(j)] >= 0) cost(neg_col[static_cast<std::size_t>(j)]) = -c(j);
  }
  tab.price(cost);
  if (!tab.run(artificial_begin)) {
    result.status = LpStatus::unbounded;
    return result;
  }

  Vec<Scalar> y = Vec<Scalar>::Zero(cols);
  for (Index i = 0; i < m; ++i) y(tab.basis()[static_cast<std::size_t>(i)]) = tab.at(i, tab.rhs());
  result.x = Vec<Scalar>::Zero(n_);
  for (Index j = 0; j < n_; ++j) {
    result.x(j) = y(pos_col[static_cast<std::size_t>(j)]);
    if (neg_col[static_cast<std::size_t>(j)] >= 0) result.x(j) -= y(neg_col[static_cast<std::size_t>(j)]);
  }
  result.objective = c.dot(result.x);
  result.status = LpStatus::optimal;
  return result;
}

}  // namespace symcap
