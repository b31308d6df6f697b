#pragma once

// Dense two-phase simplex with Bland's rule, generic over the scalar type.
//
// Instantiated with Rational for exact problems and with double where the
// data is inherently floating point. Problem sizes in this project are tiny
// (at most a few thousand rows), so a full tableau is used.

#include <cmath>
#include <cstddef>
#include <vector>

#include "covercert/rational.hpp"

namespace covercert::lp {

enum class Sense { kLessEq, kGreaterEq, kEqual };
enum class Status { kOptimal, kInfeasible, kUnbounded };

template <class T>
struct Constraint {
  std::vector<T> coeffs;
  Sense sense;
  T rhs;
};

template <class T>
struct Problem {
  explicit Problem(std::size_t vars) : num_vars(vars), free(vars, false), objective(vars, T(0)) {}

  void add(std::vector<T> coeffs, Sense sense, T rhs) {
    constraints.push_back({std::move(coeffs), sense, std::move(rhs)});
  }

  std::size_t num_vars;
  std::vector<bool> free;  // unrestricted in sign; otherwise x >= 0
  std::vector<T> objective;  // maximized
  std::vector<Constraint<T>> constraints;
};

template <class T>
struct Solution {
  Status status = Status::kInfeasible;
  T objective = T(0);
  std::vector<T> x;
};

template <class T>
struct Arith;

template <>
struct Arith<Rational> {
  static bool positive(const Rational& v) { return sgn(v) > 0; }
  static bool negative(const Rational& v) { return sgn(v) < 0; }
  static bool zero(const Rational& v) { return sgn(v) == 0; }
};

template <>
struct Arith<double> {
  static constexpr double kEps = 1e-11;
  static bool positive(double v) { return v > kEps; }
  static bool negative(double v) { return v < -kEps; }
  static bool zero(double v) { return std::abs(v) <= kEps; }
};

namespace detail {

template <class T>
class Tableau {
 public:
  using A = Arith<T>;

  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), t_(rows + 1, std::vector<T>(cols + 1, T(0))), basis_(rows) {}

  T& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  T& rhs(std::size_t r) { return t_[r][cols_]; }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  // Installs cost vector c (maximize c.x) as the objective row, priced out
  // against the current basis.
  void set_objective(const std::vector<T>& c) {
    cost_ = c;
    auto& obj = t_[rows_];
    for (std::size_t j = 0; j < cols_; ++j) obj[j] = c[j];
    obj[cols_] = T(0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const T& cb = c[basis_[i]];
      if (A::zero(cb)) continue;
      for (std::size_t j = 0; j <= cols_; ++j) obj[j] -= cb * t_[i][j];
    }
  }

  T objective_value() const {
    T v = T(0);
    for (std::size_t i = 0; i < rows_; ++i) v += cost_[basis_[i]] * t_[i][cols_];
    return v;
  }

  void pivot(std::size_t r, std::size_t c) {
    const T inv = T(1) / t_[r][c];
    for (std::size_t j = 0; j <= cols_; ++j) t_[r][j] *= inv;
    t_[r][c] = T(1);
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r || A::zero(t_[i][c])) {
        if (i != r) t_[i][c] = T(0);
        continue;
      }
      const T f = t_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j) t_[i][j] -= f * t_[r][j];
      t_[i][c] = T(0);
    }
    basis_[r] = c;
  }

  // Runs simplex iterations over the allowed columns. Returns false when
  // the objective is unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      const auto& obj = t_[rows_];
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed[j] && A::positive(obj[j])) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = rows_;
      T best = T(0);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!A::positive(t_[i][enter])) continue;
        const T ratio = t_[i][cols_] / t_[i][enter];
        if (leave == rows_) {
          leave = i;
          best = ratio;
          continue;
        }
        const T diff = ratio - best;
        if (A::negative(diff) || (A::zero(diff) && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<T>> t_;
  std::vector<std::size_t> basis_;
  std::vector<T> cost_;
};

}  // namespace detail

template <class T>
Solution<T> maximize(const Problem<T>& p) {
  using A = Arith<T>;
  const std::size_t m = p.constraints.size();

  // Column layout: [structural (+ negative parts of free vars)] [slacks] [artificials]
  std::vector<std::size_t> neg_col(p.num_vars, 0);
  std::size_t ncols = p.num_vars;
  for (std::size_t j = 0; j < p.num_vars; ++j)
    if (p.free[j]) neg_col[j] = ncols++;
  const std::size_t structural = ncols;

  std::vector<int> flip(m, 1);
  std::vector<Sense> sense(m);
  std::size_t n_slack = 0, n_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sense[i] = p.constraints[i].sense;
    if (A::negative(p.constraints[i].rhs)) {
      flip[i] = -1;
      if (sense[i] == Sense::kLessEq)
        sense[i] = Sense::kGreaterEq;
      else if (sense[i] == Sense::kGreaterEq)
        sense[i] = Sense::kLessEq;
    }
    if (sense[i] != Sense::kEqual) ++n_slack;
    if (sense[i] != Sense::kLessEq) ++n_art;
  }
  const std::size_t art_begin = structural + n_slack;
  ncols = art_begin + n_art;

  detail::Tableau<T> tab(m, ncols);
  std::size_t slack = structural, art = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = p.constraints[i];
    const T sign = T(flip[i]);
    for (std::size_t j = 0; j < p.num_vars; ++j) {
      if (A::zero(c.coeffs[j])) continue;
      tab.at(i, j) = sign * c.coeffs[j];
      if (p.free[j]) tab.at(i, neg_col[j]) = -(sign * c.coeffs[j]);
    }
    tab.rhs(i) = sign * c.rhs;
    switch (sense[i]) {
      case Sense::kLessEq:
        tab.at(i, slack) = T(1);
        tab.basis(i) = slack++;
        break;
      case Sense::kGreaterEq:
        tab.at(i, slack++) = T(-1);
        tab.at(i, art) = T(1);
        tab.basis(i) = art++;
        break;
      case Sense::kEqual:
        tab.at(i, art) = T(1);
        tab.basis(i) = art++;
        break;
    }
  }

  Solution<T> sol;
  std::vector<bool> all(ncols, true);
  if (n_art > 0) {
    std::vector<T> phase1(ncols, T(0));
    for (std::size_t j = art_begin; j < ncols; ++j) phase1[j] = T(-1);
    tab.set_objective(phase1);
    tab.optimize(all);
    if (A::negative(tab.objective_value())) {
      sol.status = Status::kInfeasible;
      return sol;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis(i) < art_begin) continue;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (!A::zero(tab.at(i, j))) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<bool> allowed(ncols, true);
  for (std::size_t j = art_begin; j < ncols; ++j) allowed[j] = false;
  std::vector<T> cost(ncols, T(0));
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    cost[j] = p.objective[j];
    if (p.free[j]) cost[neg_col[j]] = -p.objective[j];
  }
  tab.set_objective(cost);
  if (!tab.optimize(allowed)) {
    sol.status = Status::kUnbounded;
    return sol;
  }

  std::vector<T> values(ncols, T(0));
  for (std::size_t i = 0; i < m; ++i) values[tab.basis(i)] = tab.rhs(i);
  sol.x.assign(p.num_vars, T(0));
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    sol.x[j] = values[j];
    if (p.free[j]) sol.x[j] -= values[neg_col[j]];
  }
  sol.objective = T(0);
  for (std::size_t j = 0; j < p.num_vars; ++j) sol.objective += p.objective[j] * sol.x[j];
  sol.status = Status::kOptimal;
  return sol;
}

}  // namespace covercert::lp
