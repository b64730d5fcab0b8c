#pragma once

#include <cstddef>
#include <vector>

#include "rescue/errors.hpp"
#include "rescue/rational.hpp"

namespace rescue {

enum class Rel { LE, GE, EQ };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// Linear program over nonnegative variables.
struct LpProblem {
  bool maximize = true;
  std::vector<Rational> c;
  std::vector<std::vector<Rational>> A;
  std::vector<Rel> rel;
  std::vector<Rational> b;
};

// y[i] is the sensitivity of the optimal objective to b[i], so row duals of
// a maximization are nonnegative on binding LE rows and nonpositive on GE
// rows, and the other way around when minimizing.
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  std::vector<Rational> x;
  std::vector<Rational> y;
};

namespace detail {

// Dense exact tableau with Bland's rule; cols hold structural variables,
// then one marker per row (slack, surplus, or artificial), then extra
// artificials for surplus rows. Markers expose row duals as reduced costs.
struct Simplex {
  std::size_t rows, n_struct, n_cols;
  std::vector<std::vector<Rational>> t;  // rows x (n_cols + 1), last is rhs
  std::vector<int> basis;
  std::vector<char> artificial;

  bool run(const std::vector<Rational>& cost, const std::vector<char>& banned) {
    for (;;) {
      std::vector<Rational> y(rows);
      for (std::size_t i = 0; i < rows; ++i) y[i] = cost[basis[i]];
      int enter = -1;
      for (std::size_t j = 0; j < n_cols; ++j) {
        if (banned[j]) continue;
        Rational rc = cost[j];
        for (std::size_t i = 0; i < rows; ++i)
          if (y[i] != 0 && t[i][j] != 0) rc -= y[i] * t[i][j];
        if (rc < 0) {
          enter = static_cast<int>(j);
          break;
        }
      }
      if (enter < 0) return true;  // optimal
      int leave = -1;
      Rational best;
      for (std::size_t i = 0; i < rows; ++i) {
        if (t[i][enter] <= 0) continue;
        Rational ratio = t[i][n_cols] / t[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          best = ratio;
          leave = static_cast<int>(i);
        }
      }
      if (leave < 0) return false;  // unbounded direction
      pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = t[r][c];
    for (auto& v : t[r]) v /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rational f = t[i][c];
      for (std::size_t j = 0; j <= n_cols; ++j)
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
    }
    basis[r] = static_cast<int>(c);
  }

  Rational reduced_cost(const std::vector<Rational>& cost, std::size_t j) const {
    Rational rc = cost[j];
    for (std::size_t i = 0; i < rows; ++i)
      if (t[i][j] != 0) rc -= cost[basis[i]] * t[i][j];
    return rc;
  }
};

}  // namespace detail

inline LpSolution solve_lp(const LpProblem& p) {
  std::size_t m = p.A.size(), n = p.c.size();
  if (p.b.size() != m || p.rel.size() != m)
    fail_input("ValidationError", "inconsistent linear program shape");
  for (const auto& row : p.A)
    if (row.size() != n) fail_input("ValidationError", "ragged constraint matrix");

  // Normalize to nonnegative right-hand sides, tracking the flip so duals
  // can be reported against the caller's rows.
  std::vector<std::vector<Rational>> A = p.A;
  std::vector<Rational> b = p.b;
  std::vector<Rel> rel = p.rel;
  std::vector<int> row_sign(m, 1);
  for (std::size_t i = 0; i < m; ++i)
    if (b[i] < 0) {
      row_sign[i] = -1;
      b[i] = -b[i];
      for (auto& v : A[i]) v = -v;
      if (rel[i] == Rel::LE)
        rel[i] = Rel::GE;
      else if (rel[i] == Rel::GE)
        rel[i] = Rel::LE;
    }

  std::size_t extra = 0;  // second column for surplus rows
  for (auto r : rel)
    if (r == Rel::GE) ++extra;

  detail::Simplex s;
  s.rows = m;
  s.n_struct = n;
  s.n_cols = n + m + extra;
  s.t.assign(m, std::vector<Rational>(s.n_cols + 1, Rational(0)));
  s.basis.assign(m, -1);
  s.artificial.assign(s.n_cols, 0);

  std::vector<int> marker(m);
  std::size_t next_extra = n + m;
  bool any_artificial = false;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) s.t[i][j] = A[i][j];
    s.t[i][s.n_cols] = b[i];
    marker[i] = static_cast<int>(n + i);
    switch (rel[i]) {
      case Rel::LE:
        s.t[i][n + i] = 1;  // slack
        s.basis[i] = static_cast<int>(n + i);
        break;
      case Rel::GE: {
        s.t[i][n + i] = -1;  // surplus
        std::size_t art = next_extra++;
        s.t[i][art] = 1;
        s.artificial[art] = 1;
        s.basis[i] = static_cast<int>(art);
        any_artificial = true;
        break;
      }
      case Rel::EQ:
        s.t[i][n + i] = 1;  // artificial doubles as the marker
        s.artificial[n + i] = 1;
        s.basis[i] = static_cast<int>(n + i);
        any_artificial = true;
        break;
    }
  }

  std::vector<char> none(s.n_cols, 0);
  if (any_artificial) {
    std::vector<Rational> phase1(s.n_cols, Rational(0));
    for (std::size_t j = 0; j < s.n_cols; ++j)
      if (s.artificial[j]) phase1[j] = 1;
    if (!s.run(phase1, none))
      fail_internal("Inconsistent", "feasibility phase reported an unbounded direction");
    Rational infeas = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (s.artificial[s.basis[i]]) infeas += s.t[i][s.n_cols];
    if (infeas > 0) return {LpStatus::Infeasible, Rational(0), {}, {}};
    // Swap leftover zero-level artificials for real columns when possible;
    // a row with no real coefficients is redundant and stays inert.
    for (std::size_t i = 0; i < m; ++i) {
      if (!s.artificial[s.basis[i]]) continue;
      for (std::size_t j = 0; j < s.n_cols; ++j)
        if (!s.artificial[j] && s.t[i][j] != 0) {
          s.pivot(i, j);
          break;
        }
    }
  }

  std::vector<Rational> cost(s.n_cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = p.maximize ? -p.c[j] : p.c[j];
  std::vector<char> banned(s.artificial.begin(), s.artificial.end());
  if (!s.run(cost, banned)) return {LpStatus::Unbounded, Rational(0), {}, {}};

  LpSolution out;
  out.status = LpStatus::Optimal;
  out.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (s.basis[i] >= 0 && static_cast<std::size_t>(s.basis[i]) < n)
      out.x[s.basis[i]] = s.t[i][s.n_cols];
  out.objective = 0;
  for (std::size_t j = 0; j < n; ++j) out.objective += p.c[j] * out.x[j];
  out.y.assign(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    Rational rc = s.reduced_cost(cost, static_cast<std::size_t>(marker[i]));
    Rational dual = (rel[i] == Rel::GE) ? rc : -rc;  // minimization duals
    if (p.maximize) dual = -dual;
    out.y[i] = dual * row_sign[i];
  }
  return out;
}

}  // namespace rescue
