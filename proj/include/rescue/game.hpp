#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rescue/lp.hpp"
#include "rescue/model.hpp"
#include "rescue/poset.hpp"
#include "rescue/rng.hpp"

namespace rescue {

struct GameInstance {
  Poset poset;
  Model model;
  Variant variant = Variant::OSR;
  // Nonempty only for ordinal-sum games built stage by stage, bottom first.
  std::vector<std::vector<std::string>> stages;
  std::string name;
};

inline void validate_instance(const GameInstance& g) {
  if (model_elements(g.model) != g.poset.elements)
    fail_input("ElementMismatch", "model locations do not match the order's elements");
  auto report = validate_model(g.model);
  if (!report.ok) fail_input("ValidationError", report.violations.front());
}

// Chance that the searcher reaches the hider: every inspection up to and
// including the hider's location must succeed, and a location is credited
// only if the sequence actually visits it.
inline Rational payoff(const GameInstance& g, const SearchSequence& seq,
                       const std::string& hider) {
  g.poset.index_or_fail(hider);
  SeqClass cls = classify_sequence(g.poset, seq);
  if (cls == SeqClass::Invalid || (g.variant == Variant::CSR && cls != SeqClass::Chain))
    fail_input("InvalidSequence", "sequence is not playable in this variant");
  Mask prefix = 0;
  for (const auto& s : seq) {
    prefix |= Mask{1} << g.poset.index_of(s);
    if (s == hider) return pr_mask(g.model, prefix);
  }
  return 0;
}

struct PayoffMatrix {
  std::vector<SearchSequence> rows;  // maximal searches, lexicographic
  std::vector<std::vector<Rational>> m;  // rows x elements
};

inline PayoffMatrix payoff_matrix(const GameInstance& g,
                                  int max_elements = kDefaultEnumerationGuard) {
  PayoffMatrix out;
  out.rows = enumerate_searches(g.poset, g.variant, true, max_elements);
  out.m.reserve(out.rows.size());
  for (const auto& row : out.rows) {
    std::vector<Rational> line(g.poset.n(), Rational(0));
    Mask prefix = 0;
    for (const auto& s : row) {
      int i = g.poset.index_of(s);
      prefix |= Mask{1} << i;
      line[i] = pr_mask(g.model, prefix);
    }
    out.m.push_back(std::move(line));
  }
  return out;
}

struct MatrixSolution {
  Rational value;
  std::vector<Rational> row_mix;  // maximizing player
  std::vector<Rational> col_mix;  // minimizing player
};

// Zero-sum value and optimal mixes via the shifted standard program:
// with every entry positive, maximize the total column weight subject to
// row payoffs at most one; duals recover the row player's mix.
inline MatrixSolution solve_matrix_game(const std::vector<std::vector<Rational>>& m) {
  if (m.empty() || m.front().empty()) fail_input("ValidationError", "empty game matrix");
  std::size_t rows = m.size(), cols = m.front().size();
  Rational low = m[0][0];
  for (const auto& r : m) {
    if (r.size() != cols) fail_input("ValidationError", "ragged game matrix");
    for (const auto& v : r)
      if (v < low) low = v;
  }
  Rational shift = 1 - low;

  LpProblem p;
  p.maximize = true;
  p.c.assign(cols, Rational(1));
  p.A.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    p.A[i].resize(cols);
    for (std::size_t j = 0; j < cols; ++j) p.A[i][j] = m[i][j] + shift;
  }
  p.rel.assign(rows, Rel::LE);
  p.b.assign(rows, Rational(1));
  LpSolution s = solve_lp(p);
  if (s.status != LpStatus::Optimal || s.objective <= 0)
    fail_internal("Inconsistent", "shifted matrix game did not solve");

  MatrixSolution out;
  out.value = 1 / s.objective - shift;
  out.col_mix.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) out.col_mix[j] = s.x[j] / s.objective;
  out.row_mix.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) out.row_mix[i] = s.y[i] / s.objective;
  return out;
}

struct Solution {
  Rational value;
  std::vector<Rational> hider;            // aligned with poset elements
  std::vector<SearchSequence> rows;
  std::vector<Rational> searcher;         // aligned with rows
  bool certified = false;
  std::string method;
};

struct ResponseGaps {
  // How far each side's guarantee falls short of the claimed value; both
  // zero exactly when the solution is minimax-optimal at that value.
  Rational hider_gap;
  Rational searcher_gap;
};

inline ResponseGaps best_response_gap(const GameInstance& g, const Solution& sol,
                                      int max_elements = kDefaultEnumerationGuard) {
  auto all_rows = enumerate_searches(g.poset, g.variant, true, max_elements);
  std::optional<Rational> hider_best;
  for (const auto& row : all_rows) {
    Rational total = 0;
    Mask prefix = 0;
    for (const auto& s : row) {
      int i = g.poset.index_of(s);
      prefix |= Mask{1} << i;
      if (sol.hider[i] != 0) total += sol.hider[i] * pr_mask(g.model, prefix);
    }
    if (!hider_best || total > *hider_best) hider_best = total;
  }

  std::optional<Rational> searcher_worst;
  for (int h = 0; h < g.poset.n(); ++h) {
    Rational total = 0;
    for (std::size_t r = 0; r < sol.rows.size(); ++r)
      if (sol.searcher[r] != 0) total += sol.searcher[r] * payoff(g, sol.rows[r], g.poset.name(h));
    if (!searcher_worst || total < *searcher_worst) searcher_worst = total;
  }
  return {*hider_best - sol.value, sol.value - *searcher_worst};
}

// Exact optimality check: both mixes are distributions and neither side can
// improve on the claimed value by any pure deviation.
inline bool certify(const GameInstance& g, Solution& sol,
                    int max_elements = kDefaultEnumerationGuard) {
  Rational hsum = 0, ssum = 0;
  bool shape = sol.hider.size() == static_cast<std::size_t>(g.poset.n()) &&
               sol.rows.size() == sol.searcher.size();
  if (shape) {
    for (const auto& v : sol.hider) {
      if (v < 0) shape = false;
      hsum += v;
    }
    for (const auto& v : sol.searcher) {
      if (v < 0) shape = false;
      ssum += v;
    }
  }
  if (!shape || hsum != 1 || ssum != 1) {
    sol.certified = false;
    return false;
  }
  ResponseGaps gaps = best_response_gap(g, sol, max_elements);
  sol.certified = gaps.hider_gap == 0 && gaps.searcher_gap == 0;
  return sol.certified;
}

// Exhaustive minimax solution from the full matrix over maximal searches.
inline Solution solve_oracle(const GameInstance& g,
                             int max_elements = kDefaultEnumerationGuard) {
  validate_instance(g);
  PayoffMatrix pm = payoff_matrix(g, max_elements);
  MatrixSolution ms = solve_matrix_game(pm.m);
  Solution sol;
  sol.value = ms.value;
  sol.hider = ms.col_mix;
  sol.rows = pm.rows;
  sol.searcher = ms.row_mix;
  sol.method = "minimax-lp";
  certify(g, sol, max_elements);
  return sol;
}

struct SimulationReport {
  long long rounds = 0;
  long long wins = 0;
  Rational estimate;
  Rational expected;
  bool within_3_sigma = true;
};

namespace detail {

inline std::size_t sample_index(SplitMix64& rng, const std::vector<Rational>& weights,
                                const Rational& total) {
  Rational u(mpz_class(rng.next()), mpz_class(1) << 64);
  u *= total;
  Rational cum = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cum += weights[i];
    if (u < cum) return i;
  }
  return weights.size() - 1;
}

}  // namespace detail

// Plays the mixed strategies for a number of independent rounds. Every
// round draws its own generator from the master seed, so results depend
// only on the seed and round count.
inline SimulationReport simulate(const GameInstance& g, const Solution& sol,
                                 long long rounds, std::uint64_t seed) {
  validate_instance(g);
  auto mass = pattern_masses(joint_of(g.model));
  for (const auto& v : mass)
    if (v < 0)
      fail_assumption("InvalidModel", "success patterns do not form a distribution");

  std::vector<std::vector<int>> row_indices;
  row_indices.reserve(sol.rows.size());
  for (const auto& row : sol.rows) {
    std::vector<int> idx;
    for (const auto& s : row) idx.push_back(g.poset.index_or_fail(s));
    row_indices.push_back(std::move(idx));
  }

  SimulationReport rep;
  rep.rounds = rounds;
  rep.expected = sol.value;
  Rational one(1);
  for (long long r = 0; r < rounds; ++r) {
    SplitMix64 rng = derived_stream(seed, static_cast<std::uint64_t>(r));
    Mask pattern = static_cast<Mask>(detail::sample_index(rng, mass, one));
    int hider = static_cast<int>(detail::sample_index(rng, sol.hider, one));
    std::size_t row = detail::sample_index(rng, sol.searcher, one);
    for (int loc : row_indices[row]) {
      if (!(pattern >> loc & 1)) break;  // inspection failed, chain broken
      if (loc == hider) {
        ++rep.wins;
        break;
      }
    }
  }
  rep.estimate = rat(rep.wins) / rat(rounds);
  Rational diff = rep.estimate - rep.expected;
  rep.within_3_sigma =
      diff * diff * rat(rounds) <= 9 * rep.expected * (1 - rep.expected);
  return rep;
}

}  // namespace rescue
