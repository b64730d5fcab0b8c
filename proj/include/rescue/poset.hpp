#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rescue/errors.hpp"

namespace rescue {

enum class Variant { OSR, CSR };

enum class SeqClass { OrderReflecting, Chain, Invalid };

// A search: an ordered list of distinct locations.
using SearchSequence = std::vector<std::string>;

constexpr int kDefaultEnumerationGuard = 10;

// Finite poset: sorted element names, irredundant cover pairs, and the
// derived strict order. Immutable after validation; queries are pure.
struct Poset {
  std::vector<std::string> elements;           // sorted, unique
  std::vector<std::pair<int, int>> covers;     // (lower, upper) index pairs
  std::vector<std::vector<char>> below;        // below[i][j]: i < j strictly
  std::vector<std::string> warnings;           // dropped redundant covers

  int n() const { return static_cast<int>(elements.size()); }

  const std::string& name(int i) const { return elements[i]; }

  int index_of(const std::string& id) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), id);
    if (it == elements.end() || *it != id) return -1;
    return static_cast<int>(it - elements.begin());
  }

  int index_or_fail(const std::string& id) const {
    int i = index_of(id);
    if (i < 0) fail_input("UnknownElement", "no such element: '" + id + "'");
    return i;
  }

  bool less(int i, int j) const { return below[i][j] != 0; }
  bool comparable(int i, int j) const { return less(i, j) || less(j, i); }
};

inline Poset validate_poset(const std::vector<std::string>& elements,
                            const std::vector<std::pair<std::string, std::string>>& covers) {
  Poset p;
  p.elements = elements;
  std::sort(p.elements.begin(), p.elements.end());
  p.elements.erase(std::unique(p.elements.begin(), p.elements.end()), p.elements.end());
  int n = p.n();

  std::set<std::pair<int, int>> raw;
  for (const auto& [lo, hi] : covers) {
    int i = p.index_of(lo), j = p.index_of(hi);
    if (i < 0) fail_input("UnknownElement", "cover uses unknown element: '" + lo + "'");
    if (j < 0) fail_input("UnknownElement", "cover uses unknown element: '" + hi + "'");
    if (i == j) fail_input("CycleError", "self-relation on '" + lo + "'");
    raw.insert({i, j});
  }

  // Transitive closure; a cycle shows up as x < x.
  p.below.assign(n, std::vector<char>(n, 0));
  for (const auto& [i, j] : raw) p.below[i][j] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (p.below[i][k])
        for (int j = 0; j < n; ++j)
          if (p.below[k][j]) p.below[i][j] = 1;
  for (int i = 0; i < n; ++i)
    if (p.below[i][i])
      fail_input("CycleError", "relation has a cycle through '" + p.elements[i] + "'");

  // Keep only covers: pairs not implied through an intermediate element.
  for (const auto& [i, j] : raw) {
    bool implied = false;
    for (int k = 0; k < n && !implied; ++k)
      if (k != i && k != j && p.below[i][k] && p.below[k][j]) implied = true;
    if (implied)
      p.warnings.push_back("redundant cover dropped: " + p.elements[i] + " < " + p.elements[j]);
    else
      p.covers.emplace_back(i, j);
  }
  std::sort(p.covers.begin(), p.covers.end());
  return p;
}

inline Poset unordered_poset(std::vector<std::string> elements) {
  return validate_poset(std::move(elements), {});
}

// Total order in the listed element order (first is lowest).
inline Poset total_order_poset(const std::vector<std::string>& elements) {
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 0; i + 1 < elements.size(); ++i)
    covers.emplace_back(elements[i], elements[i + 1]);
  return validate_poset(elements, covers);
}

// Stacked antichains: everything in stage k lies below everything in stage k+1.
inline Poset ordinal_sum_poset(const std::vector<std::vector<std::string>>& stages) {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& stage : stages) {
    if (stage.empty()) fail_input("EmptyStage", "ordinal sum has an empty stage");
    elements.insert(elements.end(), stage.begin(), stage.end());
  }
  for (std::size_t k = 0; k + 1 < stages.size(); ++k)
    for (const auto& lo : stages[k])
      for (const auto& hi : stages[k + 1]) covers.emplace_back(lo, hi);
  return validate_poset(elements, covers);
}

inline Poset star_poset(const std::vector<std::string>& leaves, const std::string& center) {
  std::vector<std::string> elements = leaves;
  elements.push_back(center);
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& u : leaves) covers.emplace_back(u, center);
  return validate_poset(elements, covers);
}

inline SeqClass classify_sequence(const Poset& p, const SearchSequence& seq) {
  std::vector<int> idx;
  std::set<int> seen;
  for (const auto& id : seq) {
    int i = p.index_or_fail(id);
    if (!seen.insert(i).second)
      fail_input("DuplicateElement", "element repeats in search: '" + id + "'");
    idx.push_back(i);
  }
  bool chain = true;
  for (std::size_t k = 0; k + 1 < idx.size(); ++k)
    if (!p.less(idx[k], idx[k + 1])) chain = false;
  if (chain) return SeqClass::Chain;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (p.less(idx[b], idx[a])) return SeqClass::Invalid;
  return SeqClass::OrderReflecting;
}

namespace detail {

inline bool osr_can_append(const Poset& p, const std::vector<int>& used_idx,
                           const std::vector<char>& used, int y) {
  if (used[y]) return false;
  for (int x : used_idx)
    if (p.less(y, x)) return false;
  return true;
}

inline bool csr_can_append(const Poset& p, const std::vector<int>& seq,
                           const std::vector<char>& used, int y) {
  if (used[y]) return false;
  return seq.empty() || p.less(seq.back(), y);
}

inline void enumerate_rec(const Poset& p, Variant variant, bool maximal_only,
                          std::vector<int>& seq, std::vector<char>& used,
                          std::vector<SearchSequence>& out) {
  bool extendable = false;
  for (int y = 0; y < p.n(); ++y) {
    bool ok = variant == Variant::OSR ? osr_can_append(p, seq, used, y)
                                      : csr_can_append(p, seq, used, y);
    if (!ok) continue;
    extendable = true;
    seq.push_back(y);
    used[y] = 1;
    if (!maximal_only) {
      SearchSequence s;
      for (int i : seq) s.push_back(p.name(i));
      out.push_back(std::move(s));
    }
    enumerate_rec(p, variant, maximal_only, seq, used, out);
    used[y] = 0;
    seq.pop_back();
  }
  if (maximal_only && !extendable && !seq.empty()) {
    SearchSequence s;
    for (int i : seq) s.push_back(p.name(i));
    out.push_back(std::move(s));
  }
}

}  // namespace detail

// All admissible searches for the variant, in lexicographic order of element
// names (a sequence precedes its own extensions). With maximal_only, only
// searches that cannot legally be extended at the end.
inline std::vector<SearchSequence> enumerate_searches(const Poset& p, Variant variant,
                                                      bool maximal_only,
                                                      int max_elements = kDefaultEnumerationGuard) {
  if (p.n() > max_elements)
    fail_guard("SizeLimit", "poset has " + std::to_string(p.n()) + " elements; guard is " +
                                std::to_string(max_elements));
  std::vector<int> seq;
  std::vector<char> used(p.n(), 0);
  std::vector<SearchSequence> out;
  detail::enumerate_rec(p, variant, maximal_only, seq, used, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> maxima(const Poset& p) {
  std::vector<std::string> out;
  for (int i = 0; i < p.n(); ++i) {
    bool is_max = true;
    for (int j = 0; j < p.n() && is_max; ++j)
      if (p.less(i, j)) is_max = false;
    if (is_max) out.push_back(p.name(i));
  }
  return out;
}

// Dilworth: width = size of a largest antichain = fewest disjoint chains that
// cover the poset, via maximum matching in the comparability bigraph.
inline std::pair<int, std::vector<std::vector<std::string>>> width_with_decomposition(
    const Poset& p) {
  int n = p.n();
  std::vector<int> match_up(n, -1), match_down(n, -1);

  // Left vertex i may be matched to right vertex j when i < j; each matched
  // edge glues two chain segments together.
  auto augment = [&](auto&& self, int i, std::vector<char>& visited) -> bool {
    for (int j = 0; j < n; ++j) {
      if (!p.less(i, j) || visited[j]) continue;
      visited[j] = 1;
      if (match_down[j] < 0 || self(self, match_down[j], visited)) {
        match_up[i] = j;
        match_down[j] = i;
        return true;
      }
    }
    return false;
  };
  int matched = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<char> visited(n, 0);
    if (augment(augment, i, visited)) ++matched;
  }

  std::vector<std::vector<std::string>> chains;
  for (int i = 0; i < n; ++i) {
    if (match_down[i] >= 0) continue;  // not a chain head
    std::vector<std::string> chain;
    for (int k = i; k >= 0; k = match_up[k]) chain.push_back(p.name(k));
    chains.push_back(std::move(chain));
  }
  std::sort(chains.begin(), chains.end());
  return {n - matched, chains};
}

// Every maximal antichain A with its downset A- = {x : x <= a for some a in A},
// both as sorted name lists; output sorted by A.
inline std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
maximal_antichains(const Poset& p, int max_elements = kDefaultEnumerationGuard) {
  int n = p.n();
  if (n > max_elements)
    fail_guard("SizeLimit", "poset has " + std::to_string(n) + " elements; guard is " +
                                std::to_string(max_elements));
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool antichain = true;
    for (int i = 0; i < n && antichain; ++i)
      if (mask >> i & 1)
        for (int j = i + 1; j < n && antichain; ++j)
          if ((mask >> j & 1) && p.comparable(i, j)) antichain = false;
    if (!antichain) continue;
    bool maximal = true;
    for (int x = 0; x < n && maximal; ++x) {
      if (mask >> x & 1) continue;
      bool met = false;
      for (int i = 0; i < n && !met; ++i)
        if ((mask >> i & 1) && p.comparable(x, i)) met = true;
      if (!met) maximal = false;
    }
    if (!maximal) continue;
    std::vector<std::string> a, down;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) a.push_back(p.name(i));
      bool in_down = (mask >> i & 1) != 0;
      for (int j = 0; j < n && !in_down; ++j)
        if ((mask >> j & 1) && p.less(i, j)) in_down = true;
      if (in_down) down.push_back(p.name(i));
    }
    out.emplace_back(std::move(a), std::move(down));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// True when every relation of `coarse` also holds in `fine`.
inline bool is_extension(const Poset& coarse, const Poset& fine) {
  if (coarse.elements != fine.elements)
    fail_input("ElementMismatch", "posets are over different element sets");
  for (int i = 0; i < coarse.n(); ++i)
    for (int j = 0; j < coarse.n(); ++j)
      if (coarse.less(i, j) && !fine.less(i, j)) return false;
  return true;
}

// Deterministic linear extension: repeatedly take the lexicographically
// least minimal element.
inline std::vector<std::string> linear_extension(const Poset& p) {
  int n = p.n();
  std::vector<char> taken(n, 0);
  std::vector<std::string> out;
  for (int step = 0; step < n; ++step) {
    for (int i = 0; i < n; ++i) {
      if (taken[i]) continue;
      bool minimal = true;
      for (int j = 0; j < n && minimal; ++j)
        if (!taken[j] && p.less(j, i)) minimal = false;
      if (minimal) {
        taken[i] = 1;
        out.push_back(p.name(i));
        break;
      }
    }
  }
  return out;
}

// Stage layering when the poset is an ordinal sum of antichains: x < y exactly
// when x's stage precedes y's. Returns the stages bottom-up, or empty if the
// poset has no such layering.
inline std::vector<std::vector<std::string>> detect_stages(const Poset& p) {
  int n = p.n();
  std::vector<int> level(n, 0);
  bool changed = true;
  while (changed) {  // longest-chain-below level; poset is acyclic
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (p.less(i, j) && level[j] < level[i] + 1) {
          level[j] = level[i] + 1;
          changed = true;
        }
  }
  int top = 0;
  for (int i = 0; i < n; ++i) top = std::max(top, level[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool want = level[i] < level[j];
      if (p.less(i, j) != want) return {};
    }
  std::vector<std::vector<std::string>> stages(top + 1);
  for (int i = 0; i < n; ++i) stages[level[i]].push_back(p.name(i));
  return stages;
}

}  // namespace rescue
