#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rescue/errors.hpp"
#include "rescue/rational.hpp"

namespace rescue {

// Subsets of a model's sorted element list, as bitmasks.
using Mask = std::uint32_t;

constexpr int kJointTableGuard = 16;
constexpr int kCorrelationGuard = 8;

// Success probabilities multiply across locations.
struct IndependentModel {
  std::vector<std::string> elements;  // sorted
  std::vector<Rational> p;            // aligned with elements
};

// Full table of Pr(every location in S succeeds), one entry per subset.
struct JointModel {
  std::vector<std::string> elements;  // sorted
  std::vector<Rational> table;        // indexed by element bitmask
};

// Binary tree over the locations; every node carries the weight of its
// incoming edge (the root included). Subset probabilities are products of
// edge weights over the spanning subtree of the subset's leaves.
struct TreeNode {
  Rational weight;
  int left = -1, right = -1, parent = -1;
  std::string leaf_name;  // nonempty exactly for leaves

  bool is_leaf() const { return left < 0; }
};

struct PseudoBayesTree {
  std::vector<std::string> elements;  // sorted leaf names
  std::vector<TreeNode> nodes;
  int root = -1;
};

// Expected values of general nonnegative variables on a total order,
// listed bottom-up.
struct ValueModel {
  std::vector<std::string> order;
  std::vector<Rational> e;
};

using Model = std::variant<IndependentModel, JointModel, PseudoBayesTree>;

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;  // broken invariants, with witnesses
  std::vector<std::string> notes;       // diagnostics that do not reject
};

// ---- element/subset plumbing ----

inline const std::vector<std::string>& model_elements(const Model& m) {
  return std::visit([](const auto& v) -> const std::vector<std::string>& { return v.elements; },
                    m);
}

inline int element_index(const std::vector<std::string>& elements, const std::string& id) {
  auto it = std::lower_bound(elements.begin(), elements.end(), id);
  if (it == elements.end() || *it != id)
    fail_input("UnknownElement", "no such element: '" + id + "'");
  return static_cast<int>(it - elements.begin());
}

inline Mask mask_of(const std::vector<std::string>& elements,
                    const std::vector<std::string>& subset) {
  Mask m = 0;
  for (const auto& id : subset) m |= Mask{1} << element_index(elements, id);
  return m;
}

inline std::vector<std::string> names_of(const std::vector<std::string>& elements, Mask mask) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (mask >> i & 1) out.push_back(elements[i]);
  return out;
}

// Canonical subset key: comma-joined sorted names; empty set is "".
inline std::string subset_key(const std::vector<std::string>& elements, Mask mask) {
  std::string out;
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (mask >> i & 1) {
      if (!out.empty()) out += ',';
      out += elements[i];
    }
  return out;
}

// ---- Pr(S) ----

inline Rational pr_mask(const IndependentModel& m, Mask mask) {
  Rational out = 1;
  for (std::size_t i = 0; i < m.elements.size(); ++i)
    if (mask >> i & 1) out *= m.p[i];
  return out;
}

inline Rational pr_mask(const JointModel& m, Mask mask) { return m.table[mask]; }

inline Rational pr_mask(const PseudoBayesTree& t, Mask mask) {
  std::vector<char> marked(t.nodes.size(), 0);
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const TreeNode& node = t.nodes[i];
    if (!node.is_leaf()) continue;
    int e = element_index(t.elements, node.leaf_name);
    if (!(mask >> e & 1)) continue;
    for (int k = static_cast<int>(i); k >= 0; k = t.nodes[k].parent) marked[k] = 1;
  }
  Rational out = 1;
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    if (marked[i]) out *= t.nodes[i].weight;
  return out;
}

inline Rational pr_mask(const Model& m, Mask mask) {
  return std::visit([&](const auto& v) { return pr_mask(v, mask); }, m);
}

inline Rational pr(const Model& m, const std::vector<std::string>& subset) {
  return pr_mask(m, mask_of(model_elements(m), subset));
}

inline Rational conditional_pr_mask(const Model& m, Mask s, Mask given) {
  Rational pg = pr_mask(m, given);
  if (pg == 0)
    fail_assumption("ZeroCondition", "conditioning event has probability zero: '" +
                                         subset_key(model_elements(m), given) + "'");
  return pr_mask(m, s | given) / pg;
}

inline Rational conditional_pr(const Model& m, const std::vector<std::string>& s,
                               const std::vector<std::string>& given) {
  const auto& els = model_elements(m);
  return conditional_pr_mask(m, mask_of(els, s), mask_of(els, given));
}

inline Rational marginal(const Model& m, int index) { return pr_mask(m, Mask{1} << index); }

// Odds of failure (1 - Pr(x)) / Pr(x).
inline Rational odds(const Model& m, int index) {
  Rational p = marginal(m, index);
  if (p == 0) fail_assumption("DegenerateHider", "marginal probability zero at '" +
                                                     model_elements(m)[index] + "'");
  return (1 - p) / p;
}

inline Rational odds_sum_mask(const Model& m, Mask mask) {
  Rational out = 0;
  for (std::size_t i = 0; i < model_elements(m).size(); ++i)
    if (mask >> i & 1) out += odds(m, static_cast<int>(i));
  return out;
}

inline Rational odds_sum(const Model& m, const std::vector<std::string>& subset) {
  return odds_sum_mask(m, mask_of(model_elements(m), subset));
}

inline Mask full_mask(const Model& m) {
  return (Mask{1} << model_elements(m).size()) - 1;
}

// ---- conversions and pattern masses ----

inline JointModel joint_from_independent(const IndependentModel& m) {
  if (m.elements.size() > kJointTableGuard)
    fail_guard("SizeLimit", "joint table would need 2^" + std::to_string(m.elements.size()) +
                                " entries");
  JointModel j{m.elements, {}};
  j.table.resize(std::size_t{1} << m.elements.size());
  for (Mask s = 0; s < j.table.size(); ++s) j.table[s] = pr_mask(m, s);
  return j;
}

inline JointModel joint_from_tree(const PseudoBayesTree& t) {
  if (t.elements.size() > kJointTableGuard)
    fail_guard("SizeLimit", "joint table would need 2^" + std::to_string(t.elements.size()) +
                                " entries");
  JointModel j{t.elements, {}};
  j.table.resize(std::size_t{1} << t.elements.size());
  for (Mask s = 0; s < j.table.size(); ++s) j.table[s] = pr_mask(t, s);
  return j;
}

inline JointModel joint_of(const Model& m) {
  if (const auto* j = std::get_if<JointModel>(&m)) return *j;
  if (const auto* ind = std::get_if<IndependentModel>(&m)) return joint_from_independent(*ind);
  return joint_from_tree(std::get<PseudoBayesTree>(m));
}

// Probability of each exact success pattern T, by inclusion-exclusion over
// the all-success table: mass(T) = sum over S >= T of (-1)^|S-T| Pr(S).
inline std::vector<Rational> pattern_masses(const JointModel& j) {
  std::vector<Rational> mass = j.table;
  int n = static_cast<int>(j.elements.size());
  for (int bit = 0; bit < n; ++bit)
    for (Mask s = 0; s < mass.size(); ++s)
      if (!(s >> bit & 1)) mass[s] -= mass[s | (Mask{1} << bit)];
  return mass;
}

// ---- tree structure plumbing ----

inline int tree_add_leaf(PseudoBayesTree& t, const std::string& name, const Rational& weight) {
  TreeNode node;
  node.weight = weight;
  node.leaf_name = name;
  t.nodes.push_back(node);
  return static_cast<int>(t.nodes.size()) - 1;
}

inline int tree_add_internal(PseudoBayesTree& t, const Rational& weight, int left, int right) {
  TreeNode node;
  node.weight = weight;
  node.left = left;
  node.right = right;
  t.nodes.push_back(node);
  return static_cast<int>(t.nodes.size()) - 1;
}

// Fills parents and the sorted leaf list; rejects malformed shapes.
inline void tree_finalize(PseudoBayesTree& t, int root) {
  t.root = root;
  t.elements.clear();
  for (auto& node : t.nodes) node.parent = -1;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const TreeNode& node = t.nodes[i];
    if (node.is_leaf()) {
      if (node.leaf_name.empty() || node.right >= 0)
        fail_input("ValidationError", "malformed tree node");
      t.elements.push_back(node.leaf_name);
      continue;
    }
    if (node.left < 0 || node.right < 0 || !node.leaf_name.empty())
      fail_input("ValidationError", "internal tree nodes need exactly two children");
    for (int child : {node.left, node.right}) {
      if (child < 0 || child >= static_cast<int>(t.nodes.size()) || child == static_cast<int>(i))
        fail_input("ValidationError", "tree child index out of range");
      if (t.nodes[child].parent >= 0)
        fail_input("ValidationError", "tree node has two parents");
      t.nodes[child].parent = static_cast<int>(i);
    }
  }
  if (root < 0 || root >= static_cast<int>(t.nodes.size()) || t.nodes[root].parent >= 0)
    fail_input("ValidationError", "bad tree root");
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    if (static_cast<int>(i) != root && t.nodes[i].parent < 0)
      fail_input("ValidationError", "disconnected tree node");
  std::sort(t.elements.begin(), t.elements.end());
  if (std::adjacent_find(t.elements.begin(), t.elements.end()) != t.elements.end())
    fail_input("ValidationError", "duplicate leaf label");
}

// Product of edge weights from the root down to each leaf, by leaf element index.
inline std::vector<Rational> tree_path_products(const PseudoBayesTree& t) {
  std::vector<Rational> out(t.elements.size(), Rational(1));
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const TreeNode& node = t.nodes[i];
    if (!node.is_leaf()) continue;
    Rational prod = 1;
    for (int k = static_cast<int>(i); k >= 0; k = t.nodes[k].parent) prod *= t.nodes[k].weight;
    out[element_index(t.elements, node.leaf_name)] = prod;
  }
  return out;
}

// ---- validation ----

inline ValidationReport validate_model(const IndependentModel& m) {
  ValidationReport r;
  if (m.p.size() != m.elements.size()) {
    r.ok = false;
    r.violations.push_back("probability list does not match element list");
    return r;
  }
  for (std::size_t i = 0; i < m.elements.size(); ++i) {
    if (m.p[i] <= 0) {
      r.ok = false;
      r.violations.push_back("Pr(" + m.elements[i] + ") = " + to_string(m.p[i]) +
                             " must be positive");
    } else if (m.p[i] > 1) {
      r.ok = false;
      r.violations.push_back("Pr(" + m.elements[i] + ") = " + to_string(m.p[i]) + " exceeds 1");
    }
  }
  return r;
}

inline ValidationReport validate_model(const JointModel& m) {
  ValidationReport r;
  std::size_t want = std::size_t{1} << m.elements.size();
  if (m.table.size() != want) {
    r.ok = false;
    r.violations.push_back("joint table needs " + std::to_string(want) + " entries, has " +
                           std::to_string(m.table.size()));
    return r;
  }
  if (m.table[0] != 1) {
    r.ok = false;
    r.violations.push_back("Pr(empty set) = " + to_string(m.table[0]) + ", expected 1");
  }
  for (std::size_t i = 0; i < m.elements.size(); ++i)
    if (m.table[Mask{1} << i] <= 0) {
      r.ok = false;
      r.violations.push_back("Pr(" + m.elements[i] + ") must be positive");
    }
  auto mass = pattern_masses(m);
  for (Mask s = 0; s < mass.size(); ++s)
    if (mass[s] < 0) {
      r.ok = false;
      r.violations.push_back("success pattern {" + subset_key(m.elements, s) +
                             "} has probability " + to_string(mass[s]));
    }
  return r;
}

// Tree validity is weight-local: positive weights and root-to-leaf products
// at most 1 (marginals are probabilities). Whether the induced subset
// function is a genuine distribution is reported as a note; samplers and
// joint conversions check it separately.
inline ValidationReport validate_model(const PseudoBayesTree& t) {
  ValidationReport r;
  for (const auto& node : t.nodes)
    if (node.weight <= 0) {
      r.ok = false;
      r.violations.push_back("tree edge weight " + to_string(node.weight) +
                             " must be positive");
    }
  if (!r.ok) return r;
  auto paths = tree_path_products(t);
  for (std::size_t i = 0; i < paths.size(); ++i)
    if (paths[i] > 1) {
      r.ok = false;
      r.violations.push_back("path product to leaf '" + t.elements[i] + "' is " +
                             to_string(paths[i]) + " > 1");
    }
  if (r.ok && t.elements.size() <= kJointTableGuard) {
    auto mass = pattern_masses(joint_from_tree(t));
    for (Mask s = 0; s < mass.size(); ++s)
      if (mass[s] < 0) {
        r.notes.push_back("induced success-pattern {" + subset_key(t.elements, s) +
                          "} has negative probability " + to_string(mass[s]) +
                          "; not a distribution");
        break;
      }
  }
  return r;
}

inline ValidationReport validate_model(const Model& m) {
  return std::visit([](const auto& v) { return validate_model(v); }, m);
}

// ---- correlation ----

enum class CorrelationClass { Positive, Negative, Neither, Independent };

inline const char* to_string(CorrelationClass c) {
  switch (c) {
    case CorrelationClass::Positive: return "positive";
    case CorrelationClass::Negative: return "negative";
    case CorrelationClass::Neither: return "neither";
    default: return "independent";
  }
}

// Exhaustive comparison of Pr(A and B) against Pr(A)Pr(B) over all disjoint
// nonempty pairs; conditioning events of probability zero cannot violate
// either side and are covered by the product form.
inline CorrelationClass correlation_class(const Model& m, int guard = kCorrelationGuard) {
  int n = static_cast<int>(model_elements(m).size());
  if (n > guard)
    fail_guard("SizeLimit", "correlation check over " + std::to_string(n) +
                                " elements; guard is " + std::to_string(guard));
  JointModel j = joint_of(m);
  Mask full = (Mask{1} << n) - 1;
  bool some_less = false, some_greater = false;
  for (Mask a = 1; a <= full; ++a) {
    Mask rest = full & ~a;
    for (Mask b = rest; b > 0; b = (b - 1) & rest) {
      if (b > a) continue;  // unordered pairs once
      Rational lhs = j.table[a | b];
      Rational rhs = j.table[a] * j.table[b];
      if (lhs < rhs) some_less = true;
      if (lhs > rhs) some_greater = true;
    }
  }
  if (!some_less && !some_greater) return CorrelationClass::Independent;
  if (!some_less) return CorrelationClass::Positive;
  if (!some_greater) return CorrelationClass::Negative;
  return CorrelationClass::Neither;
}

}  // namespace rescue
