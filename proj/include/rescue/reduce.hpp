#pragma once

#include <string>
#include <vector>

#include "rescue/model.hpp"

namespace rescue {

// x and y succeed independently once z's outcome is known:
// Pr(xy|z) = Pr(x|z) Pr(y|z) and Pr(xy|~z) = Pr(x|~z) Pr(y|~z), where the
// ~z terms come from inclusion-exclusion against the unconditional table.
inline bool is_cond_independent(const Model& m, const std::string& x, const std::string& y,
                                const std::string& z) {
  const auto& els = model_elements(m);
  Mask mx = Mask{1} << element_index(els, x);
  Mask my = Mask{1} << element_index(els, y);
  Mask mz = Mask{1} << element_index(els, z);
  if (mx == my || mx == mz || my == mz)
    fail_input("ValidationError", "conditional independence needs three distinct elements");
  Rational pz = pr_mask(m, mz);
  Rational qz = 1 - pz;
  // Given z succeeded.
  if (pz > 0 && pr_mask(m, mx | my | mz) * pz != pr_mask(m, mx | mz) * pr_mask(m, my | mz))
    return false;
  // Given z failed: Pr(S, ~z) = Pr(S) - Pr(S, z).
  if (qz > 0) {
    Rational pxy = pr_mask(m, mx | my) - pr_mask(m, mx | my | mz);
    Rational px = pr_mask(m, mx) - pr_mask(m, mx | mz);
    Rational py = pr_mask(m, my) - pr_mask(m, my | mz);
    if (pxy * qz != px * py) return false;
  }
  return true;
}

namespace detail {

// All four identity families from the block-independence definition, over
// nonempty sub-blocks and single representatives. A conditioning event of
// probability zero makes the identity unusable; treat that as failure.
inline bool coindependent_masks(const JointModel& j, Mask a, Mask b) {
  auto pr_of = [&](Mask s) { return j.table[s]; };
  auto check = [&](Mask sub, Mask cond1, Mask cond2) {
    Rational p1 = pr_of(cond1), p2 = pr_of(cond2);
    if (p1 == 0 || p2 == 0) return false;
    return pr_of(sub | cond1) * p2 == pr_of(sub | cond2) * p1;
  };
  std::vector<int> singles_a, singles_b;
  for (int i = 0; i < kJointTableGuard * 2; ++i) {
    if (a >> i & 1) singles_a.push_back(i);
    if (b >> i & 1) singles_b.push_back(i);
  }
  for (Mask ap = a;; ap = (ap - 1) & a) {
    if (ap == 0) break;
    for (Mask bp = b;; bp = (bp - 1) & b) {
      if (bp == 0) break;
      for (int ia : singles_a) {
        Mask sa = Mask{1} << ia;
        for (int ib : singles_b) {
          Mask sb = Mask{1} << ib;
          // Pr(A'|B') = Pr(A'|b)
          if (!check(ap, bp, sb)) return false;
          // Pr(B'|A') = Pr(B'|a)
          if (!check(bp, ap, sa)) return false;
          // Pr(A'|a,b) = Pr(A'|a)
          if (!check(ap, sa | sb, sa)) return false;
          // Pr(B'|a,b) = Pr(B'|b)
          if (!check(bp, sa | sb, sb)) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace detail

inline bool is_coindependent(const Model& m, const std::vector<std::string>& a,
                             const std::vector<std::string>& b) {
  const auto& els = model_elements(m);
  if (els.size() > kCorrelationGuard)
    fail_guard("SizeLimit", "block-independence check over " + std::to_string(els.size()) +
                                " elements; guard is " + std::to_string(kCorrelationGuard));
  Mask ma = mask_of(els, a), mb = mask_of(els, b);
  if (ma == 0 || mb == 0) fail_input("ValidationError", "blocks must be nonempty");
  if (ma & mb) fail_input("ValidationError", "blocks must be disjoint");
  return detail::coindependent_masks(joint_of(m), ma, mb);
}

// For block-independent A, B the ratio Pr(A'|B')/Pr(A') is one constant;
// report it and spot-check constancy across representative pairs.
inline Rational bayes_factor(const Model& m, const std::vector<std::string>& a,
                             const std::vector<std::string>& b) {
  const auto& els = model_elements(m);
  if (!is_coindependent(m, a, b))
    fail_assumption("NotCoindependent", "blocks {" + subset_key(els, mask_of(els, a)) +
                                            "} and {" + subset_key(els, mask_of(els, b)) +
                                            "} are not block-independent");
  JointModel j = joint_of(m);
  Mask ma = mask_of(els, a), mb = mask_of(els, b);
  Rational factor;
  bool have = false;
  for (std::size_t ia = 0; ia < els.size(); ++ia) {
    if (!(ma >> ia & 1)) continue;
    for (std::size_t ib = 0; ib < els.size(); ++ib) {
      if (!(mb >> ib & 1)) continue;
      Mask sa = Mask{1} << ia, sb = Mask{1} << ib;
      Rational f = j.table[sa | sb] / (j.table[sa] * j.table[sb]);
      if (!have) {
        factor = f;
        have = true;
      } else if (f != factor) {
        fail_internal("Inconsistent", "Bayes factor varies across representative pairs");
      }
    }
  }
  return factor;
}

// Binary decomposition of the element set: every node's block either is a
// singleton or splits into two block-independent halves.
struct ReductionNode {
  Mask set = 0;
  int left = -1, right = -1;

  bool is_leaf() const { return left < 0; }
};

struct Decomposition {
  std::vector<std::string> elements;
  std::vector<ReductionNode> nodes;
  int root = -1;
};

// Splits every multi-element subset, preferring the lexicographically least
// block that contains the subset's least element. Fails on the first subset
// (in ascending mask order) with no block-independent bipartition.
inline Decomposition completely_reduce(const Model& m) {
  const auto& els = model_elements(m);
  int n = static_cast<int>(els.size());
  if (n > kCorrelationGuard)
    fail_guard("SizeLimit", "reduction over " + std::to_string(n) + " elements; guard is " +
                                std::to_string(kCorrelationGuard));
  if (n == 0) fail_input("ValidationError", "cannot reduce an empty model");
  JointModel j = joint_of(m);
  Mask full = (Mask{1} << n) - 1;

  std::vector<Mask> split(full + 1, 0);  // chosen first block per subset
  for (Mask s = 3; s <= full; ++s) {
    if (__builtin_popcount(s) < 2) continue;
    Mask low = s & -s;
    Mask best = 0;
    std::vector<std::string> best_names;
    // Proper submasks containing the least element.
    for (Mask a = (s - 1) & s; a > 0; a = (a - 1) & s) {
      if (!(a & low)) continue;
      if (!detail::coindependent_masks(j, a, s & ~a)) continue;
      auto names = names_of(els, a);
      if (best == 0 || names < best_names) {
        best = a;
        best_names = std::move(names);
      }
    }
    if (best == 0)
      fail_assumption("NotReducible", "subset {" + subset_key(els, s) +
                                          "} admits no block-independent bipartition");
    split[s] = best;
  }

  Decomposition d;
  d.elements = els;
  auto build = [&](auto&& self, Mask s) -> int {
    ReductionNode node;
    node.set = s;
    if (__builtin_popcount(s) >= 2) {
      node.left = self(self, split[s]);
      node.right = self(self, s & ~split[s]);
    }
    d.nodes.push_back(node);
    return static_cast<int>(d.nodes.size()) - 1;
  };
  d.root = build(build, full);
  return d;
}

// Rebuilds the model as an edge-weighted binary tree. Representatives are
// each block's least element; the result is verified to reproduce every
// subset probability of the source model exactly.
inline PseudoBayesTree to_pseudo_bayes_tree(const Model& m) {
  Decomposition d = completely_reduce(m);
  JointModel j = joint_of(m);
  const auto& els = d.elements;

  auto rep = [&](Mask s) -> Mask { return s & -s; };  // least element, as a mask
  auto cond = [&](Mask s, Mask given) -> Rational {
    if (j.table[given] == 0)
      fail_assumption("ZeroCondition", "conditioning event has probability zero: '" +
                                           subset_key(els, given) + "'");
    return j.table[s | given] / j.table[given];
  };

  PseudoBayesTree t;
  // sibling_rep == 0 marks the root.
  auto build = [&](auto&& self, int dnode, Mask sibling_rep) -> int {
    const ReductionNode& node = d.nodes[dnode];
    Rational w;
    if (node.is_leaf()) {
      Mask self_mask = node.set;
      if (sibling_rep == 0)
        w = j.table[self_mask];  // single-location model: plain probability
      else
        w = cond(self_mask, sibling_rep);
      return tree_add_leaf(t, names_of(els, self_mask)[0], w);
    }
    Mask ra = rep(d.nodes[node.left].set);
    Mask rb = rep(d.nodes[node.right].set);
    if (sibling_rep == 0)
      w = j.table[ra] / cond(ra, rb);
    else
      w = cond(ra, sibling_rep) / cond(ra, rb);
    int left = self(self, node.left, rb);
    int right = self(self, node.right, ra);
    return tree_add_internal(t, w, left, right);
  };
  int root = build(build, d.root, 0);
  tree_finalize(t, root);

  for (Mask s = 0; s < j.table.size(); ++s)
    if (pr_mask(t, s) != j.table[s])
      fail_internal("Inconsistent", "tree reconstruction disagrees with the model on {" +
                                        subset_key(els, s) + "}");
  return t;
}

}  // namespace rescue
