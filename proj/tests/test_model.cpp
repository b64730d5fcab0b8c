#include <catch2/catch_amalgamated.hpp>

#include "rescue/model.hpp"
#include "rescue/reduce.hpp"
#include "testutil.hpp"

using namespace rescue;
using testfix::f1_joint;

namespace {

JointModel two_site(const Rational& pa, const Rational& pb, const Rational& pab) {
  JointModel j;
  j.elements = {"a", "b"};
  j.table = {Rational(1), pa, pb, pab};
  return j;
}

}  // namespace

TEST_CASE("subset probabilities and odds on the joint fixture") {
  Model m = f1_joint();
  CHECK(pr(m, {"a", "c"}) == rat(1, 15));
  CHECK(pr(m, {}) == 1);
  CHECK(pr(m, {"c", "a", "c"}) == rat(1, 15));  // masks collapse repeats
  CHECK(conditional_pr(m, {"a"}, {"b"}) == rat(1, 3));
  CHECK(conditional_pr(m, {"c"}, {"a"}) == rat(2, 3));
  CHECK(conditional_pr(m, {"a"}, {"a", "b"}) == 1);
  CHECK(marginal(m, 0) == rat(1, 10));
  CHECK(odds(m, 0) == 9);
  CHECK(odds(m, 1) == rat(17, 3));
  CHECK(odds(m, 2) == 2);
  CHECK(odds_sum(m, {"a", "b", "c"}) == rat(50, 3));
  CHECK_THROWS_AS(pr(m, {"zz"}), Error);
  CHECK_THROWS_AS(conditional_pr(m, {"a"}, {"q"}), Error);
}

TEST_CASE("independent models expand to product tables") {
  IndependentModel m = testfix::independent_uniform({"x", "y", "z"}, rat(1, 2));
  Model mm = m;
  CHECK(pr(mm, {"x", "y", "z"}) == rat(1, 8));
  CHECK(odds_sum_mask(mm, 0b111) == 3);
  JointModel j = joint_from_independent(m);
  CHECK(j.table[0b101] == rat(1, 4));
  auto mass = pattern_masses(j);
  for (Mask s = 0; s < 8; ++s) CHECK(mass[s] == rat(1, 8));
}

TEST_CASE("pattern masses invert the subset table") {
  auto mass = pattern_masses(f1_joint());
  CHECK(mass[0b111] == rat(1, 30));
  CHECK(mass[0b011] == rat(1, 60));
  CHECK(mass[0b101] == rat(1, 30));
  CHECK(mass[0b110] == rat(1, 15));
  CHECK(mass[0b001] == rat(1, 60));
  CHECK(mass[0b010] == rat(1, 30));
  CHECK(mass[0b100] == rat(1, 5));
  CHECK(mass[0b000] == rat(3, 5));
  Rational total = 0;
  for (const auto& v : mass) total += v;
  CHECK(total == 1);
}

TEST_CASE("validation accepts the fixtures and rejects broken tables") {
  CHECK(validate_model(Model{f1_joint()}).ok);

  IndependentModel ind = testfix::independent_uniform({"a", "b"}, rat(1, 2));
  CHECK(validate_model(Model{ind}).ok);
  ind.p[0] = 0;
  CHECK_FALSE(validate_model(Model{ind}).ok);
  ind.p[0] = rat(3, 2);
  CHECK_FALSE(validate_model(Model{ind}).ok);

  // High marginals with an impossible overlap: the no-success pattern would
  // need probability 1 - 9/10 - 9/10 < 0.
  auto bad = two_site(rat(9, 10), rat(9, 10), 0);
  auto report = validate_model(Model{bad});
  CHECK_FALSE(report.ok);
  CHECK_FALSE(report.violations.empty());

  auto off = two_site(rat(1, 2), rat(1, 2), rat(1, 4));
  off.table[0] = rat(9, 10);
  CHECK_FALSE(validate_model(Model{off}).ok);

  JointModel short_table;
  short_table.elements = {"a", "b"};
  short_table.table = {Rational(1), rat(1, 2)};
  CHECK_FALSE(validate_model(Model{short_table}).ok);
}

TEST_CASE("correlation classes") {
  CHECK(correlation_class(Model{two_site(rat(1, 2), rat(1, 2), rat(1, 4))}) ==
        CorrelationClass::Independent);
  CHECK(correlation_class(Model{two_site(rat(1, 2), rat(1, 2), rat(3, 8))}) ==
        CorrelationClass::Positive);
  CHECK(correlation_class(Model{two_site(rat(1, 2), rat(1, 2), rat(1, 8))}) ==
        CorrelationClass::Negative);
  CHECK(correlation_class(Model{f1_joint()}) == CorrelationClass::Positive);

  // One pair above the product, another below.
  JointModel mixed;
  mixed.elements = {"x", "y", "z"};
  mixed.table.assign(8, Rational(0));
  mixed.table[0b000] = 1;
  mixed.table[0b001] = rat(1, 2);
  mixed.table[0b010] = rat(1, 4);
  mixed.table[0b100] = rat(1, 4);
  mixed.table[0b011] = rat(1, 4);
  REQUIRE(validate_model(Model{mixed}).ok);
  CHECK(correlation_class(Model{mixed}) == CorrelationClass::Neither);

  IndependentModel big = testfix::independent_uniform(
      {"e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9"}, rat(1, 2));
  CHECK_THROWS_AS(correlation_class(Model{big}), Error);
}

TEST_CASE("conditional independence of a pair given a third location") {
  // x and y are independent coins whose bias depends on z's outcome.
  JointModel j;
  j.elements = {"x", "y", "z"};
  j.table.assign(8, Rational(0));
  j.table[0b000] = 1;
  j.table[0b001] = rat(3, 8);   // x
  j.table[0b010] = rat(3, 8);   // y
  j.table[0b100] = rat(1, 2);   // z
  j.table[0b011] = rat(5, 32);  // xy
  j.table[0b101] = rat(1, 4);   // xz
  j.table[0b110] = rat(1, 4);   // yz
  j.table[0b111] = rat(1, 8);   // xyz
  REQUIRE(validate_model(Model{j}).ok);
  Model m = j;
  CHECK(is_cond_independent(m, "x", "y", "z"));
  CHECK_FALSE(is_cond_independent(m, "x", "z", "y"));
  CHECK(correlation_class(m) == CorrelationClass::Positive);
  CHECK_THROWS_AS(is_cond_independent(m, "x", "x", "z"), Error);
}

TEST_CASE("block independence on the joint fixture") {
  Model m = f1_joint();
  CHECK(is_coindependent(m, {"a", "b"}, {"c"}));
  CHECK_FALSE(is_coindependent(m, {"a", "c"}, {"b"}));
  CHECK_FALSE(is_coindependent(m, {"a"}, {"b", "c"}));
  CHECK(is_coindependent(m, {"a"}, {"b"}));  // singleton blocks always qualify
  CHECK_THROWS_AS(is_coindependent(m, {"a"}, {"a", "b"}), Error);
  CHECK_THROWS_AS(is_coindependent(m, {}, {"a"}), Error);
}

TEST_CASE("Bayes factors of block-independent splits") {
  Model m = f1_joint();
  CHECK(bayes_factor(m, {"a", "b"}, {"c"}) == 2);
  CHECK(bayes_factor(m, {"c"}, {"a", "b"}) == 2);
  CHECK(bayes_factor(m, {"a"}, {"b"}) == rat(10, 3));
  CHECK_THROWS_AS(bayes_factor(m, {"a", "c"}, {"b"}), Error);

  Model ind = testfix::independent_uniform({"x", "y"}, rat(1, 3));
  CHECK(bayes_factor(ind, {"x"}, {"y"}) == 1);
}

TEST_CASE("complete reduction splits the fixture into nested blocks") {
  Decomposition d = completely_reduce(Model{f1_joint()});
  const ReductionNode& root = d.nodes[d.root];
  REQUIRE_FALSE(root.is_leaf());
  CHECK(root.set == 0b111);
  CHECK(d.nodes[root.left].set == 0b011);   // {a,b} pairs with {c}
  CHECK(d.nodes[root.right].set == 0b100);
  const ReductionNode& ab = d.nodes[root.left];
  REQUIRE_FALSE(ab.is_leaf());
  CHECK(d.nodes[ab.left].set == 0b001);
  CHECK(d.nodes[ab.right].set == 0b010);
  CHECK(d.nodes[root.right].is_leaf());
}

TEST_CASE("complete reduction prefers the least first block") {
  Model ind = testfix::independent_uniform({"x", "y", "z"}, rat(1, 2));
  Decomposition d = completely_reduce(ind);
  const ReductionNode& root = d.nodes[d.root];
  CHECK(d.nodes[root.left].set == 0b001);  // {x} beats {x,y} and {x,z}
  CHECK(d.nodes[root.right].set == 0b110);
}

TEST_CASE("reduction failure names the stuck subset") {
  JointModel j = f1_joint();
  j.table[0b111] = rat(1, 25);  // breaks every bipartition of the full set
  REQUIRE(validate_model(Model{j}).ok);
  try {
    completely_reduce(Model{j});
    FAIL("expected NotReducible");
  } catch (const Error& e) {
    CHECK(e.cls == ErrorClass::Assumption);
    CHECK(std::string(e.what()).find("a,b,c") != std::string::npos);
  }
}

TEST_CASE("tree reconstruction reproduces the fixture") {
  PseudoBayesTree t = to_pseudo_bayes_tree(Model{f1_joint()});
  REQUIRE(t.elements == std::vector<std::string>{"a", "b", "c"});

  const TreeNode& root = t.nodes[t.root];
  REQUIRE_FALSE(root.is_leaf());
  CHECK(root.weight == rat(1, 2));
  const TreeNode& left = t.nodes[root.left];
  const TreeNode& right = t.nodes[root.right];
  REQUIRE_FALSE(left.is_leaf());
  REQUIRE(right.is_leaf());
  CHECK(right.leaf_name == "c");
  CHECK(right.weight == rat(2, 3));
  CHECK(left.weight == rat(3, 5));
  CHECK(t.nodes[left.left].leaf_name == "a");
  CHECK(t.nodes[left.left].weight == rat(1, 3));
  CHECK(t.nodes[left.right].leaf_name == "b");
  CHECK(t.nodes[left.right].weight == rat(1, 2));

  Model tm = t;
  JointModel j = f1_joint();
  for (Mask s = 0; s < 8; ++s) CHECK(pr_mask(tm, s) == j.table[s]);
  CHECK(validate_model(tm).ok);
}

TEST_CASE("single-location reduction keeps the plain probability") {
  JointModel j;
  j.elements = {"solo"};
  j.table = {Rational(1), rat(2, 7)};
  PseudoBayesTree t = to_pseudo_bayes_tree(Model{j});
  REQUIRE(t.nodes.size() == 1);
  CHECK(t.nodes[t.root].is_leaf());
  CHECK(t.nodes[t.root].weight == rat(2, 7));
}

TEST_CASE("tree validation checks weights and path products") {
  PseudoBayesTree t;
  int a = tree_add_leaf(t, "a", rat(1, 2));
  int b = tree_add_leaf(t, "b", rat(1, 2));
  int root = tree_add_internal(t, rat(2, 1), a, b);
  tree_finalize(t, root);
  auto report = validate_model(Model{t});
  CHECK(report.ok);  // weights positive, path products equal 1
  CHECK_FALSE(report.notes.empty());  // but the induced masses go negative

  t.nodes[root].weight = rat(5, 2);
  auto too_big = validate_model(Model{t});
  CHECK_FALSE(too_big.ok);

  t.nodes[root].weight = rat(-1, 2);
  CHECK_FALSE(validate_model(Model{t}).ok);

  t.nodes[root].weight = rat(1, 2);
  auto fine = validate_model(Model{t});
  CHECK(fine.ok);
  CHECK(fine.notes.empty());
  CHECK(pr_mask(Model{t}, 0b11) == rat(1, 8));
}

TEST_CASE("malformed tree shapes are rejected") {
  PseudoBayesTree shared;
  int a = tree_add_leaf(shared, "a", rat(1, 2));
  int b = tree_add_leaf(shared, "b", rat(1, 2));
  int inner = tree_add_internal(shared, rat(1, 2), a, b);
  int root = tree_add_internal(shared, rat(1, 2), inner, b);  // b has two parents
  CHECK_THROWS_AS(tree_finalize(shared, root), Error);

  PseudoBayesTree dup;
  int l1 = tree_add_leaf(dup, "same", rat(1, 2));
  int l2 = tree_add_leaf(dup, "same", rat(1, 2));
  int r2 = tree_add_internal(dup, rat(1, 2), l1, l2);
  CHECK_THROWS_AS(tree_finalize(dup, r2), Error);
}
