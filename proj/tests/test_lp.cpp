#include <catch2/catch_amalgamated.hpp>

#include "rescue/lp.hpp"

using namespace rescue;

TEST_CASE("bounded maximization with binding rows and duals") {
  LpProblem p;
  p.maximize = true;
  p.c = {3, 2};
  p.A = {{1, 1}, {1, 0}, {0, 1}};
  p.rel = {Rel::LE, Rel::LE, Rel::LE};
  p.b = {4, 2, 3};
  auto s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == 10);
  CHECK(s.x == std::vector<Rational>{2, 2});
  CHECK(s.y[0] == 2);
  CHECK(s.y[1] == 1);
  CHECK(s.y[2] == 0);
}

TEST_CASE("minimization over surplus rows") {
  LpProblem p;
  p.maximize = false;
  p.c = {2, 3};
  p.A = {{1, 2}, {3, 1}};
  p.rel = {Rel::GE, Rel::GE};
  p.b = {4, 6};
  auto s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == rat(34, 5));
  CHECK(s.x == std::vector<Rational>{rat(8, 5), rat(6, 5)});
  CHECK(s.y == std::vector<Rational>{rat(7, 5), rat(1, 5)});
}

TEST_CASE("equality constraints") {
  LpProblem p;
  p.maximize = false;
  p.c = {1, 1};
  p.A = {{1, 1}, {1, -1}};
  p.rel = {Rel::EQ, Rel::EQ};
  p.b = {3, 1};
  auto s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == 3);
  CHECK(s.x == std::vector<Rational>{2, 1});
  CHECK(s.y[0] == 1);
  CHECK(s.y[1] == 0);
}

TEST_CASE("infeasible systems are reported") {
  LpProblem p;
  p.maximize = true;
  p.c = {1, 1};
  p.A = {{1, 1}, {1, 1}};
  p.rel = {Rel::LE, Rel::GE};
  p.b = {1, 2};
  CHECK(solve_lp(p).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded directions are reported") {
  LpProblem p;
  p.maximize = true;
  p.c = {1};
  p.A = {{1}};
  p.rel = {Rel::GE};
  p.b = {1};
  CHECK(solve_lp(p).status == LpStatus::Unbounded);

  LpProblem free;
  free.maximize = true;
  free.c = {1, 0};
  CHECK(solve_lp(free).status == LpStatus::Unbounded);

  free.c = {-1, -2};
  auto s = solve_lp(free);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == 0);
}

TEST_CASE("negative right-hand sides flip cleanly") {
  LpProblem p;
  p.maximize = true;
  p.c = {1, 1};
  p.A = {{-1, -1}};
  p.rel = {Rel::GE};
  p.b = {-4};
  auto s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == 4);
  // Raising b toward zero tightens the region, so the sensitivity is -1.
  CHECK(s.y[0] == -1);
}

TEST_CASE("redundant equalities leave an inert artificial") {
  LpProblem p;
  p.maximize = false;
  p.c = {1, 0};
  p.A = {{1, 1}, {2, 2}};
  p.rel = {Rel::EQ, Rel::EQ};
  p.b = {2, 4};
  auto s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == 0);
  CHECK(s.x == std::vector<Rational>{0, 2});
}

TEST_CASE("degenerate vertices terminate") {
  // Several constraints meet at the optimum; Bland's rule must not cycle.
  LpProblem p;
  p.maximize = true;
  p.c = {rat(3, 4), -150, rat(1, 50), -6};
  p.A = {{rat(1, 4), -60, rat(-1, 25), 9},
         {rat(1, 2), -90, rat(-1, 50), 3},
         {0, 0, 1, 0}};
  p.rel = {Rel::LE, Rel::LE, Rel::LE};
  p.b = {0, 0, 1};
  auto s = solve_lp(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == rat(1, 20));
  CHECK(s.x[0] == rat(1, 25));
}

TEST_CASE("shape errors are rejected") {
  LpProblem p;
  p.c = {1};
  p.A = {{1, 2}};
  p.rel = {Rel::LE};
  p.b = {1};
  CHECK_THROWS_AS(solve_lp(p), Error);
}
