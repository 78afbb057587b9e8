#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lp.hpp"
#include "mos_test.hpp"
#include "testdata.hpp"

#include <random>

using namespace scoreforge;

namespace {

std::mt19937 rng(9090);

LinearSystem table_system(const char* acc, const char* sens, const char* spec, const char* eps) {
  std::vector<ReportedScore> scores = {
      {ScoreId::acc, parse_decimal(acc)->value, parse_decimal(eps)->value},
      {ScoreId::sens, parse_decimal(sens)->value, parse_decimal(eps)->value},
      {ScoreId::spec, parse_decimal(spec)->value, parse_decimal(eps)->value},
  };
  return build_mos_system(testdata::five_fold_configuration(), scores, {});
}

}  // namespace

TEST_CASE("no integer in a fractional point") {
  LinearSystem sys;
  sys.vars = {{"x", 0, 1}};
  sys.rows = {{{{0, Rational(1)}}, Rational(1, 2), Rational(1, 2)}};
  CHECK(solve_feasibility(sys).status == FeasibilityResult::Status::Infeasible);
}

TEST_CASE("small sums") {
  LinearSystem sys;
  sys.vars = {{"x", 0, 3}, {"y", 0, 3}};
  LpConstraint row;
  row.terms = {{0, Rational(1)}, {1, Rational(1)}};
  row.lo = Rational(7);
  row.hi = Rational(7);
  sys.rows = {row};
  CHECK(solve_feasibility(sys).status == FeasibilityResult::Status::Infeasible);

  sys.rows[0].lo = Rational(6);
  sys.rows[0].hi = Rational(6);
  FeasibilityResult r = solve_feasibility(sys);
  REQUIRE(r.status == FeasibilityResult::Status::Feasible);
  CHECK(r.assignment == std::vector<BigInt>{3, 3});
}

TEST_CASE("five-fold mean system is feasible at the true scores") {
  FeasibilityResult r = solve_feasibility(table_system("0.8290", "0.7391", "0.8741", "0.0001"));
  REQUIRE(r.status == FeasibilityResult::Status::Feasible);
  CHECK(check_assignment(table_system("0.8290", "0.7391", "0.8741", "0.0001"), r.assignment));

  CHECK(solve_feasibility(table_system("0.8280", "0.7391", "0.8741", "0.0001")).status ==
        FeasibilityResult::Status::Infeasible);
}

TEST_CASE("feasible witnesses survive the exact recheck") {
  std::uniform_int_distribution<int> val(0, 100);
  for (int trial = 0; trial < 50; ++trial) {
    LinearSystem sys;
    sys.vars = {{"a", 0, 9}, {"b", 0, 9}, {"c", 0, 9}};
    LpConstraint row;
    row.terms = {{0, Rational(val(rng), 10)}, {1, Rational(val(rng), 10)}, {2, Rational(1, 3)}};
    row.lo = Rational(val(rng), 20);
    sys.rows.push_back(row);
    LpConstraint cap;
    cap.terms = {{0, Rational(1)}, {1, Rational(1)}, {2, Rational(1)}};
    cap.hi = Rational(val(rng), 5);
    sys.rows.push_back(cap);
    FeasibilityResult r = solve_feasibility(sys);
    if (r.status == FeasibilityResult::Status::Feasible) CHECK(check_assignment(sys, r.assignment));
  }
}

TEST_CASE("infeasible relaxation implies an infeasible integer system") {
  LinearSystem sys;
  sys.vars = {{"x", 0, 3}, {"y", 0, 3}};
  LpConstraint row;
  row.terms = {{0, Rational(1)}, {1, Rational(1)}};
  row.lo = Rational(10);  // beyond any real point in the box
  sys.rows = {row};
  FeasibilityResult r = solve_feasibility(sys);
  CHECK(r.status == FeasibilityResult::Status::Infeasible);
  CHECK(r.nodes == 1);  // pruned at the root, no branching
}

TEST_CASE("oracle equivalence on random two-fold systems") {
  std::uniform_int_distribution<long long> size(1, 6);
  std::uniform_int_distribution<int> value_c(0, 1000);
  std::uniform_int_distribution<int> subset(1, 4);
  std::uniform_int_distribution<int> eps_exp(2, 3);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    FoldConfiguration folds = {{size(rng), size(rng)}, {size(rng), size(rng)}};
    std::vector<ScoreId> pool = {ScoreId::acc, ScoreId::sens, ScoreId::spec, ScoreId::bacc};
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(subset(rng));
    std::vector<ReportedScore> scores;
    Rational eps = pow10(-eps_exp(rng));
    for (ScoreId id : pool) scores.push_back({id, Rational(value_c(rng), 1000), eps});
    LinearSystem sys = build_mos_system(folds, scores, {});
    FeasibilityResult fast = solve_feasibility(sys);
    FeasibilityResult brute = solve_feasibility_bruteforce(sys);
    REQUIRE(fast.status != FeasibilityResult::Status::Indeterminate);
    CHECK(fast.status == brute.status);
    if (fast.status == FeasibilityResult::Status::Feasible) {
      CHECK(check_assignment(sys, fast.assignment));
      ++feasible_seen;
    } else {
      ++infeasible_seen;
    }
  }
  CHECK(feasible_seen > 20);
  CHECK(infeasible_seen > 20);
}

TEST_CASE("results are deterministic across repeated solves") {
  LinearSystem sys = table_system("0.8290", "0.7391", "0.8741", "0.0001");
  FeasibilityResult first = solve_feasibility(sys);
  for (int i = 0; i < 3; ++i) {
    FeasibilityResult again = solve_feasibility(sys);
    CHECK(again.status == first.status);
    CHECK(again.assignment == first.assignment);
    CHECK(again.nodes == first.nodes);
  }
}

TEST_CASE("node budget surfaces as indeterminate") {
  LinearSystem sys = table_system("0.8290", "0.7391", "0.8741", "0.0001");
  LpOptions opts;
  opts.node_budget = 0;
  CHECK(solve_feasibility(sys, opts).status == FeasibilityResult::Status::Indeterminate);
}

TEST_CASE("brute force guards its domain") {
  LinearSystem sys;
  sys.vars = {{"x", 0, 100000}, {"y", 0, 100000}};
  CHECK_THROWS_AS(solve_feasibility_bruteforce(sys), TooLargeError);
}

TEST_CASE("malformed systems are rejected") {
  LinearSystem sys;
  sys.vars = {{"x", 3, 2}};
  CHECK_THROWS_AS(solve_feasibility(sys), std::invalid_argument);

  LinearSystem bad_ref;
  bad_ref.vars = {{"x", 0, 1}};
  bad_ref.rows = {{{{7, Rational(1)}}, Rational(0), Rational(1)}};
  CHECK_THROWS_AS(solve_feasibility(bad_ref), std::invalid_argument);
}
