#include <random>

#include "bstkit/sat.hpp"
#include "doctest.h"

using namespace bstkit::sat;

namespace {

CnfInstance random_3sat(std::uint64_t seed, int vars, int clauses) {
  std::mt19937_64 rng(seed);
  CnfInstance cnf;
  cnf.num_vars = vars;
  for (int c = 0; c < clauses; ++c) {
    std::vector<int> cl;
    for (int k = 0; k < 3; ++k) {
      int v = 1 + static_cast<int>(rng() % vars);
      cl.push_back(rng() % 2 ? v : -v);
    }
    cnf.add(cl);
  }
  return cnf;
}

bool brute_force(const CnfInstance& cnf) {
  for (std::uint32_t a = 0; a < (1u << cnf.num_vars); ++a) {
    std::vector<bool> model(cnf.num_vars + 1);
    for (int v = 1; v <= cnf.num_vars; ++v) model[v] = (a >> (v - 1) & 1u) != 0;
    if (satisfies(cnf, model)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("trivial instances") {
  CnfInstance empty;
  CHECK(solve(empty).sat());
  CnfInstance unit;
  unit.num_vars = 1;
  unit.add({1});
  unit.add({-1});
  CHECK_FALSE(solve(unit).sat());
  CnfInstance with_empty_clause;
  with_empty_clause.num_vars = 2;
  with_empty_clause.add(std::vector<int>{});
  CHECK_FALSE(solve(with_empty_clause).sat());
}

TEST_CASE("pigeonhole") {
  for (bool activity : {false, true}) {
    CHECK_FALSE(solve(pigeonhole(4, 3), {activity}).sat());
    CHECK_FALSE(solve(pigeonhole(6, 5), {activity}).sat());
    SolveResult r = solve(pigeonhole(4, 4), {activity});
    REQUIRE(r.sat());
    CHECK(satisfies(pigeonhole(4, 4), r.model));
  }
}

TEST_CASE("random 3-SAT agrees with brute force") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const int vars = 4 + static_cast<int>(seed % 9);
    CnfInstance cnf = random_3sat(seed, vars, static_cast<int>(vars * 4.3));
    const bool expected = brute_force(cnf);
    for (bool activity : {false, true}) {
      SolveResult r = solve(cnf, {activity});
      CHECK(r.sat() == expected);
      if (r.sat()) CHECK(satisfies(cnf, r.model));
    }
  }
}

TEST_CASE("DIMACS round trip") {
  CnfInstance cnf = random_3sat(99, 10, 30);
  CnfInstance back = parse_dimacs(cnf.to_dimacs());
  CHECK(back.num_vars == cnf.num_vars);
  CHECK(back.clauses == cnf.clauses);
  CHECK(parse_dimacs("c comment\np cnf 2 1\n1 -2 0\n").clauses.size() == 1);
}

TEST_CASE("larger random instances stay consistent") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CnfInstance cnf = random_3sat(1000 + seed, 80, 300);
    SolveResult a = solve(cnf, {false});
    SolveResult b = solve(cnf, {true});
    CHECK(a.sat() == b.sat());
    if (a.sat()) CHECK(satisfies(cnf, a.model));
    if (b.sat()) CHECK(satisfies(cnf, b.model));
  }
}
