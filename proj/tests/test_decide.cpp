#include "bstkit/decide.hpp"
#include "bstkit/error.hpp"
#include "bstkit/oracle.hpp"
#include "doctest.h"

using namespace bstkit;

TEST_CASE("simple verdicts") {
  CHECK(decide(parse_formula("x != x \\ x")).sat());
  CHECK_FALSE(decide(parse_formula("x sub y ; y sub x ; x != y")).sat());
  CHECK_FALSE(decide(parse_formula("x ssub y ; y ssub x")).sat());
  CHECK(decide(parse_formula("x ssub y ; y ssub z")).sat());
  CHECK(decide(parse_formula("")).sat());
  CHECK_FALSE(decide(parse_formula("x != 0 ; x = 0")).sat());
}

TEST_CASE("singleton atoms are rejected") {
  Formula f = Formula::lit(Literal::make(Rel::Singleton, "x", "y"));
  CHECK_THROWS_AS(encode(f), PreconditionError);
}

TEST_CASE("requested columns are present") {
  DecideResult r = decide(parse_formula("x = 0"), DecideOptions{{"a", "b"}, {}});
  REQUIRE(r.sat());
  CHECK(r.model.vars == std::vector<std::string>{"a", "b", "x"});
}

TEST_CASE("decoded models satisfy the formula") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Formula f = oracle::generate_flat(seed, {4, 2 + seed % 6, seed % 3 == 0});
    DecideResult r = decide(f);
    if (r.sat()) CHECK(evaluate(r.model, f));
  }
}

TEST_CASE("agreement with the flat oracle on random formulas with connectives") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Formula f = oracle::generate_flat(5000 + seed, {3, 1 + seed % 5, true});
    const std::size_t atoms = encode(f).atoms.size();
    // A formula with a atoms needs at most a elements.
    const int k = static_cast<int>(std::min<std::size_t>(atoms, 8));
    INFO(print(f));
    CHECK(decide(f).sat() == oracle::flat_sat(f, k).sat());
  }
}

TEST_CASE("activity branching gives the same verdicts") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Formula f = oracle::generate_flat(9000 + seed, {4, 5, true});
    CHECK(decide(f).sat() == decide(f, DecideOptions{{}, {true}}).sat());
  }
}
