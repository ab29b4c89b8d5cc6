#include "bstkit/error.hpp"
#include "bstkit/oracle.hpp"
#include "doctest.h"

using namespace bstkit;
using namespace bstkit::oracle;

TEST_CASE("flat oracle basics") {
  Formula nonempty = parse_formula("x != x \\ x");
  CHECK_FALSE(flat_sat(nonempty, 0).sat());
  FlatResult r = flat_sat(nonempty, 1);
  REQUIRE(r.sat());
  CHECK(r.witness->member(0, 0));
  for (int k = 0; k <= 4; ++k) CHECK_FALSE(flat_sat(parse_formula("x sub y ; y sub x ; x != y"), k).sat());
}

TEST_CASE("flat oracle budget") {
  Formula f = parse_formula("a = b \\ c ; d = e \\ a");
  CHECK_NOTHROW(flat_sat(f, 4));
  CHECK_THROWS_AS(flat_sat(f, 5), BudgetExceeded);
  CHECK_THROWS_AS(flat_sat(Formula::lit(Literal::make(Rel::Singleton, "x", "y")), 2),
                  PreconditionError);
}

TEST_CASE("serial and parallel flat search return the same first witness") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Formula f = generate_flat(seed, {4, 1 + seed % 5, true});
    FlatResult a = flat_sat(f, 3), b = flat_sat_serial(f, 3);
    CHECK(a.status == b.status);
    if (a.sat()) CHECK(a.witness->membership == b.witness->membership);
  }
}

TEST_CASE("nested oracle: worked examples") {
  Problem cycle = parse_problem("x = {y} ; y = {z} ; z = {x}");
  for (int level = 1; level <= 4; ++level) CHECK_FALSE(nested_sat(cycle, level).sat());
  Problem p = parse_problem("z = {x} ; x = x \\ x");
  CHECK_FALSE(nested_sat(p, 1).sat());
  NestedOracleResult r = nested_sat(p, 2);
  REQUIRE(r.sat());
  CHECK(r.witness->at("x") == hf::empty_set());
  CHECK(r.witness->at("z") == hf::singleton(hf::empty_set()));
}

TEST_CASE("nested oracle reads derived literals directly") {
  Problem p = parse_problem("x ssub y ; y ssub z");
  CHECK_FALSE(nested_sat(p, 2).sat());
  CHECK(nested_sat(p, 3).sat());
  CHECK(source_vars(p) == std::vector<std::string>{"x", "y", "z"});
}

TEST_CASE("nested oracle budget and serial agreement") {
  Problem big = parse_problem("a = b \\ c ; d = e \\ f ; g = a \\ a");
  CHECK_THROWS_AS(nested_sat(big, 4), BudgetExceeded);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Problem q = generate(seed, {Profile::Kind::random, 3, 3, 2}).problem;
    NestedOracleResult a = nested_sat(q, 4), b = nested_sat_serial(q, 4);
    CHECK(a.status == b.status);
    if (a.sat()) CHECK(*a.witness == *b.witness);
  }
}

TEST_CASE("membership downgrade") {
  for (int level = 1; level <= 4; ++level) CHECK(membership_downgrade(level).ok());
}

TEST_CASE("generator") {
  Generated g = generate(7, Profile::parse("planted:3:2:1"));
  REQUIRE(g.certificate);
  CHECK(evaluate(*g.certificate, g.problem));
  CHECK(nested_sat(g.problem, 4).sat());
  Generated again = generate(7, Profile::parse("planted:3:2:1"));
  CHECK(print(again.problem) == print(g.problem));
  CHECK(generate(1, Profile::parse("empty")).problem.source.empty());
  CHECK_THROWS_AS(Profile::parse("planted:3"), Error);
  CHECK_THROWS_AS(Profile::parse("lucky"), Error);
  CHECK(Profile::parse("random:4:5:6").str() == "random:4:5:6");
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Generated h = generate(seed, {Profile::Kind::planted, 5, 4, 3});
    CHECK(evaluate(*h.certificate, h.problem));
    for (const auto& [v, value] : h.certificate->values()) CHECK(value.rank() < 4);
  }
}

TEST_CASE("all difference literals") {
  CHECK(all_diff_literals({"a", "b", "c"}).size() == 54);
}
