#include <algorithm>

#include "bstkit/translate.hpp"
#include "doctest.h"

using namespace bstkit;

namespace {

bool has_conjunct(const XiFormula& xi, const std::string& text) {
  return std::any_of(xi.conjuncts.begin(), xi.conjuncts.end(),
                     [&](const XiFormula::Conjunct& c) { return print(c.formula) == text; });
}

Problem chain_problem(std::size_t n, std::size_t p) {
  std::vector<Literal> lits;
  for (std::size_t i = 0; i + 2 < n; ++i)
    lits.push_back(Literal::make(Rel::DiffEq, "v" + std::to_string(i), "v" + std::to_string(i + 1),
                                 "v" + std::to_string(i + 2)));
  for (std::size_t i = 0; i < p; ++i)
    lits.push_back(Literal::make(Rel::Singleton, "v" + std::to_string(i + 1), "v" + std::to_string(i)));
  return Problem::from_literals(lits);
}

}  // namespace

TEST_CASE("empty problem translates to nothing") {
  XiFormula xi = translate(parse_problem(""));
  CHECK(xi.size() == 0);
  CHECK(xi.print().empty());
}

TEST_CASE("translation of ex2 contains its distinguishing conjuncts") {
  XiFormula xi = translate(parse_problem("y = x \\ z ; x = {y} ; y = {z}"));
  CHECK(has_conjunct(xi, "x nsub y"));
  CHECK(has_conjunct(xi, "y nsub z"));
  CHECK(has_conjunct(xi, "ndisj(x,y) -> x sub y"));
  CHECK(xi.size() == translate_size(3, 2));
}

TEST_CASE("membership cycle yields a cycle of strict tilde inclusions") {
  XiFormula xi = translate(parse_problem("x = {y} ; y = {z} ; z = {x} ; a = b \\ c"));
  CHECK(has_conjunct(xi, "ndisj(x,x) -> ~y ssub ~x"));
  CHECK(has_conjunct(xi, "ndisj(y,y) -> ~z ssub ~y"));
  CHECK(has_conjunct(xi, "ndisj(z,z) -> ~x ssub ~z"));
}

TEST_CASE("families appear in order and with the expected counts") {
  Problem p = chain_problem(6, 3);
  XiFormula xi = translate(p);
  const std::size_t n = p.vars.size(), m = p.psi.size();
  std::size_t counts[5] = {};
  int last = 0;
  for (const auto& c : xi.conjuncts) {
    const int fam = static_cast<int>(c.family);
    ++counts[fam];
    // guards interleave, everything else is non-decreasing
    if (fam != 1 && fam != 2) CHECK(fam >= last);
    last = std::max(last, fam);
  }
  CHECK(counts[0] == m);
  CHECK(counts[1] == m * n);
  CHECK(counts[2] == m * n);
  CHECK(counts[3] == m * (m - 1) / 2);
  CHECK(counts[4] == n * (n - 1) / 2);
  CHECK(xi.tilde_vars.size() == n);
  for (std::size_t i = 0; i < n; ++i) CHECK(xi.tilde_vars[i].name == tilde_name(xi.vars[i].name));
}

TEST_CASE("closed-form size") {
  CHECK(translate_size(0, 0) == 0);
  CHECK(translate_size(1, 0) == 0);
  CHECK(translate_size(3, 1) == 1 + 6 + 0 + 3);
  for (std::size_t n : {10u, 25u, 40u})
    for (std::size_t p : {0u, 1u, 3u, 8u}) {
      Problem prob = chain_problem(n, p);
      CHECK(translate(prob).size() == translate_size(prob.vars.size(), prob.psi.size()));
    }
}

TEST_CASE("translation output parses back") {
  Problem p = parse_problem("x = y \\ y2 ; x = z \\ z2 ; z = {y}");
  XiFormula xi = translate(p);
  Formula back = parse_formula(xi.print());
  CHECK(back == xi.as_formula());
}
