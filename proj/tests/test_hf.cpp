#include <random>

#include "bstkit/error.hpp"
#include "bstkit/hf.hpp"
#include "doctest.h"

using namespace bstkit;
using namespace bstkit::hf;

TEST_CASE("construction is canonical") {
  HFSet e = empty_set();
  HFSet a = HFSet::of({e, singleton(e)});
  HFSet b = HFSet::of({singleton(e), e, e});
  CHECK(a == b);
  CHECK(a.size() == 2);
  CHECK(a.hash() == b.hash());
  CHECK(HFSet{} == e);
  CHECK(to_string(a) == "{{},{{}}}");
  CHECK(parse_set("{ {{}} , {} }") == a);
  CHECK_THROWS_AS(parse_set("{{}"), Error);
}

TEST_CASE("rank") {
  CHECK(empty_set().rank() == 0);
  for (int k = 0; k < 30; ++k) CHECK(chain(k).rank() == k);
  CHECK(HFSet::of({chain(3), chain(0)}).rank() == 4);
}

TEST_CASE("boolean operations agree with membership") {
  const LevelTable v4 = enumerate_level(4);
  for (HFSet a : v4.sets)
    for (HFSet b : v4.sets) {
      HFSet d = diff(a, b), u = unite(a, b), i = intersect(a, b);
      for (HFSet s : enumerate_level(3).sets) {
        CHECK(d.contains(s) == (a.contains(s) && !b.contains(s)));
        CHECK(u.contains(s) == (a.contains(s) || b.contains(s)));
        CHECK(i.contains(s) == (a.contains(s) && b.contains(s)));
      }
      CHECK(subset(a, b) == (diff(a, b) == empty_set()));
      CHECK(disjoint(a, b) == (i == empty_set()));
      CHECK(member(a, b) == b.contains(a));
    }
}

TEST_CASE("levels and counts") {
  const int sizes[] = {0, 1, 2, 4, 16, 65536};
  for (int n = 0; n <= 5; ++n) {
    const LevelTable t = enumerate_level(n);
    CHECK(t.sets.size() == static_cast<std::size_t>(sizes[n]));
    CHECK(level_size(n) == sizes[n]);
  }
  CHECK(rank_count(1) == 1);
  CHECK(rank_count(2) == 2);
  CHECK(rank_count(3) == 12);
  CHECK(rank_count(4) == 65520);
  CHECK_THROWS_AS(enumerate_level(6), PreconditionError);
}

TEST_CASE("level tables list sets in binary-code order") {
  const LevelTable prev = enumerate_level(3), t = enumerate_level(4);
  for (std::size_t i = 0; i < t.sets.size(); ++i)
    for (std::size_t j = 0; j < prev.sets.size(); ++j)
      CHECK(t.sets[i].contains(prev.sets[j]) == ((i >> j & 1u) != 0));
}

TEST_CASE("im_inject is injective into sets of the flat rank") {
  const int flat = 6;
  std::vector<HFSet> seen;
  for (std::uint64_t idx = 1; idx < (1u << (flat - 1)); ++idx) {
    HFSet s = im_inject(idx, flat);
    CHECK(s.rank() == flat);
    for (HFSet t : seen) CHECK(t != s);
    seen.push_back(s);
    std::vector<bool> bits(flat - 1);
    for (int j = 0; j < flat - 1; ++j) bits[j] = (idx >> j & 1u) != 0;
    CHECK(im_inject(bits, flat) == s);
  }
  CHECK_THROWS_AS(im_inject(std::uint64_t{0}, flat), PreconditionError);
  CHECK_THROWS_AS(im_inject(std::uint64_t{1} << (flat - 1), flat), PreconditionError);
}

TEST_CASE("level counting bounds") {
  BoundReport r = bound_checks(20);
  CHECK(r.ok());
  REQUIRE(r.rows.size() == 20);
  CHECK(r.rows[3].rank_count == "65520");
  CHECK(r.rows[3].rank_method == "enumeration");
  CHECK(r.rows[4].rank_method == "recurrence");
  CHECK(r.rows[5].rank_method == "monotone");
  for (const auto& row : r.rows) CHECK(row.inequality_holds);
}

TEST_CASE("difference axioms: serial and parallel kernels agree") {
  const LevelTable v4 = enumerate_level(4);
  std::vector<Triple> sample;
  for (HFSet x : v4.sets)
    for (HFSet y : v4.sets)
      for (HFSet z : v4.sets) sample.push_back({x, y, z});
  AxiomReport par = check_axioms(sample);
  AxiomReport ser = check_axioms_serial(sample);
  CHECK(par.checked == sample.size());
  CHECK(ser.checked == sample.size());
  CHECK(par.ok());
  CHECK(ser.ok());
}
