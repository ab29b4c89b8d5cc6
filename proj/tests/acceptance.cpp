// Acceptance suite: one PASS/FAIL line per criterion. Every threshold used
// below is a named constant in this file.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "bstkit/error.hpp"
#include "bstkit/hf.hpp"
#include "bstkit/models.hpp"
#include "bstkit/oracle.hpp"
#include "bstkit/translate.hpp"

namespace {

using namespace bstkit;
using hf::HFSet;
using Clock = std::chrono::steady_clock;

constexpr double kExampleBudgetMs = 100.0;
constexpr double kTranslateBudgetMs = 1000.0;
constexpr double kQuadraticRatio = 4.0;
constexpr double kQuadraticTolerance = 0.3;
constexpr std::size_t kRatioAtoms = 3;
constexpr std::size_t kPlantedCases = 200;
constexpr std::size_t kRandomNestedCases = 200;
constexpr int kMaxOracleLevel = 4;  // 16 sets
constexpr int kGridUniverse = 3;
constexpr double kGridBudgetMs = 60000.0;
constexpr std::size_t kMixedCases = 2000;
constexpr std::size_t kFlatnessCases = 100;
constexpr std::size_t kTransformCases = 100;
constexpr std::size_t kOrderCases = 100;
constexpr int kBoundMax = 20;
constexpr double kEnumerationBudgetMs = 5000.0;
constexpr std::size_t kRandomAxiomTriples = 10000;
constexpr std::uint64_t kAxiomSeed = 20240601;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome worked_examples() {
  struct Case {
    const char* name;
    const char* text;
    bool sat;
  };
  const Case cases[] = {
      {"ex1", "x = {y}\ny = {z}\nz = {x}\na = b \\ c", false},
      {"ex2", "y = x \\ z\nx = {y}\ny = {z}", false},
      {"ex3", "x = y \\ y2\nx = z \\ z2\nz = {y}", true},
  };
  Outcome o{true, ""};
  for (const auto& c : cases) {
    Problem p = parse_problem(c.text);
    auto t = Clock::now();
    NestedResult r = solve_nested(p, NestedOptions{{true, false}, {}});
    const double ms = ms_since(t);
    bool ok = r.sat() == c.sat && ms < kExampleBudgetMs;
    if (r.sat()) {
      ok = ok && evaluate(r.model, p) && r.model.at("x") == hf::empty_set() &&
           r.model.at("z") == hf::singleton(r.model.at("y"));
    }
    o.pass = o.pass && ok;
    o.detail += std::string(c.name) + "=" + (r.sat() ? "SAT" : "UNSAT") + fmt(" (%.1f ms) ", ms);
  }
  return o;
}

Problem sized_problem(std::size_t n, std::size_t p) {
  std::vector<Literal> lits;
  auto v = [](std::size_t i) { return "v" + std::to_string(i); };
  for (std::size_t i = 0; i + 2 < n; ++i) lits.push_back(Literal::make(Rel::DiffEq, v(i), v(i + 1), v(i + 2)));
  for (std::size_t i = 0; i < p; ++i) lits.push_back(Literal::make(Rel::Singleton, v(i + 1), v(i)));
  return Problem::from_literals(lits);
}

Outcome quadratic_size() {
  Outcome o{true, ""};
  const std::pair<std::size_t, std::size_t> grid[] = {{10, 3}, {50, 10}, {200, 50}};
  for (auto [n, p] : grid) {
    Problem prob = sized_problem(n, p);
    auto t = Clock::now();
    XiFormula xi = translate(prob);
    const double ms = ms_since(t);
    const bool ok = prob.vars.size() == n && prob.psi.size() == p && xi.size() == translate_size(n, p);
    o.pass = o.pass && ok;
    if (n == 200) o.pass = o.pass && ms < kTranslateBudgetMs;
    o.detail += "(" + std::to_string(n) + "," + std::to_string(p) + ")=" + std::to_string(xi.size()) +
                (n == 200 ? fmt(" in %.1f ms", ms) : "") + "; ";
  }
  const double c100 = static_cast<double>(translate(sized_problem(100, kRatioAtoms)).size());
  const double c200 = static_cast<double>(translate(sized_problem(200, kRatioAtoms)).size());
  const double ratio = c200 / c100;
  o.pass = o.pass && std::abs(ratio - kQuadraticRatio) <= kQuadraticTolerance;
  o.detail += fmt("ratio n=200/n=100 at p=3: %.3f", ratio);
  return o;
}

Outcome equisatisfiability() {
  std::size_t planted_ok = 0;
  for (std::size_t i = 0; i < kPlantedCases; ++i) {
    oracle::Profile pr{oracle::Profile::Kind::planted, 2 + i % 4, 1 + i % 5, i % 4};
    oracle::Generated g = oracle::generate(100000 + i, pr);
    NestedResult r = solve_nested(g.problem);
    planted_ok += r.sat() && evaluate(r.model, g.problem) && evaluate_core(r.model, g.problem);
  }
  std::size_t unsat = 0, unsat_confirmed = 0, sat = 0, sat_modelled = 0;
  for (std::size_t i = 0; i < kRandomNestedCases; ++i) {
    oracle::Profile pr{oracle::Profile::Kind::random, 2 + i % 4, 2 + i % 4, 1 + i % 3};
    oracle::Generated g = oracle::generate(200000 + i, pr);
    NestedResult r = solve_nested(g.problem);
    if (r.sat()) {
      ++sat;
      sat_modelled += evaluate(r.model, g.problem);
      continue;
    }
    ++unsat;
    bool all_unsat = true;
    for (int level = 1; level <= kMaxOracleLevel; ++level)
      all_unsat = all_unsat && !oracle::nested_sat(g.problem, level).sat();
    unsat_confirmed += all_unsat;
  }
  Outcome o;
  o.pass = planted_ok == kPlantedCases && unsat_confirmed == unsat && sat_modelled == sat;
  o.detail = "planted SAT+verified " + std::to_string(planted_ok) + "/" + std::to_string(kPlantedCases) +
             "; random UNSAT confirmed by nested oracle (levels 1..4) " + std::to_string(unsat_confirmed) +
             "/" + std::to_string(unsat) + "; random SAT verified " + std::to_string(sat_modelled) + "/" +
             std::to_string(sat);
  return o;
}

Outcome flat_grid() {
  const std::vector<Literal> lits = oracle::all_diff_literals({"a", "b", "c"});
  const std::size_t L = lits.size();
  std::size_t cases = 0, agree = 0;
  auto check = [&](std::vector<Formula> fs) {
    Formula f = Formula::all(std::move(fs));
    ++cases;
    agree += decide(f).sat() == oracle::flat_sat(f, kGridUniverse).sat();
  };
  auto t = Clock::now();
  check({});
  for (std::size_t i = 0; i < L; ++i) {
    check({Formula::lit(lits[i])});
    for (std::size_t j = i + 1; j < L; ++j) {
      check({Formula::lit(lits[i]), Formula::lit(lits[j])});
      for (std::size_t k = j + 1; k < L; ++k)
        check({Formula::lit(lits[i]), Formula::lit(lits[j]), Formula::lit(lits[k])});
    }
  }
  const double grid_ms = ms_since(t);
  const std::size_t grid_cases = cases, grid_agree = agree;

  // Mixed formulas with connectives and derived atoms, at most three positive atoms.
  std::size_t mixed = 0, mixed_agree = 0;
  for (std::uint64_t seed = 0; mixed < kMixedCases; ++seed) {
    Formula f = oracle::generate_flat(700000 + seed, {3, 1 + seed % 3, true});
    if (encode(f).atoms.size() > static_cast<std::size_t>(kGridUniverse)) continue;
    ++mixed;
    mixed_agree += decide(f).sat() == oracle::flat_sat(f, kGridUniverse).sat();
  }
  Outcome o;
  o.pass = grid_agree == grid_cases && mixed_agree == mixed && grid_ms < kGridBudgetMs;
  o.detail = "grid " + std::to_string(grid_agree) + "/" + std::to_string(grid_cases) +
             fmt(" in %.0f ms", grid_ms) + "; mixed " + std::to_string(mixed_agree) + "/" +
             std::to_string(mixed);
  return o;
}

Outcome flatness() {
  std::size_t found = 0, good = 0;
  for (std::uint64_t seed = 0; found < kFlatnessCases; ++seed) {
    Formula f = oracle::generate_flat(300000 + seed, {3 + seed % 3, 3 + seed % 4, seed % 2 == 1});
    DecideResult d = decide(f);
    if (!d.sat()) continue;
    ++found;
    const std::vector<std::string>& vars = d.model.vars;
    const int flat = static_cast<int>(vars.size()) + 1;
    FlatModel fm = flatten(d.model, vars, flat);
    bool ok = is_flat(fm.assignment, flat) && evaluate(fm.assignment, f);
    const auto abstract_regions = realized_regions(d.model, vars);
    ok = ok && realized_regions(fm.assignment, vars) == abstract_regions;
    std::vector<HFSet> reps;
    for (const auto& [sig, rep] : fm.params.region_index) reps.push_back(rep);
    std::sort(reps.begin(), reps.end(), hf::canonical_less);
    ok = ok && reps.size() == abstract_regions.size() &&
         std::adjacent_find(reps.begin(), reps.end()) == reps.end();
    for (const auto& u : vars)
      for (const auto& v : vars) ok = ok && !fm.assignment.at(v).contains(fm.assignment.at(u));
    good += ok;
  }
  return {good == kFlatnessCases, std::to_string(good) + "/" + std::to_string(kFlatnessCases) +
                                      " flat models with rank, region and non-membership checks"};
}

// Initial flat model of phi & Xi as built by the pipeline.
std::optional<SetAssignment> flat_model(const Problem& p) {
  std::vector<std::string> cols = p.var_names();
  for (const auto& v : p.var_names()) cols.push_back(tilde_name(v));
  DecideResult d = decide(flat_formula(p, translate(p)), DecideOptions{cols, {}});
  if (!d.sat()) return std::nullopt;
  return flatten(d.model, cols, pipeline_flat_rank(p)).assignment;
}

bool transform_triple_ok(const Problem& p, const SetAssignment& m, const Literal& atom) {
  const Formula flat = flat_formula(p, translate(p));
  SetAssignment t = transform(m, atom.x(), atom.y());
  const auto vars = p.var_names();
  for (const auto& u : vars)
    for (const auto& v : vars) {
      if (hf::subset(m.at(u), m.at(v)) != hf::subset(t.at(u), t.at(v))) return false;
      if (hf::disjoint(m.at(u), m.at(v)) != hf::disjoint(t.at(u), t.at(v))) return false;
    }
  if (!evaluate(t, flat) || !evaluate(t, atom)) return false;
  if (t.at(atom.y()) != m.at(atom.y()) || t.at(atom.x()) == m.at(atom.x())) return false;
  for (const auto& other : p.psi) {
    if (t.at(other.x()) == m.at(other.x())) continue;
    if (!evaluate(t, other)) return false;
    if (t.at(other.x()) != t.at(atom.x()) || t.at(other.y()) != t.at(atom.y())) return false;
  }
  return true;
}

Outcome transformation() {
  std::size_t triples = 0, good = 0;
  for (std::uint64_t seed = 0; triples < kTransformCases; ++seed) {
    oracle::Generated g = oracle::generate(400000 + seed, {oracle::Profile::Kind::planted, 5, 3, 1 + seed % 3});
    const Problem& p = g.problem;
    if (p.psi.empty()) continue;
    std::optional<SetAssignment> m0 = flat_model(p);
    if (!m0) continue;
    LiftResult lr = lift(p, *m0, FlatParams{pipeline_flat_rank(p), {}}, LiftOptions{false, true});
    SetAssignment cur = m0->restricted([&] {
      std::vector<std::string> cols = p.var_names();
      for (const auto& v : p.var_names()) cols.push_back(tilde_name(v));
      return cols;
    }());
    for (const auto& step : lr.steps) {
      if (triples == kTransformCases) break;
      ++triples;
      good += transform_triple_ok(p, cur, step.atom);
      cur = step.after;
    }
  }
  return {good == kTransformCases,
          std::to_string(good) + "/" + std::to_string(kTransformCases) +
              " triples: profiles preserved, model of phi & Xi & x={y}, My fixed"};
}

Outcome order_suite() {
  std::size_t models = 0, acyclic = 0;
  for (std::uint64_t seed = 0; models < kOrderCases; ++seed) {
    oracle::Generated g = oracle::generate(500000 + seed, {oracle::Profile::Kind::random, 4, 2, 2 + seed % 3});
    std::optional<SetAssignment> m0 = flat_model(g.problem);
    if (!m0 || g.problem.psi.empty()) continue;
    ++models;
    try {
      order(g.problem.psi, *m0);
      ++acyclic;
    } catch (const CycleDetected&) {
    }
  }
  bool cycle_seen = false;
  Problem ex1 = parse_problem("x = {y}\ny = {z}\nz = {x}\na = b \\ c");
  SetAssignment m;
  const HFSet r = hf::im_inject(std::uint64_t{1}, 4);
  for (const auto& v : ex1.var_names()) m.set(v, HFSet::of({r}));
  try {
    order(ex1.psi, m);
  } catch (const CycleDetected& e) {
    cycle_seen = e.cycle().size() >= 1;
  }
  return {acyclic == kOrderCases && cycle_seen,
          std::to_string(acyclic) + "/" + std::to_string(kOrderCases) + " acyclic; ex1 configuration " +
              (cycle_seen ? "raises CycleDetected" : "did not raise")};
}

Outcome level_bounds() {
  hf::BoundReport rep = hf::bound_checks(kBoundMax);
  bool ok = rep.ok() && rep.rows.size() == static_cast<std::size_t>(kBoundMax);
  for (const auto& row : rep.rows) ok = ok && row.inequality_holds;
  const char* expected[] = {"1", "2", "12", "65520"};
  std::string counts;
  for (int n = 1; n <= 4; ++n) {
    const auto& row = rep.rows[n - 1];
    ok = ok && row.rank_method == "enumeration" && row.rank_count == expected[n - 1] && row.rank_bound_holds;
    counts += row.rank_count + (n < 4 ? "," : "");
  }
  auto t = Clock::now();
  const hf::LevelTable v5 = hf::enumerate_level(5);
  const double ms = ms_since(t);
  const auto rank4 = std::count_if(v5.sets.begin(), v5.sets.end(), [](HFSet s) { return s.rank() == 4; });
  ok = ok && rank4 == 65520 && ms < kEnumerationBudgetMs;
  return {ok, "inequality n=1..20 ok; |V#n| n=1..4 = " + counts +
                  fmt("; rank-4 sets enumerated via V5 in %.0f ms", ms)};
}

Outcome difference_axioms() {
  const hf::LevelTable v4 = hf::enumerate_level(4);
  std::vector<hf::Triple> all;
  for (HFSet x : v4.sets)
    for (HFSet y : v4.sets)
      for (HFSet z : v4.sets) all.push_back({x, y, z});
  hf::AxiomReport exhaustive = hf::check_axioms(all);

  const hf::LevelTable v5 = hf::enumerate_level(5);
  std::mt19937_64 rng(kAxiomSeed);
  std::vector<hf::Triple> sample;
  for (std::size_t i = 0; i < kRandomAxiomTriples; ++i)
    sample.push_back({v5.sets[rng() % v5.sets.size()], v5.sets[rng() % v5.sets.size()],
                      v5.sets[rng() % v5.sets.size()]});
  hf::AxiomReport random = hf::check_axioms(sample);
  return {exhaustive.ok() && random.ok() && exhaustive.checked == 4096 &&
              random.checked == kRandomAxiomTriples,
          std::to_string(exhaustive.checked) + " triples from the 16-set level, " +
              std::to_string(random.checked) + " random triples from the 65536-set level, " +
              std::to_string(exhaustive.violations.size() + random.violations.size()) + " counterexamples"};
}

Outcome membership_downgrade() {
  oracle::DowngradeReport r3 = oracle::membership_downgrade(3);
  oracle::DowngradeReport r4 = oracle::membership_downgrade(4);
  return {r3.ok() && r4.ok(), std::to_string(r4.agreements) + "/" + std::to_string(r4.pairs) +
                                  " pairs on the 16-set level, " + std::to_string(r3.agreements) + "/" +
                                  std::to_string(r3.pairs) + " on the 4-set level"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"worked examples", worked_examples},
      {"quadratic translation size", quadratic_size},
      {"equisatisfiability", equisatisfiability},
      {"flat oracle equivalence", flat_grid},
      {"flatness", flatness},
      {"transformation", transformation},
      {"atom order", order_suite},
      {"level bounds", level_bounds},
      {"difference axioms", difference_axioms},
      {"membership downgrade", membership_downgrade},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    auto t = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2d %s: %s [%.0f ms]\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(),
                ms_since(t));
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
