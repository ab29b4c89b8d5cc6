// bstkit command-line front end.
//
//   bstkit translate FILE
//   bstkit solve FILE... [--flat] [--dump-cnf PATH] [--trace] [--json] [--jobs N]
//   bstkit oracle FILE (--flat-k K | --level L)
//   bstkit gen --seed S --profile P
//   bstkit check
//
// solve and oracle exit 10 on SAT, 20 on UNSAT and 1 on errors; usage
// errors exit 2.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bstkit/error.hpp"
#include "bstkit/hf.hpp"
#include "bstkit/models.hpp"
#include "bstkit/oracle.hpp"
#include "bstkit/translate.hpp"
#include "json.hpp"

namespace {

using namespace bstkit;
using json = nlohmann::ordered_json;

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr const char* kSchema = "bstkit.run/1";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json model_json(const SetAssignment& m, const std::vector<std::string>& vars) {
  json out = json::object();
  for (const auto& v : vars) out[v] = hf::to_string(m.at(v));
  return out;
}

std::vector<std::string> user_vars(const Problem& p) { return oracle::source_vars(p); }

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveFlags {
  bool flat = false;
  std::string dump_cnf;
  bool trace = false;
  bool json = false;
  bool activity = false;
  int jobs = 1;
};

struct FileOutcome {
  int code = kExitError;
  std::string out;
  std::string err;
};

Formula problem_as_formula(const Problem& p) {
  std::vector<Formula> lits;
  for (const auto& l : p.source) {
    if (l.rel == Rel::Singleton)
      throw Error("singleton atom '" + print(l) + "' in a flat formula");
    lits.push_back(Formula::lit(l));
  }
  return Formula::all(std::move(lits));
}

FileOutcome solve_file(const std::string& path, const SolveFlags& flags) {
  FileOutcome o;
  json report{{"schema", kSchema}, {"command", "solve"}, {"file", path}};
  try {
    const std::string text = read_file(path);
    report["input_digest"] = fnv1a(text);
    auto parsed = parse(text);
    sat::SolverOptions solver{flags.activity};

    const bool flat_mode = flags.flat || std::holds_alternative<Formula>(parsed);
    bool sat = false;
    std::string model_text;
    json counts, times, model;
    if (flat_mode) {
      using Clock = std::chrono::steady_clock;
      Formula f = std::holds_alternative<Formula>(parsed) ? std::get<Formula>(parsed)
                                                         : problem_as_formula(std::get<Problem>(parsed));
      std::vector<std::string> vars;
      collect_vars(f, vars);
      if (!flags.dump_cnf.empty()) {
        std::ofstream(flags.dump_cnf) << encode(f, vars).cnf.to_dimacs();
      }
      auto t0 = Clock::now();
      DecideResult dec = decide(f, DecideOptions{vars, solver});
      double decide_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      sat = dec.sat();
      counts = {{"vars", vars.size()}, {"atoms", dec.atoms}, {"cnf_vars", dec.cnf_vars},
                {"cnf_clauses", dec.cnf_clauses}};
      times = {{"decide", decide_ms}};
      if (sat) {
        const int flat_rank = static_cast<int>(vars.size()) + 1;
        t0 = Clock::now();
        FlatModel fm = flatten(dec.model, vars, flat_rank);
        times["flatten"] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        if (!evaluate(fm.assignment, f)) throw Error("flattened model does not satisfy the formula");
        counts["flat_rank"] = flat_rank;
        model_text = fm.assignment.render(vars);
        model = model_json(fm.assignment, vars);
      }
    } else {
      const Problem& p = std::get<Problem>(parsed);
      NestedOptions opts;
      opts.solver = solver;
      opts.lift.keep_steps = flags.trace;
      if (!flags.dump_cnf.empty()) {
        XiFormula xi = translate(p);
        std::vector<std::string> cols = p.var_names();
        for (const auto& v : p.var_names()) cols.push_back(tilde_name(v));
        std::ofstream(flags.dump_cnf) << encode(flat_formula(p, xi), cols).cnf.to_dimacs();
      }
      NestedResult r = solve_nested(p, opts);
      sat = r.sat();
      counts = {{"vars", p.vars.size()},         {"atoms", p.psi.size()},
                {"xi_conjuncts", r.xi_conjuncts}, {"flat_atoms", r.atoms},
                {"cnf_vars", r.cnf_vars},         {"cnf_clauses", r.cnf_clauses}};
      times = {{"translate", r.times.translate_ms},
               {"decide", r.times.decide_ms},
               {"flatten", r.times.flatten_ms},
               {"lift", r.times.lift_ms}};
      if (sat) {
        counts["flat_rank"] = r.flat_rank;
        model_text = r.model.render(user_vars(p));
        model = model_json(r.model, user_vars(p));
        if (flags.trace) {
          std::ostringstream tr;
          for (std::size_t i = 0; i < r.steps.size(); ++i) {
            tr << path << ": lift step " << i + 1 << ": " << print(r.steps[i].atom) << " satisfies";
            for (const auto& l : r.steps[i].satisfied) tr << " [" << print(l) << "]";
            tr << '\n';
          }
          o.err += tr.str();
        }
      }
    }

    o.code = sat ? kExitSat : kExitUnsat;
    report["verdict"] = sat ? "sat" : "unsat";
    if (sat) report["model"] = model;
    report["times_ms"] = times;
    report["counts"] = counts;
    if (flags.json) {
      o.out = report.dump() + "\n";
    } else {
      o.out = std::string(sat ? "sat" : "unsat") + "\n" + model_text;
    }
  } catch (const std::exception& e) {
    o.code = kExitError;
    o.err += path + ": " + e.what() + "\n";
    if (flags.json) {
      report["verdict"] = "error";
      report["error"] = e.what();
      o.out = report.dump() + "\n";
    }
  }
  return o;
}

int run_solve(const std::vector<std::string>& files, const SolveFlags& flags) {
  if (!flags.dump_cnf.empty() && files.size() != 1) {
    std::cerr << "solve: --dump-cnf needs exactly one input file\n";
    return kExitUsage;
  }
  std::vector<FileOutcome> outcomes(files.size());
  const int n = static_cast<int>(files.size());
#pragma omp parallel for schedule(dynamic) num_threads(flags.jobs) if (flags.jobs > 1)
  for (int i = 0; i < n; ++i) outcomes[i] = solve_file(files[i], flags);

  bool error = false, any_sat = false, any_unsat = false;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& o = outcomes[i];
    if (files.size() > 1 && !flags.json && o.code != kExitError) std::cout << "== " << files[i] << '\n';
    std::cout << o.out;
    std::cerr << o.err;
    error = error || o.code == kExitError;
    any_sat = any_sat || o.code == kExitSat;
    any_unsat = any_unsat || o.code == kExitUnsat;
  }
  if (error) return kExitError;
  if (any_sat && any_unsat) return 0;
  return any_unsat ? kExitUnsat : kExitSat;
}

// ---------------------------------------------------------------------------
// translate, oracle, gen
// ---------------------------------------------------------------------------

int run_translate(const std::string& path, bool as_json) {
  const std::string text = read_file(path);
  auto parsed = parse(text);
  if (!std::holds_alternative<Problem>(parsed))
    throw Error("translate: input uses propositional connectives; expected a list of literals");
  const Problem& p = std::get<Problem>(parsed);
  XiFormula xi = translate(p);
  if (as_json) {
    json conj = json::array();
    for (const auto& c : xi.conjuncts) conj.push_back(print(c.formula));
    json report{{"schema", kSchema},
                {"command", "translate"},
                {"file", path},
                {"input_digest", fnv1a(text)},
                {"counts", {{"vars", p.vars.size()}, {"atoms", p.psi.size()}, {"xi_conjuncts", xi.size()}}},
                {"xi", conj}};
    std::cout << report.dump() << '\n';
  } else {
    std::cout << xi.print();
  }
  return 0;
}

int run_oracle(const std::string& path, int flat_k, int level) {
  const std::string text = read_file(path);
  auto parsed = parse(text);
  if (flat_k >= 0) {
    Formula f = std::holds_alternative<Formula>(parsed) ? std::get<Formula>(parsed)
                                                       : problem_as_formula(std::get<Problem>(parsed));
    oracle::FlatResult r = oracle::flat_sat(f, flat_k);
    std::cout << (r.sat() ? "sat" : "unsat") << '\n';
    if (r.sat()) {
      const AbstractModel& w = *r.witness;
      for (std::size_t v = 0; v < w.vars.size(); ++v) {
        std::cout << w.vars[v] << " = {";
        bool first = true;
        for (std::size_t e = 0; e < w.elements; ++e)
          if (w.member(e, v)) {
            std::cout << (first ? "" : ",") << e;
            first = false;
          }
        std::cout << "}\n";
      }
    }
    return r.sat() ? kExitSat : kExitUnsat;
  }
  if (!std::holds_alternative<Problem>(parsed))
    throw Error("oracle --level: input uses propositional connectives");
  const Problem& p = std::get<Problem>(parsed);
  oracle::NestedOracleResult r = oracle::nested_sat(p, level);
  std::cout << (r.sat() ? "sat" : "unsat") << '\n';
  if (r.sat()) std::cout << r.witness->render(oracle::source_vars(p));
  return r.sat() ? kExitSat : kExitUnsat;
}

int run_gen(std::uint64_t seed, const std::string& profile) {
  oracle::Profile pr = oracle::Profile::parse(profile);
  oracle::Generated g = oracle::generate(seed, pr);
  std::cout << "# seed " << seed << ", profile " << pr.str() << '\n';
  if (g.certificate) {
    for (const auto& [v, value] : g.certificate->values())
      std::cout << "# planted " << v << " = " << hf::to_string(value) << '\n';
  }
  for (const auto& l : g.problem.source) std::cout << print(l) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int run_check() {
  int failures = 0;
  auto line = [&failures](bool ok, const std::string& name, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
    if (!ok) ++failures;
  };

  hf::BoundReport bounds = hf::bound_checks(20);
  line(bounds.ok(), "bound_checks", "n = 1..20, violations " + std::to_string(bounds.violations.size()));

  const hf::LevelTable v4 = hf::enumerate_level(4);
  std::vector<hf::Triple> triples;
  for (auto x : v4.sets)
    for (auto y : v4.sets)
      for (auto z : v4.sets) triples.push_back({x, y, z});
  hf::AxiomReport ax = hf::check_axioms(triples);
  line(ax.ok(), "check_axioms", std::to_string(ax.checked) + " triples from V4, violations " +
                                    std::to_string(ax.violations.size()));

  oracle::DowngradeReport dg = oracle::membership_downgrade(4);
  line(dg.ok(), "membership_downgrade", std::to_string(dg.agreements) + "/" + std::to_string(dg.pairs));

  std::size_t agree = 0;
  const std::size_t flat_cases = 300;
  for (std::size_t s = 0; s < flat_cases; ++s) {
    Formula f = oracle::generate_flat(s, {3, 1 + s % 4, s % 2 == 1});
    agree += decide(f).sat() == oracle::flat_sat(f, 4).sat();
  }
  line(agree == flat_cases, "decide_vs_flat_oracle",
       std::to_string(agree) + "/" + std::to_string(flat_cases));

  std::size_t lifted = 0;
  const std::size_t planted_cases = 50;
  for (std::size_t s = 0; s < planted_cases; ++s) {
    oracle::Generated g = oracle::generate(s, {oracle::Profile::Kind::planted, 4, 3, 2});
    NestedResult r = solve_nested(g.problem, NestedOptions{{true, false}, {}});
    lifted += r.sat() && evaluate(r.model, g.problem);
  }
  line(lifted == planted_cases, "planted_lift",
       std::to_string(lifted) + "/" + std::to_string(planted_cases));

  std::size_t sized = 0;
  for (std::size_t s = 0; s < 50; ++s) {
    oracle::Generated g = oracle::generate(1000 + s, {oracle::Profile::Kind::random, 5, 4, 3});
    sized += translate(g.problem).size() == translate_size(g.problem.vars.size(), g.problem.psi.size());
  }
  line(sized == 50, "translate_size", std::to_string(sized) + "/50");

  return failures == 0 ? 0 : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bstkit: satisfiability of set constraints with difference and singletons"};
  app.require_subcommand(1);

  std::string file;
  bool json_out = false;
  auto* translate_cmd = app.add_subcommand("translate", "Print the flat translation of a problem");
  translate_cmd->add_option("FILE", file, "Problem file")->required();
  translate_cmd->add_flag("--json", json_out, "Emit a JSON report");

  std::vector<std::string> files;
  SolveFlags flags;
  auto* solve_cmd = app.add_subcommand("solve", "Decide problems and print a model when satisfiable");
  solve_cmd->add_option("FILE", files, "Problem or formula files")->required();
  solve_cmd->add_flag("--flat", flags.flat, "Treat the input as a flat formula");
  solve_cmd->add_option("--dump-cnf", flags.dump_cnf, "Write the CNF in DIMACS format");
  solve_cmd->add_flag("--trace", flags.trace, "Print lifting steps to stderr");
  solve_cmd->add_flag("--json", flags.json, "Emit one JSON report per file");
  solve_cmd->add_flag("--activity", flags.activity, "Use activity-based branching with restarts");
  solve_cmd->add_option("--jobs", flags.jobs, "Files solved in parallel")->check(CLI::PositiveNumber);

  int flat_k = -1, level = -1;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force satisfiability");
  oracle_cmd->add_option("FILE", file, "Input file")->required();
  auto* k_opt = oracle_cmd->add_option("--flat-k", flat_k, "Universe size for a flat formula")
                    ->check(CLI::Range(0, 24));
  auto* l_opt = oracle_cmd->add_option("--level", level, "Von Neumann level for a problem")
                    ->check(CLI::Range(1, 4));
  k_opt->excludes(l_opt);

  std::uint64_t seed = 0;
  std::string profile = "planted";
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random problem");
  gen_cmd->add_option("--seed", seed, "Random seed")->required();
  gen_cmd->add_option("--profile", profile, "planted | random | empty [:VARS:DIFF:SINGLETONS]");

  auto* check_cmd = app.add_subcommand("check", "Run the built-in self checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*oracle_cmd && flat_k < 0 && level < 0) {
    std::cerr << "oracle: one of --flat-k or --level is required\n";
    return kExitUsage;
  }

  try {
    if (*translate_cmd) return run_translate(file, json_out);
    if (*solve_cmd) return run_solve(files, flags);
    if (*oracle_cmd) return run_oracle(file, flat_k, level);
    if (*gen_cmd) return run_gen(seed, profile);
    if (*check_cmd) return run_check();
  } catch (const std::exception& e) {
    std::cerr << "bstkit: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}
