#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace bstkit::sat {

/// CNF over variables 1..num_vars; literals use the DIMACS sign convention.
struct CnfInstance {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  int new_var() { return ++num_vars; }
  void add(std::vector<int> clause) { clauses.push_back(std::move(clause)); }
  void add(std::initializer_list<int> clause) { clauses.emplace_back(clause); }

  std::string to_dimacs() const;
};

CnfInstance parse_dimacs(std::string_view text);

enum class Status : std::uint8_t { Sat, Unsat };

struct SolverOptions {
  /// VSIDS branching with phase saving and Luby restarts. Off by default:
  /// branching then takes the lowest unassigned variable, false first.
  bool activity = false;
};

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t learned = 0;
};

struct SolveResult {
  Status status = Status::Unsat;
  /// model[v] for v in 1..num_vars; model[0] is unused.
  std::vector<bool> model;
  SolveStats stats;

  bool sat() const { return status == Status::Sat; }
  bool value(int lit) const { return lit > 0 ? model[lit] : !model[-lit]; }
};

/// Conflict-driven clause learning with two watched literals, first-UIP
/// learning and non-chronological backjumping.
SolveResult solve(const CnfInstance& cnf, SolverOptions options = {});

/// True when `model` satisfies every clause of `cnf`.
bool satisfies(const CnfInstance& cnf, const std::vector<bool>& model);

/// Pigeonhole principle: `pigeons` pigeons into `holes` holes.
CnfInstance pigeonhole(int pigeons, int holes);

}  // namespace bstkit::sat
