#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bstkit/decide.hpp"
#include "bstkit/models.hpp"
#include "bstkit/sat.hpp"
#include "bstkit/syntax.hpp"

// Brute-force ground truth. Everything here enumerates; nothing prunes.
namespace bstkit::oracle {

/// Largest number of assignments either search will visit.
inline constexpr std::uint64_t kBudget = std::uint64_t{1} << 24;

// ---------------------------------------------------------------------------
// Flat formulas over a k-element universe
// ---------------------------------------------------------------------------

struct FlatResult {
  sat::Status status = sat::Status::Unsat;
  /// First satisfying assignment in enumeration order: k active elements.
  std::optional<AbstractModel> witness;
  std::uint64_t assignments = 0;  // size of the search space

  bool sat() const { return status == sat::Status::Sat; }
};

/// Every variable of `f` ranges over the subsets of {0..k-1}. Throws
/// BudgetExceeded when (2^k)^n > kBudget and PreconditionError on a
/// Singleton atom. The OpenMP and serial versions return identical results.
FlatResult flat_sat(const Formula& f, int k);
FlatResult flat_sat_serial(const Formula& f, int k);

// ---------------------------------------------------------------------------
// Problems over a von Neumann level
// ---------------------------------------------------------------------------

struct NestedOracleResult {
  sat::Status status = sat::Status::Unsat;
  std::optional<SetAssignment> witness;  // over the source variables
  std::uint64_t assignments = 0;

  bool sat() const { return status == sat::Status::Sat; }
};

/// Every source variable of `p` ranges over V_level (1 <= level <= 4) and the
/// source literals are read directly. Throws BudgetExceeded when
/// |V_level|^n > kBudget. UNSAT here only rules out models inside V_level.
NestedOracleResult nested_sat(const Problem& p, int level);
NestedOracleResult nested_sat_serial(const Problem& p, int level);

/// Source variables of `p` in first-occurrence order (no fresh names).
std::vector<std::string> source_vars(const Problem& p);

struct DowngradeReport {
  std::uint64_t pairs = 0;
  std::uint64_t agreements = 0;
  bool ok() const { return pairs == agreements; }
};

/// For all (Mx, My) in V_level^2: Mx in My iff some Mz in V_level has
/// Mz = {Mx} and Mz a subset of My.
DowngradeReport membership_downgrade(int level);

// ---------------------------------------------------------------------------
// Instance generators
// ---------------------------------------------------------------------------

struct Profile {
  enum class Kind { planted, random, empty };
  Kind kind = Kind::planted;
  std::size_t vars = 3;
  std::size_t diff = 2;
  std::size_t singletons = 1;

  /// "planted", "random", "empty", optionally followed by ":VARS:DIFF:SINGLETONS".
  static Profile parse(std::string_view text);
  std::string str() const;
};

struct Generated {
  Problem problem;
  /// Model the planted profile built before emitting literals.
  std::optional<SetAssignment> certificate;
};

/// Variables are v0, v1, ... Planted values are drawn from V4, singleton
/// right-hand sides from V3, and no right-hand side is itself a singleton
/// left-hand side, so the certificate lies in V4. Identical seeds give identical output.
Generated generate(std::uint64_t seed, const Profile& profile);

struct FlatProfile {
  std::size_t vars = 3;
  std::size_t atoms = 3;
  /// false: conjunctions of literals; true: random connectives on top.
  bool connectives = false;
};

/// Random formula over derived and core flat literals (no singletons).
Formula generate_flat(std::uint64_t seed, const FlatProfile& profile);

/// Every literal with kind DiffEq or DiffNeq over `vars` (|vars|^3 * 2).
std::vector<Literal> all_diff_literals(const std::vector<std::string>& vars);

}  // namespace bstkit::oracle
