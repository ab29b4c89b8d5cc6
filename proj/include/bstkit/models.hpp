#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bstkit/decide.hpp"
#include "bstkit/error.hpp"
#include "bstkit/hf.hpp"
#include "bstkit/syntax.hpp"
#include "bstkit/translate.hpp"

namespace bstkit {

// ---------------------------------------------------------------------------
// Set assignments and evaluation
// ---------------------------------------------------------------------------

class SetAssignment {
 public:
  void set(const std::string& var, hf::HFSet value) { values_[var] = value; }
  hf::HFSet at(const std::string& var) const;
  bool has(const std::string& var) const { return values_.count(var) != 0; }
  std::size_t size() const { return values_.size(); }
  const std::map<std::string, hf::HFSet>& values() const { return values_; }

  /// Copy keeping only `vars` (each must be assigned).
  SetAssignment restricted(const std::vector<std::string>& vars) const;
  /// Names in the domain that are not tilde variables, sorted.
  std::vector<std::string> base_vars() const;

  /// `var = {...}` lines in the order of `vars`.
  std::string render(const std::vector<std::string>& vars) const;

  friend bool operator==(const SetAssignment&, const SetAssignment&) = default;

 private:
  std::map<std::string, hf::HFSet> values_;
};

bool evaluate(const SetAssignment& m, const Literal& lit);
bool evaluate(const SetAssignment& m, const Formula& f);
/// The input literals of `p`, derived literals read directly.
bool evaluate(const SetAssignment& m, const Problem& p);
/// phi & psi with derived literals expanded; needs the fresh variables too.
bool evaluate_core(const SetAssignment& m, const Problem& p);

/// Every member of every value has rank exactly `flat_rank`.
bool is_flat(const SetAssignment& m, int flat_rank);

// ---------------------------------------------------------------------------
// Flat models
// ---------------------------------------------------------------------------

struct FlatParams {
  int flat_rank = 1;
  /// Realized nonempty signature -> its rank-flat_rank representative.
  std::map<std::vector<bool>, hf::HFSet> region_index;
};

struct FlatModel {
  SetAssignment assignment;
  FlatParams params;
};

/// Contracts every realized region of `a` (restricted to `vars`) to one set
/// of rank `flat_rank`. Requires flat_rank >= vars.size() + 1.
FlatModel flatten(const AbstractModel& a, const std::vector<std::string>& vars, int flat_rank);

/// Nonempty signatures of `m` over `vars`: the variable subsets W whose
/// region (inside all of W, outside the rest) is inhabited.
std::vector<std::vector<bool>> realized_regions(const SetAssignment& m,
                                                const std::vector<std::string>& vars);
std::vector<std::vector<bool>> realized_regions(const AbstractModel& a,
                                                const std::vector<std::string>& vars);

// ---------------------------------------------------------------------------
// Ordering of singleton atoms
// ---------------------------------------------------------------------------

class CycleDetected : public Error {
 public:
  explicit CycleDetected(std::vector<Literal> cycle);
  const std::vector<Literal>& cycle() const { return cycle_; }

 private:
  std::vector<Literal> cycle_;
};

/// Edge atoms[i] -> atoms[j] when M(x_i) meets M(y_j); `topo` lists atom
/// indices so that every edge goes forward, ties broken by input order.
struct AtomOrder {
  std::vector<Literal> atoms;
  std::vector<std::vector<bool>> edge;
  std::vector<std::vector<bool>> closure;
  std::vector<std::size_t> topo;

  bool precedes(std::size_t i, std::size_t j) const { return closure[i][j]; }
};

/// Throws CycleDetected when the transitive closure is reflexive.
AtomOrder order(const std::vector<Literal>& psi, const SetAssignment& m);

// ---------------------------------------------------------------------------
// The transformation M -> M_{x,y}
// ---------------------------------------------------------------------------

class TransformPrecondition : public PreconditionError {
 public:
  explicit TransformPrecondition(std::string var);
  const std::string& var() const { return var_; }

 private:
  std::string var_;
};

/// For every non-tilde variable v: keeps Mv when Mv and Mx are disjoint,
/// otherwise replaces Mv's part inside Mx by the single element My. Tilde
/// variables are copied. Throws TransformPrecondition naming a non-tilde v
/// with My in Mv.
SetAssignment transform(const SetAssignment& m, const std::string& x, const std::string& y);

// ---------------------------------------------------------------------------
// Lifting and extension
// ---------------------------------------------------------------------------

class LiftInvariantBroken : public Error {
 public:
  using Error::Error;
};

struct LiftStep {
  Literal atom;                       // the minimal atom processed
  std::vector<Literal> satisfied;     // atoms whose left-hand value changed
  SetAssignment after;
};

struct LiftOptions {
  /// Per-iteration proof obligations (rank window, inclusion shape, model of
  /// phi & Xi, stability of the order). Off unless requested or the
  /// environment variable BSTKIT_DEBUG_ASSERTS=1 is set.
  bool debug_asserts = false;
  bool keep_steps = false;
};

struct LiftResult {
  SetAssignment model;  // over Vars(phi & psi)
  std::vector<LiftStep> steps;
};

/// Turns a flat model of phi & Xi into a model of phi & psi by processing
/// psi's atoms in an order compatible with order(psi, m0).
LiftResult lift(const Problem& p, const SetAssignment& m0, const FlatParams& params,
                LiftOptions options = {});

/// Extends a model of phi & psi to the tilde variables:
/// M~v = { Mu : u below v in the transitive closure of membership }.
/// The result is checked against the translation.
SetAssignment extend(const SetAssignment& m, const Problem& p);

// ---------------------------------------------------------------------------
// End-to-end
// ---------------------------------------------------------------------------

struct NestedOptions {
  LiftOptions lift;
  sat::SolverOptions solver;
};

struct StageTimes {
  double translate_ms = 0;
  double decide_ms = 0;
  double flatten_ms = 0;
  double lift_ms = 0;
};

struct NestedResult {
  sat::Status status = sat::Status::Unsat;
  SetAssignment model;  // over Vars(phi & psi) when SAT
  std::size_t xi_conjuncts = 0;
  std::size_t atoms = 0;
  std::size_t cnf_vars = 0;
  std::size_t cnf_clauses = 0;
  int flat_rank = 0;
  std::vector<LiftStep> steps;
  StageTimes times;

  bool sat() const { return status == sat::Status::Sat; }
};

/// Flat rank used by solve_nested: |Vars(phi & Xi)| + |psi| + 2.
int pipeline_flat_rank(const Problem& p);

/// translate -> decide -> flatten -> lift, the final model re-verified.
NestedResult solve_nested(const Problem& p, const NestedOptions& options = {});

bool debug_asserts_from_env();

}  // namespace bstkit
