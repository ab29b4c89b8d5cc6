#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bstkit/sat.hpp"
#include "bstkit/syntax.hpp"

namespace bstkit {

/// Finite Boolean model: `elements` rows by `vars` columns of membership
/// bits. Inactive elements have empty rows.
struct AbstractModel {
  std::vector<std::string> vars;
  std::size_t elements = 0;
  std::vector<std::uint8_t> membership;  // row-major, elements x vars
  std::vector<bool> active;

  bool member(std::size_t e, std::size_t v) const { return membership[e * vars.size() + v] != 0; }
  void set_member(std::size_t e, std::size_t v, bool b) {
    membership[e * vars.size() + v] = b ? 1 : 0;
  }
  /// Column of `name`; throws MissingVariable when absent.
  std::size_t column(const std::string& name) const;

  static AbstractModel blank(std::vector<std::string> vars, std::size_t elements);
};

/// Truth of a flat formula under per-element semantics: a positive literal
/// holds when every active element satisfies its row condition.
bool evaluate(const AbstractModel& m, const Formula& f);

/// CNF encoding of a flat formula with a witness-bounded element universe.
///
/// One element is reserved per distinct positive atom A (with indicator b_A):
///   b_A      -> every element satisfies A's row condition
///   not b_A  -> A's reserved element is active and violates it
/// The propositional skeleton is clausified directly where it is already
/// clausal and Tseitin-encoded elsewhere.
struct Encoding {
  sat::CnfInstance cnf;
  std::vector<std::string> vars;
  std::vector<Literal> atoms;  // distinct positive atoms, first-occurrence order
  std::vector<int> atom_var;   // CNF variable of b_A
  std::size_t elements = 0;
  std::vector<int> active_var;

  int member_var(std::size_t e, std::size_t v) const {
    return member_base_ + static_cast<int>(e * vars.size() + v);
  }

 private:
  friend Encoding encode(const Formula&, const std::vector<std::string>&);
  int member_base_ = 1;
};

/// Throws PreconditionError if `f` contains a Singleton atom. Columns are
/// `extra_vars` followed by the remaining variables of `f`.
Encoding encode(const Formula& f, const std::vector<std::string>& extra_vars = {});

AbstractModel decode(const Encoding& enc, const sat::SolveResult& res);

struct DecideOptions {
  std::vector<std::string> vars;  // columns to include even if unused by f
  sat::SolverOptions solver;
};

struct DecideResult {
  sat::Status status = sat::Status::Unsat;
  AbstractModel model;  // valid when status == Sat
  std::size_t atoms = 0;
  std::size_t cnf_vars = 0;
  std::size_t cnf_clauses = 0;
  sat::SolveStats stats;

  bool sat() const { return status == sat::Status::Sat; }
};

/// Decides a flat formula. On SAT the decoded model is re-evaluated against
/// `f`; a mismatch throws Error.
DecideResult decide(const Formula& f, const DecideOptions& options = {});

}  // namespace bstkit
