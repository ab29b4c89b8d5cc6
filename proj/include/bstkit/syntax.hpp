#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bstkit {

// ---------------------------------------------------------------------------
// Variables
// ---------------------------------------------------------------------------

/// User variables are plain identifiers. Auxiliary (tilde) variables carry a
/// leading '~' and desugaring-fresh variables a leading '_'; neither prefix is
/// admitted by the identifier grammar of problem files.
enum class VarKind : std::uint8_t { user, auxiliary, fresh };

struct Var {
  std::string name;
  VarKind kind = VarKind::user;

  friend bool operator==(const Var&, const Var&) = default;
};

VarKind kind_of(std::string_view name);
Var make_var(std::string name);

/// Name of the auxiliary variable paired with `name`.
std::string tilde_name(std::string_view name);
bool is_tilde(std::string_view name);

// ---------------------------------------------------------------------------
// Literals
// ---------------------------------------------------------------------------

enum class Rel : std::uint8_t {
  DiffEq,       // x = y \ z
  DiffNeq,      // x != y \ z
  Singleton,    // x = {y}
  Empty,        // x = 0
  NotEmpty,     // x != 0
  Subseteq,     // x sub y
  NotSubseteq,  // x nsub y
  InterEq,      // x = y & z
  InterNeq,     // x != y & z
  UnionEq,      // x = y | z
  UnionNeq,     // x != y | z
  Disj,         // disj(x,y)
  NotDisj,      // ndisj(x,y)
  StrictSub,    // x ssub y
  VarEq,        // x = y
  VarNeq,       // x != y
};

int arity(Rel rel);
bool is_derived(Rel rel);
std::string_view rel_name(Rel rel);

/// A literal over one to three variables. Unused argument slots are empty.
struct Literal {
  Rel rel = Rel::DiffEq;
  std::array<std::string, 3> args;

  static Literal make(Rel rel, std::string x, std::string y = {}, std::string z = {});

  const std::string& x() const { return args[0]; }
  const std::string& y() const { return args[1]; }
  const std::string& z() const { return args[2]; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

/// Propositional tree over literals. And/Or are n-ary; an And with no
/// children is the empty conjunction (true).
struct Formula {
  enum class Op : std::uint8_t { Atom, Not, And, Or, Implies, Iff };

  Op op = Op::And;
  Literal atom;
  std::vector<Formula> kids;

  static Formula lit(Literal l);
  static Formula negate(Formula f);
  static Formula all(std::vector<Formula> fs);
  static Formula any(std::vector<Formula> fs);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);

  bool is_atom() const { return op == Op::Atom; }

  friend bool operator==(const Formula&, const Formula&) = default;
};

/// Appends every variable of `f` to `out` in first-occurrence order.
void collect_vars(const Formula& f, std::vector<std::string>& out);
bool contains_singleton(const Formula& f);

/// Evaluates the propositional structure of `f`, delegating literals to
/// `atom(const Literal&) -> bool`.
template <class AtomFn>
bool eval_formula(const Formula& f, AtomFn&& atom) {
  switch (f.op) {
    case Formula::Op::Atom:
      return atom(f.atom);
    case Formula::Op::Not:
      return !eval_formula(f.kids[0], atom);
    case Formula::Op::And:
      for (const auto& k : f.kids)
        if (!eval_formula(k, atom)) return false;
      return true;
    case Formula::Op::Or:
      for (const auto& k : f.kids)
        if (eval_formula(k, atom)) return true;
      return false;
    case Formula::Op::Implies:
      return !eval_formula(f.kids[0], atom) || eval_formula(f.kids[1], atom);
    case Formula::Op::Iff:
      return eval_formula(f.kids[0], atom) == eval_formula(f.kids[1], atom);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Per-element view of flat literals
// ---------------------------------------------------------------------------
//
// Every flat literal other than StrictSub is either a universally quantified
// per-element condition ("every element e satisfies P(e)") or its negation.
// StrictSub(x,y) is Subseteq(x,y) and not Subseteq(y,x).

struct AtomForm {
  Rel positive;
  bool negated;
};

/// Positive per-element relation behind `rel`. Throws for Singleton and
/// StrictSub, which have no single per-element form.
AtomForm atom_form(Rel rel);

/// P(e) for a positive relation, given e's membership in the literal's
/// first, second and third argument.
bool row_holds(Rel positive, bool x, bool y, bool z);

// ---------------------------------------------------------------------------
// Problems: a BST conjunction phi together with singleton atoms psi
// ---------------------------------------------------------------------------

struct Problem {
  /// Literals in input order, with duplicate singleton atoms removed.
  std::vector<Literal> source;
  /// Core conjunction: DiffEq/DiffNeq only, derived literals expanded.
  std::vector<Literal> phi;
  /// Singleton atoms x = {y}, deduplicated, in input order.
  std::vector<Literal> psi;
  /// Vars(phi & psi) in first-occurrence order; fresh variables follow the
  /// user variables of the literal that introduced them.
  std::vector<Var> vars;

  static Problem from_literals(const std::vector<Literal>& literals);

  std::size_t var_count() const { return vars.size(); }
  std::vector<std::string> var_names() const;

  friend bool operator==(const Problem&, const Problem&) = default;
};

/// Issues `_d1`, `_d2`, ... for one problem.
class FreshSupply {
 public:
  std::string next();
  int issued() const { return next_ - 1; }

 private:
  int next_ = 1;
};

/// Expands a derived literal into core DiffEq/DiffNeq literals. The result,
/// existentially closed over the fresh variables it introduces, is equivalent
/// to `lit`. Core literals are returned unchanged.
std::vector<Literal> desugar(const Literal& lit, FreshSupply& fresh);

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// Problem when the text is a plain list of literals, Formula when it uses
/// propositional connectives.
std::variant<Problem, Formula> parse(std::string_view text);

/// Parses a list of literals. Reserved (~, _) names are rejected.
Problem parse_problem(std::string_view text);

/// Parses a BST+ formula; top-level items are conjoined. Reserved names are
/// accepted so that translator output can be read back.
Formula parse_formula(std::string_view text);

std::string print(const Literal& lit);
std::string print(const Formula& f);
std::string print(const Problem& p);

}  // namespace bstkit
