#include "bstkit/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <utility>

#include "bstkit/error.hpp"

namespace bstkit {

VarKind kind_of(std::string_view name) {
  if (!name.empty() && name.front() == '~') return VarKind::auxiliary;
  if (!name.empty() && name.front() == '_') return VarKind::fresh;
  return VarKind::user;
}

Var make_var(std::string name) {
  VarKind kind = kind_of(name);
  return Var{std::move(name), kind};
}

std::string tilde_name(std::string_view name) { return "~" + std::string(name); }

bool is_tilde(std::string_view name) { return kind_of(name) == VarKind::auxiliary; }

int arity(Rel rel) {
  switch (rel) {
    case Rel::Empty:
    case Rel::NotEmpty:
      return 1;
    case Rel::Singleton:
    case Rel::Subseteq:
    case Rel::NotSubseteq:
    case Rel::Disj:
    case Rel::NotDisj:
    case Rel::StrictSub:
    case Rel::VarEq:
    case Rel::VarNeq:
      return 2;
    default:
      return 3;
  }
}

bool is_derived(Rel rel) {
  return rel != Rel::DiffEq && rel != Rel::DiffNeq && rel != Rel::Singleton;
}

std::string_view rel_name(Rel rel) {
  switch (rel) {
    case Rel::DiffEq: return "DiffEq";
    case Rel::DiffNeq: return "DiffNeq";
    case Rel::Singleton: return "Singleton";
    case Rel::Empty: return "Empty";
    case Rel::NotEmpty: return "NotEmpty";
    case Rel::Subseteq: return "Subseteq";
    case Rel::NotSubseteq: return "NotSubseteq";
    case Rel::InterEq: return "InterEq";
    case Rel::InterNeq: return "InterNeq";
    case Rel::UnionEq: return "UnionEq";
    case Rel::UnionNeq: return "UnionNeq";
    case Rel::Disj: return "Disj";
    case Rel::NotDisj: return "NotDisj";
    case Rel::StrictSub: return "StrictSub";
    case Rel::VarEq: return "VarEq";
    case Rel::VarNeq: return "VarNeq";
  }
  return "?";
}

Literal Literal::make(Rel rel, std::string x, std::string y, std::string z) {
  Literal l;
  l.rel = rel;
  l.args = {std::move(x), std::move(y), std::move(z)};
  return l;
}

// ---------------------------------------------------------------------------

Formula Formula::lit(Literal l) {
  Formula f;
  f.op = Op::Atom;
  f.atom = std::move(l);
  return f;
}

Formula Formula::negate(Formula g) {
  Formula f;
  f.op = Op::Not;
  f.kids.push_back(std::move(g));
  return f;
}

Formula Formula::all(std::vector<Formula> fs) {
  if (fs.size() == 1) return std::move(fs.front());
  Formula f;
  f.op = Op::And;
  f.kids = std::move(fs);
  return f;
}

Formula Formula::any(std::vector<Formula> fs) {
  if (fs.size() == 1) return std::move(fs.front());
  Formula f;
  f.op = Op::Or;
  f.kids = std::move(fs);
  return f;
}

Formula Formula::implies(Formula a, Formula b) {
  Formula f;
  f.op = Op::Implies;
  f.kids.push_back(std::move(a));
  f.kids.push_back(std::move(b));
  return f;
}

Formula Formula::iff(Formula a, Formula b) {
  Formula f;
  f.op = Op::Iff;
  f.kids.push_back(std::move(a));
  f.kids.push_back(std::move(b));
  return f;
}

namespace {

void add_unique(std::vector<std::string>& out, const std::string& name) {
  if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
}

}  // namespace

void collect_vars(const Formula& f, std::vector<std::string>& out) {
  if (f.is_atom()) {
    for (int i = 0; i < arity(f.atom.rel); ++i) add_unique(out, f.atom.args[i]);
    return;
  }
  for (const auto& k : f.kids) collect_vars(k, out);
}

bool contains_singleton(const Formula& f) {
  if (f.is_atom()) return f.atom.rel == Rel::Singleton;
  return std::any_of(f.kids.begin(), f.kids.end(), contains_singleton);
}

AtomForm atom_form(Rel rel) {
  switch (rel) {
    case Rel::DiffEq: return {Rel::DiffEq, false};
    case Rel::DiffNeq: return {Rel::DiffEq, true};
    case Rel::Empty: return {Rel::Empty, false};
    case Rel::NotEmpty: return {Rel::Empty, true};
    case Rel::Subseteq: return {Rel::Subseteq, false};
    case Rel::NotSubseteq: return {Rel::Subseteq, true};
    case Rel::InterEq: return {Rel::InterEq, false};
    case Rel::InterNeq: return {Rel::InterEq, true};
    case Rel::UnionEq: return {Rel::UnionEq, false};
    case Rel::UnionNeq: return {Rel::UnionEq, true};
    case Rel::Disj: return {Rel::Disj, false};
    case Rel::NotDisj: return {Rel::Disj, true};
    case Rel::VarEq: return {Rel::VarEq, false};
    case Rel::VarNeq: return {Rel::VarEq, true};
    case Rel::Singleton:
    case Rel::StrictSub:
      break;
  }
  throw PreconditionError(std::string("no per-element form for ") + std::string(rel_name(rel)));
}

bool row_holds(Rel positive, bool x, bool y, bool z) {
  switch (positive) {
    case Rel::DiffEq: return x == (y && !z);
    case Rel::Empty: return !x;
    case Rel::Subseteq: return !x || y;
    case Rel::InterEq: return x == (y && z);
    case Rel::UnionEq: return x == (y || z);
    case Rel::Disj: return !(x && y);
    case Rel::VarEq: return x == y;
    default: break;
  }
  throw PreconditionError(std::string("not a positive per-element relation: ") +
                          std::string(rel_name(positive)));
}

// ---------------------------------------------------------------------------
// Desugaring
// ---------------------------------------------------------------------------

std::string FreshSupply::next() { return "_d" + std::to_string(next_++); }

namespace {

Literal diff(const std::string& x, const std::string& y, const std::string& z) {
  return Literal::make(Rel::DiffEq, x, y, z);
}

Literal ndiff(const std::string& x, const std::string& y, const std::string& z) {
  return Literal::make(Rel::DiffNeq, x, y, z);
}

// x = y | z as: e = 0, y \ x = e, z \ x = e, (x \ y) \ z = e. Returns e.
std::string expand_union(const std::string& x, const std::string& y, const std::string& z,
                         FreshSupply& fresh, std::vector<Literal>& out) {
  std::string e = fresh.next();
  std::string d = fresh.next();
  out.push_back(diff(e, e, e));
  out.push_back(diff(e, y, x));
  out.push_back(diff(e, z, x));
  out.push_back(diff(d, x, y));
  out.push_back(diff(e, d, z));
  return e;
}

}  // namespace

std::vector<Literal> desugar(const Literal& lit, FreshSupply& fresh) {
  const auto& [x, y, z] = lit.args;
  std::vector<Literal> out;
  switch (lit.rel) {
    case Rel::DiffEq:
    case Rel::DiffNeq:
    case Rel::Singleton:
      out.push_back(lit);
      break;
    case Rel::Empty:
      out.push_back(diff(x, x, x));
      break;
    case Rel::NotEmpty:
      out.push_back(ndiff(x, x, x));
      break;
    case Rel::Subseteq: {
      std::string d = fresh.next();
      out.push_back(diff(d, x, y));
      out.push_back(diff(d, d, d));
      break;
    }
    case Rel::NotSubseteq: {
      std::string d = fresh.next();
      out.push_back(diff(d, x, y));
      out.push_back(ndiff(d, d, d));
      break;
    }
    case Rel::InterEq: {
      std::string d = fresh.next();
      out.push_back(diff(d, y, z));
      out.push_back(diff(x, y, d));
      break;
    }
    case Rel::InterNeq: {
      std::string d = fresh.next();
      out.push_back(diff(d, y, z));
      out.push_back(ndiff(x, y, d));
      break;
    }
    case Rel::UnionEq:
      expand_union(x, y, z, fresh, out);
      break;
    case Rel::UnionNeq: {
      std::string u = fresh.next();
      std::string e = expand_union(u, y, z, fresh, out);
      out.push_back(ndiff(x, u, e));
      break;
    }
    case Rel::Disj:
    case Rel::NotDisj: {
      std::string d = fresh.next();
      std::string e = fresh.next();
      out.push_back(diff(d, x, y));
      out.push_back(diff(e, x, d));
      out.push_back(lit.rel == Rel::Disj ? diff(e, e, e) : ndiff(e, e, e));
      break;
    }
    case Rel::StrictSub: {
      auto a = desugar(Literal::make(Rel::Subseteq, x, y), fresh);
      auto b = desugar(Literal::make(Rel::NotSubseteq, y, x), fresh);
      out.insert(out.end(), a.begin(), a.end());
      out.insert(out.end(), b.begin(), b.end());
      break;
    }
    case Rel::VarEq:
    case Rel::VarNeq: {
      std::string e = fresh.next();
      out.push_back(lit.rel == Rel::VarEq ? diff(x, y, e) : ndiff(x, y, e));
      out.push_back(diff(e, e, e));
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Problems
// ---------------------------------------------------------------------------

Problem Problem::from_literals(const std::vector<Literal>& literals) {
  Problem p;
  FreshSupply fresh;
  std::vector<std::string> names;
  for (const auto& lit : literals) {
    if (lit.rel == Rel::Singleton) {
      if (std::find(p.psi.begin(), p.psi.end(), lit) != p.psi.end()) continue;
      p.psi.push_back(lit);
    }
    p.source.push_back(lit);
    for (int i = 0; i < arity(lit.rel); ++i) add_unique(names, lit.args[i]);
    if (lit.rel == Rel::Singleton) continue;
    for (auto& core : desugar(lit, fresh)) {
      for (const auto& a : core.args) add_unique(names, a);
      p.phi.push_back(std::move(core));
    }
  }
  p.vars.reserve(names.size());
  for (auto& n : names) p.vars.push_back(make_var(std::move(n)));
  return p;
}

std::vector<std::string> Problem::var_names() const {
  std::vector<std::string> out;
  out.reserve(vars.size());
  for (const auto& v : vars) out.push_back(v.name);
  return out;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok : std::uint8_t {
  Ident, Eq, Neq, Backslash, LBrace, RBrace, Amp, Pipe, LParen, RParen, Comma,
  Sep, Arrow, DArrow, Zero, Sub, Nsub, Ssub, DisjKw, NdisjKw, And, Or, Not, End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  int depth = 0;
  auto push = [&](Tok k, std::string text, std::size_t len) {
    out.push_back({k, std::move(text), line, col});
    i += len;
    col += len;
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      if (depth == 0) out.push_back({Tok::Sep, "\n", line, col});
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    std::string_view rest = s.substr(i);
    if (rest.starts_with("<->")) { push(Tok::DArrow, "<->", 3); continue; }
    if (rest.starts_with("->")) { push(Tok::Arrow, "->", 2); continue; }
    if (rest.starts_with("!=")) { push(Tok::Neq, "!=", 2); continue; }
    switch (c) {
      case '=': push(Tok::Eq, "=", 1); continue;
      case '\\': push(Tok::Backslash, "\\", 1); continue;
      case '{': push(Tok::LBrace, "{", 1); continue;
      case '}': push(Tok::RBrace, "}", 1); continue;
      case '&': push(Tok::Amp, "&", 1); continue;
      case '|': push(Tok::Pipe, "|", 1); continue;
      case ',': push(Tok::Comma, ",", 1); continue;
      case ';': push(Tok::Sep, ";", 1); continue;
      case '(': ++depth; push(Tok::LParen, "(", 1); continue;
      case ')': depth = std::max(0, depth - 1); push(Tok::RParen, ")", 1); continue;
      default: break;
    }
    if (c == '0' && (i + 1 >= s.size() || !ident_char(s[i + 1]))) {
      push(Tok::Zero, "0", 1);
      continue;
    }
    bool reserved = (c == '~' || c == '_');
    if (std::isalpha(static_cast<unsigned char>(c)) || reserved) {
      std::size_t j = i + 1;
      if (c == '~' && j < s.size() && s[j] == '_') ++j;
      while (j < s.size() && ident_char(s[j])) ++j;
      std::string word(s.substr(i, j - i));
      if (word == "~" || word == "_" || word == "~_")
        throw ParseError(line, col, "malformed identifier '" + word + "'");
      Tok k = Tok::Ident;
      if (word == "sub") k = Tok::Sub;
      else if (word == "nsub") k = Tok::Nsub;
      else if (word == "ssub") k = Tok::Ssub;
      else if (word == "disj") k = Tok::DisjKw;
      else if (word == "ndisj") k = Tok::NdisjKw;
      else if (word == "and") k = Tok::And;
      else if (word == "or") k = Tok::Or;
      else if (word == "not") k = Tok::Not;
      push(k, word, word.size());
      continue;
    }
    throw ParseError(line, col, std::string("unknown operator '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Item {
  Formula formula;
  bool bare = true;  // a single literal, no connective or parentheses
  std::size_t line = 0;
  std::size_t col = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<Item> items() {
    std::vector<Item> out;
    while (true) {
      while (at(Tok::Sep)) ++pos_;
      if (at(Tok::End)) break;
      Item it;
      it.line = peek().line;
      it.col = peek().col;
      bare_ = true;
      it.formula = iff();
      it.bare = bare_;
      if (!at(Tok::Sep) && !at(Tok::End)) fail("expected ';' or end of line");
      out.push_back(std::move(it));
    }
    return out;
  }

  bool saw_reserved() const { return saw_reserved_; }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return toks_[pos_].kind == k; }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : t.kind == Tok::Sep ? "end of item" : "'" + t.text + "'";
    throw ParseError(t.line, t.col, what + ", found " + found);
  }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return toks_[pos_++];
  }

  std::string ident() {
    const Token& t = expect(Tok::Ident, "identifier");
    if (kind_of(t.text) != VarKind::user) saw_reserved_ = true;
    return t.text;
  }

  Formula iff() {
    Formula lhs = imp();
    while (at(Tok::DArrow)) {
      ++pos_;
      bare_ = false;
      lhs = Formula::iff(std::move(lhs), imp());
    }
    return lhs;
  }

  Formula imp() {
    Formula lhs = disjunction();
    if (at(Tok::Arrow)) {
      ++pos_;
      bare_ = false;
      return Formula::implies(std::move(lhs), imp());
    }
    return lhs;
  }

  Formula disjunction() {
    std::vector<Formula> fs;
    fs.push_back(conjunction());
    while (at(Tok::Or)) {
      ++pos_;
      bare_ = false;
      fs.push_back(conjunction());
    }
    return Formula::any(std::move(fs));
  }

  Formula conjunction() {
    std::vector<Formula> fs;
    fs.push_back(unary());
    while (at(Tok::And)) {
      ++pos_;
      bare_ = false;
      fs.push_back(unary());
    }
    return Formula::all(std::move(fs));
  }

  Formula unary() {
    if (at(Tok::Not)) {
      ++pos_;
      bare_ = false;
      return Formula::negate(unary());
    }
    if (at(Tok::LParen)) {
      ++pos_;
      bare_ = false;
      Formula f = iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    return Formula::lit(literal());
  }

  Literal literal() {
    if (at(Tok::DisjKw) || at(Tok::NdisjKw)) {
      Rel rel = at(Tok::DisjKw) ? Rel::Disj : Rel::NotDisj;
      ++pos_;
      expect(Tok::LParen, "'('");
      std::string x = ident();
      expect(Tok::Comma, "','");
      std::string y = ident();
      expect(Tok::RParen, "')'");
      return Literal::make(rel, x, y);
    }
    if (!at(Tok::Ident)) fail("expected a literal");
    std::string x = ident();
    switch (peek().kind) {
      case Tok::Sub: ++pos_; return Literal::make(Rel::Subseteq, x, ident());
      case Tok::Nsub: ++pos_; return Literal::make(Rel::NotSubseteq, x, ident());
      case Tok::Ssub: ++pos_; return Literal::make(Rel::StrictSub, x, ident());
      case Tok::Eq:
      case Tok::Neq: break;
      default: fail("expected '=', '!=', 'sub', 'nsub' or 'ssub'");
    }
    bool eq = at(Tok::Eq);
    ++pos_;
    if (at(Tok::LBrace)) {
      if (!eq) fail("'!= { }' is not a literal");
      ++pos_;
      std::string y = ident();
      expect(Tok::RBrace, "'}'");
      return Literal::make(Rel::Singleton, x, y);
    }
    if (at(Tok::Zero)) {
      ++pos_;
      return Literal::make(eq ? Rel::Empty : Rel::NotEmpty, x);
    }
    std::string y = ident();
    switch (peek().kind) {
      case Tok::Backslash:
        ++pos_;
        return Literal::make(eq ? Rel::DiffEq : Rel::DiffNeq, x, y, ident());
      case Tok::Amp:
        ++pos_;
        return Literal::make(eq ? Rel::InterEq : Rel::InterNeq, x, y, ident());
      case Tok::Pipe:
        ++pos_;
        return Literal::make(eq ? Rel::UnionEq : Rel::UnionNeq, x, y, ident());
      default:
        return Literal::make(eq ? Rel::VarEq : Rel::VarNeq, x, y);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool bare_ = true;
  bool saw_reserved_ = false;
};

void reject_nested_singletons(const std::vector<Item>& items) {
  for (const auto& it : items)
    if (contains_singleton(it.formula))
      throw ParseError(it.line, it.col, "singleton atom under a propositional connective");
}

Formula conjoin(std::vector<Item>& items) {
  if (items.empty()) return Formula::all({});
  std::vector<Formula> fs;
  fs.reserve(items.size());
  for (auto& it : items) fs.push_back(std::move(it.formula));
  return Formula::all(std::move(fs));
}

}  // namespace

std::variant<Problem, Formula> parse(std::string_view text) {
  Parser parser(lex(text));
  auto items = parser.items();
  bool plain = !parser.saw_reserved() &&
               std::all_of(items.begin(), items.end(), [](const Item& it) { return it.bare; });
  if (plain) {
    std::vector<Literal> lits;
    for (const auto& it : items) lits.push_back(it.formula.atom);
    return Problem::from_literals(lits);
  }
  reject_nested_singletons(items);
  return conjoin(items);
}

Problem parse_problem(std::string_view text) {
  Parser parser(lex(text));
  auto items = parser.items();
  std::vector<Literal> lits;
  for (const auto& it : items) {
    if (!it.bare) {
      if (contains_singleton(it.formula))
        throw ParseError(it.line, it.col, "singleton atom under a propositional connective");
      throw ParseError(it.line, it.col, "propositional connective in a literal list");
    }
    for (const auto& a : it.formula.atom.args)
      if (!a.empty() && kind_of(a) != VarKind::user)
        throw ParseError(it.line, it.col, "reserved variable name '" + a + "'");
    lits.push_back(it.formula.atom);
  }
  return Problem::from_literals(lits);
}

Formula parse_formula(std::string_view text) {
  Parser parser(lex(text));
  auto items = parser.items();
  reject_nested_singletons(items);
  return conjoin(items);
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

std::string print(const Literal& l) {
  const auto& [x, y, z] = l.args;
  switch (l.rel) {
    case Rel::DiffEq: return x + " = " + y + " \\ " + z;
    case Rel::DiffNeq: return x + " != " + y + " \\ " + z;
    case Rel::Singleton: return x + " = { " + y + " }";
    case Rel::Empty: return x + " = 0";
    case Rel::NotEmpty: return x + " != 0";
    case Rel::Subseteq: return x + " sub " + y;
    case Rel::NotSubseteq: return x + " nsub " + y;
    case Rel::InterEq: return x + " = " + y + " & " + z;
    case Rel::InterNeq: return x + " != " + y + " & " + z;
    case Rel::UnionEq: return x + " = " + y + " | " + z;
    case Rel::UnionNeq: return x + " != " + y + " | " + z;
    case Rel::Disj: return "disj(" + x + "," + y + ")";
    case Rel::NotDisj: return "ndisj(" + x + "," + y + ")";
    case Rel::StrictSub: return x + " ssub " + y;
    case Rel::VarEq: return x + " = " + y;
    case Rel::VarNeq: return x + " != " + y;
  }
  return {};
}

namespace {

std::string wrap(const Formula& f) {
  if (f.op == Formula::Op::Atom || f.op == Formula::Op::Not) return print(f);
  return "(" + print(f) + ")";
}

std::string join(const std::vector<Formula>& kids, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) out += sep;
    out += wrap(kids[i]);
  }
  return out;
}

}  // namespace

std::string print(const Formula& f) {
  switch (f.op) {
    case Formula::Op::Atom: return print(f.atom);
    case Formula::Op::Not: return "not " + wrap(f.kids[0]);
    case Formula::Op::And:
      if (f.kids.size() == 1) return print(f.kids[0]);
      return join(f.kids, " and ");
    case Formula::Op::Or:
      if (f.kids.size() == 1) return print(f.kids[0]);
      return join(f.kids, " or ");
    case Formula::Op::Implies: return wrap(f.kids[0]) + " -> " + wrap(f.kids[1]);
    case Formula::Op::Iff: return wrap(f.kids[0]) + " <-> " + wrap(f.kids[1]);
  }
  return {};
}

std::string print(const Problem& p) {
  std::string out;
  for (std::size_t i = 0; i < p.source.size(); ++i) {
    if (i) out += " ; ";
    out += print(p.source[i]);
  }
  return out;
}

}  // namespace bstkit
