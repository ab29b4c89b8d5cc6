#include "bstkit/decide.hpp"

#include <algorithm>
#include <map>

#include "bstkit/error.hpp"

namespace bstkit {

std::size_t AbstractModel::column(const std::string& name) const {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) throw MissingVariable(name);
  return static_cast<std::size_t>(it - vars.begin());
}

AbstractModel AbstractModel::blank(std::vector<std::string> vars, std::size_t elements) {
  AbstractModel m;
  m.vars = std::move(vars);
  m.elements = elements;
  m.membership.assign(elements * m.vars.size(), 0);
  m.active.assign(elements, false);
  return m;
}

namespace {

bool positive_holds(const AbstractModel& m, const Literal& l, Rel positive) {
  const int k = arity(l.rel);
  std::size_t cols[3] = {0, 0, 0};
  for (int i = 0; i < k; ++i) cols[i] = m.column(l.args[i]);
  for (std::size_t e = 0; e < m.elements; ++e) {
    if (!m.active[e]) continue;
    bool x = m.member(e, cols[0]);
    bool y = k > 1 && m.member(e, cols[1]);
    bool z = k > 2 && m.member(e, cols[2]);
    if (!row_holds(positive, x, y, z)) return false;
  }
  return true;
}

}  // namespace

bool evaluate(const AbstractModel& m, const Formula& f) {
  return eval_formula(f, [&m](const Literal& l) {
    if (l.rel == Rel::Singleton)
      throw PreconditionError("singleton atoms have no per-element semantics");
    if (l.rel == Rel::StrictSub) {
      Literal fwd = Literal::make(Rel::Subseteq, l.x(), l.y());
      Literal bwd = Literal::make(Rel::Subseteq, l.y(), l.x());
      return positive_holds(m, fwd, Rel::Subseteq) && !positive_holds(m, bwd, Rel::Subseteq);
    }
    AtomForm form = atom_form(l.rel);
    return positive_holds(m, l, form.positive) != form.negated;
  });
}

// ---------------------------------------------------------------------------

namespace {

class Encoder {
 public:
  Encoder(Encoding& enc) : enc_(enc) {}

  // Registers atoms and columns; must run before any clause is emitted.
  void scan(const Formula& f) {
    if (f.is_atom()) {
      const Literal& l = f.atom;
      if (l.rel == Rel::Singleton)
        throw PreconditionError("encode: singleton atom '" + print(l) + "' in flat formula");
      if (l.rel == Rel::StrictSub) {
        atom_id(Literal::make(Rel::Subseteq, l.x(), l.y()));
        atom_id(Literal::make(Rel::Subseteq, l.y(), l.x()));
      } else {
        Literal pos = l;
        pos.rel = atom_form(l.rel).positive;
        atom_id(pos);
      }
      return;
    }
    for (const auto& k : f.kids) scan(k);
  }

  void allocate() {
    auto& cnf = enc_.cnf;
    enc_.elements = enc_.atoms.size();
    for (std::size_t i = 0; i < enc_.atoms.size(); ++i) enc_.atom_var.push_back(cnf.new_var());
    for (std::size_t e = 0; e < enc_.elements; ++e) enc_.active_var.push_back(cnf.new_var());
    member_base = cnf.num_vars + 1;
    cnf.num_vars += static_cast<int>(enc_.elements * enc_.vars.size());
  }

  void atom_semantics() {
    auto& cnf = enc_.cnf;
    for (std::size_t e = 0; e < enc_.elements; ++e)
      for (std::size_t v = 0; v < enc_.vars.size(); ++v)
        cnf.add({enc_.active_var[e], -member(e, v)});

    for (std::size_t a = 0; a < enc_.atoms.size(); ++a) {
      const Literal& atom = enc_.atoms[a];
      const int b = enc_.atom_var[a];
      // Distinct columns of the atom and the slot each argument maps to.
      std::vector<std::size_t> cols;
      int slot[3] = {0, 0, 0};
      for (int i = 0; i < arity(atom.rel); ++i) {
        std::size_t c = column_of(atom.args[i]);
        auto it = std::find(cols.begin(), cols.end(), c);
        slot[i] = static_cast<int>(it - cols.begin());
        if (it == cols.end()) cols.push_back(c);
      }
      const unsigned tuples = 1u << cols.size();
      for (unsigned t = 0; t < tuples; ++t) {
        auto bit = [&](int i) { return i < arity(atom.rel) && (t >> slot[i] & 1u); };
        bool holds = row_holds(atom.rel, bit(0), bit(1), bit(2));
        auto differs = [&](std::size_t e, std::vector<int>& clause) {
          for (std::size_t j = 0; j < cols.size(); ++j) {
            int m = member(e, cols[j]);
            clause.push_back((t >> j & 1u) ? -m : m);
          }
        };
        if (!holds) {
          // b -> no element exhibits tuple t
          for (std::size_t e = 0; e < enc_.elements; ++e) {
            std::vector<int> clause{-b};
            differs(e, clause);
            cnf.add(std::move(clause));
          }
        } else {
          // not b -> the reserved element does not exhibit t
          std::vector<int> clause{b};
          differs(a, clause);
          cnf.add(std::move(clause));
        }
      }
      cnf.add({b, enc_.active_var[a]});
    }
  }

  void assert_true(const Formula& f) {
    switch (f.op) {
      case Formula::Op::And:
        for (const auto& k : f.kids) assert_true(k);
        return;
      case Formula::Op::Or: {
        std::vector<int> clause;
        for (const auto& k : f.kids) clause.push_back(lit(k));
        enc_.cnf.add(std::move(clause));
        return;
      }
      case Formula::Op::Implies:
        enc_.cnf.add({-lit(f.kids[0]), lit(f.kids[1])});
        return;
      case Formula::Op::Iff: {
        int a = lit(f.kids[0]), b = lit(f.kids[1]);
        enc_.cnf.add({-a, b});
        enc_.cnf.add({a, -b});
        return;
      }
      default:
        enc_.cnf.add({lit(f)});
        return;
    }
  }

  int member_base = 1;

 private:
  int member(std::size_t e, std::size_t v) const {
    return member_base + static_cast<int>(e * enc_.vars.size() + v);
  }

  std::size_t column_of(const std::string& name) {
    auto it = columns_.find(name);
    if (it != columns_.end()) return it->second;
    std::size_t c = enc_.vars.size();
    enc_.vars.push_back(name);
    columns_.emplace(name, c);
    return c;
  }

 public:
  void add_column(const std::string& name) { column_of(name); }

 private:
  int atom_id(const Literal& pos) {
    for (int i = 0; i < arity(pos.rel); ++i) column_of(pos.args[i]);
    auto it = atom_index_.find(pos);
    if (it != atom_index_.end()) return it->second;
    int id = static_cast<int>(enc_.atoms.size());
    enc_.atoms.push_back(pos);
    atom_index_.emplace(pos, id);
    return id;
  }

  int atom_lit(const Literal& l) {
    if (l.rel == Rel::StrictSub) {
      int fwd = enc_.atom_var[atom_id(Literal::make(Rel::Subseteq, l.x(), l.y()))];
      int bwd = enc_.atom_var[atom_id(Literal::make(Rel::Subseteq, l.y(), l.x()))];
      return gate_and({fwd, -bwd});
    }
    AtomForm form = atom_form(l.rel);
    Literal pos = l;
    pos.rel = form.positive;
    int b = enc_.atom_var[atom_id(pos)];
    return form.negated ? -b : b;
  }

  int gate_and(const std::vector<int>& ins) {
    auto& cnf = enc_.cnf;
    int g = cnf.new_var();
    std::vector<int> back{g};
    for (int i : ins) {
      cnf.add({-g, i});
      back.push_back(-i);
    }
    cnf.add(std::move(back));
    return g;
  }

  int gate_or(const std::vector<int>& ins) {
    std::vector<int> neg;
    for (int i : ins) neg.push_back(-i);
    return -gate_and(neg);
  }

  int lit(const Formula& f) {
    switch (f.op) {
      case Formula::Op::Atom: return atom_lit(f.atom);
      case Formula::Op::Not: return -lit(f.kids[0]);
      case Formula::Op::And: {
        std::vector<int> ins;
        for (const auto& k : f.kids) ins.push_back(lit(k));
        return gate_and(ins);
      }
      case Formula::Op::Or: {
        std::vector<int> ins;
        for (const auto& k : f.kids) ins.push_back(lit(k));
        return gate_or(ins);
      }
      case Formula::Op::Implies: return gate_or({-lit(f.kids[0]), lit(f.kids[1])});
      case Formula::Op::Iff: {
        int a = lit(f.kids[0]), b = lit(f.kids[1]);
        auto& cnf = enc_.cnf;
        int g = cnf.new_var();
        cnf.add({-g, -a, b});
        cnf.add({-g, a, -b});
        cnf.add({g, a, b});
        cnf.add({g, -a, -b});
        return g;
      }
    }
    return 0;
  }

  Encoding& enc_;
  std::map<std::string, std::size_t> columns_;
  std::map<Literal, int> atom_index_;
};

}  // namespace

Encoding encode(const Formula& f, const std::vector<std::string>& extra_vars) {
  Encoding enc;
  Encoder encoder(enc);
  for (const auto& v : extra_vars) encoder.add_column(v);
  encoder.scan(f);
  encoder.allocate();
  enc.member_base_ = encoder.member_base;
  encoder.atom_semantics();
  encoder.assert_true(f);
  return enc;
}

AbstractModel decode(const Encoding& enc, const sat::SolveResult& res) {
  AbstractModel m = AbstractModel::blank(enc.vars, enc.elements);
  for (std::size_t e = 0; e < enc.elements; ++e) {
    m.active[e] = res.model[enc.active_var[e]];
    for (std::size_t v = 0; v < enc.vars.size(); ++v)
      m.set_member(e, v, res.model[enc.member_var(e, v)]);
  }
  return m;
}

DecideResult decide(const Formula& f, const DecideOptions& options) {
  Encoding enc = encode(f, options.vars);
  sat::SolveResult res = sat::solve(enc.cnf, options.solver);
  DecideResult out;
  out.status = res.status;
  out.atoms = enc.atoms.size();
  out.cnf_vars = static_cast<std::size_t>(enc.cnf.num_vars);
  out.cnf_clauses = enc.cnf.clauses.size();
  out.stats = res.stats;
  if (res.sat()) {
    out.model = decode(enc, res);
    if (!evaluate(out.model, f))
      throw Error("decide: decoded model does not satisfy the formula");
  }
  return out;
}

}  // namespace bstkit
