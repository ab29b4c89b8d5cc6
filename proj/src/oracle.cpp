#include "bstkit/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "bstkit/error.hpp"
#include "bstkit/hf.hpp"

namespace bstkit::oracle {

namespace {

// A formula with variables replaced by column numbers.
struct Node {
  Formula::Op op = Formula::Op::And;
  Rel rel = Rel::DiffEq;
  int args[3] = {0, 0, 0};
  std::vector<Node> kids;
};

class Compiler {
 public:
  explicit Compiler(std::vector<std::string>& vars) : vars_(vars) {}

  Node compile(const Formula& f) {
    Node n;
    n.op = f.op;
    if (f.is_atom()) {
      n.rel = f.atom.rel;
      for (int i = 0; i < arity(f.atom.rel); ++i) n.args[i] = column(f.atom.args[i]);
      return n;
    }
    for (const auto& k : f.kids) n.kids.push_back(compile(k));
    return n;
  }

 private:
  int column(const std::string& name) {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it != vars_.end()) return static_cast<int>(it - vars_.begin());
    vars_.push_back(name);
    return static_cast<int>(vars_.size() - 1);
  }

  std::vector<std::string>& vars_;
};

// Values are bitmasks over a base list of sets; `pos` maps a value to its
// position in that base list (-1 when it is not there), which singleton
// atoms need. Flat searches pass pos == nullptr.
bool literal_holds(const Node& n, const std::uint32_t* val, const std::vector<int>* pos) {
  const std::uint32_t x = val[n.args[0]], y = val[n.args[1]], z = val[n.args[2]];
  switch (n.rel) {
    case Rel::DiffEq: return x == (y & ~z);
    case Rel::DiffNeq: return x != (y & ~z);
    case Rel::Singleton: {
      if (pos == nullptr) throw PreconditionError("flat oracle: singleton atom");
      const int p = (*pos)[y];
      return p >= 0 && x == (std::uint32_t{1} << p);
    }
    case Rel::Empty: return x == 0;
    case Rel::NotEmpty: return x != 0;
    case Rel::Subseteq: return (x & ~y) == 0;
    case Rel::NotSubseteq: return (x & ~y) != 0;
    case Rel::InterEq: return x == (y & z);
    case Rel::InterNeq: return x != (y & z);
    case Rel::UnionEq: return x == (y | z);
    case Rel::UnionNeq: return x != (y | z);
    case Rel::Disj: return (x & y) == 0;
    case Rel::NotDisj: return (x & y) != 0;
    case Rel::StrictSub: return (x & ~y) == 0 && x != y;
    case Rel::VarEq: return x == y;
    case Rel::VarNeq: return x != y;
  }
  return false;
}

bool holds(const Node& n, const std::uint32_t* val, const std::vector<int>* pos) {
  switch (n.op) {
    case Formula::Op::Atom: return literal_holds(n, val, pos);
    case Formula::Op::Not: return !holds(n.kids[0], val, pos);
    case Formula::Op::And:
      for (const auto& k : n.kids)
        if (!holds(k, val, pos)) return false;
      return true;
    case Formula::Op::Or:
      for (const auto& k : n.kids)
        if (holds(k, val, pos)) return true;
      return false;
    case Formula::Op::Implies: return !holds(n.kids[0], val, pos) || holds(n.kids[1], val, pos);
    case Formula::Op::Iff: return holds(n.kids[0], val, pos) == holds(n.kids[1], val, pos);
  }
  return false;
}

// Assignment i gives variable j the bits [j*bits, (j+1)*bits) of i.
struct Space {
  std::size_t vars = 0;
  int bits = 0;

  std::uint64_t total() const { return std::uint64_t{1} << (vars * bits); }
  void decode(std::uint64_t i, std::uint32_t* val) const {
    const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
    for (std::size_t j = 0; j < vars; ++j) val[j] = static_cast<std::uint32_t>(i >> (j * bits) & mask);
  }
};

Space checked_space(std::size_t vars, int bits) {
  if (bits < 0 || bits > 24 || vars * static_cast<std::size_t>(bits) > 24)
    throw BudgetExceeded("oracle: " + std::to_string(vars) + " variables of " +
                         std::to_string(bits) + " bits exceed 2^24 assignments");
  return Space{vars, bits};
}

constexpr std::size_t kMaxVars = 24;

template <class Pred>
std::uint64_t first_hit_serial(std::uint64_t total, const Pred& pred) {
  for (std::uint64_t i = 0; i < total; ++i)
    if (pred(i)) return i;
  return total;
}

// Blocks are scanned in order so the answer is the smallest hit, as serially.
template <class Pred>
std::uint64_t first_hit_parallel(std::uint64_t total, const Pred& pred) {
  constexpr std::int64_t kBlock = std::int64_t{1} << 14;
  const auto end_all = static_cast<std::int64_t>(total);
  for (std::int64_t base = 0; base < end_all; base += kBlock) {
    const std::int64_t end = std::min(end_all, base + kBlock);
    std::int64_t best = end_all;
#pragma omp parallel for schedule(static) reduction(min : best)
    for (std::int64_t i = base; i < end; ++i)
      if (i < best && pred(static_cast<std::uint64_t>(i))) best = i;
    if (best < end_all) return static_cast<std::uint64_t>(best);
  }
  return total;
}

template <bool Parallel>
FlatResult flat_search(const Formula& f, int k) {
  if (k < 0) throw PreconditionError("flat_sat: negative universe size");
  if (contains_singleton(f)) throw PreconditionError("flat_sat: singleton atom in flat formula");
  std::vector<std::string> vars;
  Compiler compiler(vars);
  const Node root = compiler.compile(f);
  const Space space = checked_space(vars.size(), k);

  auto pred = [&](std::uint64_t i) {
    std::uint32_t val[kMaxVars + 1] = {};
    space.decode(i, val);
    return holds(root, val, nullptr);
  };
  const std::uint64_t total = space.total();
  const std::uint64_t hit =
      Parallel ? first_hit_parallel(total, pred) : first_hit_serial(total, pred);

  FlatResult out;
  out.assignments = total;
  if (hit == total) return out;
  out.status = sat::Status::Sat;
  std::uint32_t val[kMaxVars + 1] = {};
  space.decode(hit, val);
  AbstractModel m = AbstractModel::blank(vars, static_cast<std::size_t>(k));
  for (int e = 0; e < k; ++e) {
    m.active[e] = true;
    for (std::size_t j = 0; j < vars.size(); ++j) m.set_member(e, j, val[j] >> e & 1u);
  }
  out.witness = std::move(m);
  return out;
}

struct Level {
  hf::LevelTable table;
  std::vector<int> pos;  // position of table.sets[v] in V_{level-1}
  int bits = 0;
};

Level load_level(int level) {
  if (level < 1 || level > 4) throw PreconditionError("nested_sat: level outside 1..4");
  Level out{hf::enumerate_level(level), {}, 0};
  const hf::LevelTable prev = hf::enumerate_level(level - 1);
  std::unordered_map<hf::HFSet, int> where;
  for (std::size_t i = 0; i < prev.sets.size(); ++i) where.emplace(prev.sets[i], static_cast<int>(i));
  for (hf::HFSet s : out.table.sets) {
    auto it = where.find(s);
    out.pos.push_back(it == where.end() ? -1 : it->second);
  }
  out.bits = static_cast<int>(prev.sets.size());
  return out;
}

template <bool Parallel>
NestedOracleResult nested_search(const Problem& p, int level) {
  std::vector<Formula> lits;
  for (const auto& l : p.source) lits.push_back(Formula::lit(l));
  std::vector<std::string> vars;
  Compiler compiler(vars);
  const Node root = compiler.compile(Formula::all(std::move(lits)));
  const Level lv = load_level(level);
  const Space space = checked_space(vars.size(), lv.bits);

  auto pred = [&](std::uint64_t i) {
    std::uint32_t val[kMaxVars + 1] = {};
    space.decode(i, val);
    return holds(root, val, &lv.pos);
  };
  const std::uint64_t total = space.total();
  const std::uint64_t hit =
      Parallel ? first_hit_parallel(total, pred) : first_hit_serial(total, pred);

  NestedOracleResult out;
  out.assignments = total;
  if (hit == total) return out;
  out.status = sat::Status::Sat;
  std::uint32_t val[kMaxVars + 1] = {};
  space.decode(hit, val);
  SetAssignment m;
  for (std::size_t j = 0; j < vars.size(); ++j) m.set(vars[j], lv.table.sets[val[j]]);
  out.witness = std::move(m);
  return out;
}

}  // namespace

FlatResult flat_sat(const Formula& f, int k) { return flat_search<true>(f, k); }
FlatResult flat_sat_serial(const Formula& f, int k) { return flat_search<false>(f, k); }

NestedOracleResult nested_sat(const Problem& p, int level) { return nested_search<true>(p, level); }
NestedOracleResult nested_sat_serial(const Problem& p, int level) {
  return nested_search<false>(p, level);
}

std::vector<std::string> source_vars(const Problem& p) {
  std::vector<std::string> vars;
  for (const auto& l : p.source)
    for (int i = 0; i < arity(l.rel); ++i)
      if (std::find(vars.begin(), vars.end(), l.args[i]) == vars.end()) vars.push_back(l.args[i]);
  return vars;
}

DowngradeReport membership_downgrade(int level) {
  const hf::LevelTable t = hf::enumerate_level(level);
  DowngradeReport r;
  for (hf::HFSet x : t.sets)
    for (hf::HFSet y : t.sets) {
      const bool in = y.contains(x);
      bool witnessed = false;
      for (hf::HFSet z : t.sets)
        if (z == hf::singleton(x) && hf::subset(z, y)) witnessed = true;
      ++r.pairs;
      if (in == witnessed) ++r.agreements;
    }
  return r;
}

std::vector<Literal> all_diff_literals(const std::vector<std::string>& vars) {
  std::vector<Literal> out;
  for (const auto& x : vars)
    for (const auto& y : vars)
      for (const auto& z : vars) {
        out.push_back(Literal::make(Rel::DiffEq, x, y, z));
        out.push_back(Literal::make(Rel::DiffNeq, x, y, z));
      }
  return out;
}

}  // namespace bstkit::oracle
