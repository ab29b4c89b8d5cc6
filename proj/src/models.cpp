#include "bstkit/models.hpp"

#include <algorithm>
#include <set>

namespace bstkit {

using hf::HFSet;

hf::HFSet SetAssignment::at(const std::string& var) const {
  auto it = values_.find(var);
  if (it == values_.end()) throw MissingVariable(var);
  return it->second;
}

SetAssignment SetAssignment::restricted(const std::vector<std::string>& vars) const {
  SetAssignment out;
  for (const auto& v : vars) out.set(v, at(v));
  return out;
}

std::vector<std::string> SetAssignment::base_vars() const {
  std::vector<std::string> out;
  for (const auto& [name, value] : values_)
    if (!is_tilde(name)) out.push_back(name);
  return out;
}

std::string SetAssignment::render(const std::vector<std::string>& vars) const {
  std::string out;
  for (const auto& v : vars) {
    out += v;
    out += " = ";
    out += hf::to_string(at(v));
    out += '\n';
  }
  return out;
}

bool evaluate(const SetAssignment& m, const Literal& l) {
  auto val = [&m](const std::string& v) { return m.at(v); };
  switch (l.rel) {
    case Rel::DiffEq: return val(l.x()) == hf::diff(val(l.y()), val(l.z()));
    case Rel::DiffNeq: return val(l.x()) != hf::diff(val(l.y()), val(l.z()));
    case Rel::Singleton: {
      HFSet x = val(l.x());
      return x.size() == 1 && x.members()[0] == val(l.y());
    }
    case Rel::Empty: return val(l.x()).empty();
    case Rel::NotEmpty: return !val(l.x()).empty();
    case Rel::Subseteq: return hf::subset(val(l.x()), val(l.y()));
    case Rel::NotSubseteq: return !hf::subset(val(l.x()), val(l.y()));
    case Rel::InterEq: return val(l.x()) == hf::intersect(val(l.y()), val(l.z()));
    case Rel::InterNeq: return val(l.x()) != hf::intersect(val(l.y()), val(l.z()));
    case Rel::UnionEq: return val(l.x()) == hf::unite(val(l.y()), val(l.z()));
    case Rel::UnionNeq: return val(l.x()) != hf::unite(val(l.y()), val(l.z()));
    case Rel::Disj: return hf::disjoint(val(l.x()), val(l.y()));
    case Rel::NotDisj: return !hf::disjoint(val(l.x()), val(l.y()));
    case Rel::StrictSub: return val(l.x()) != val(l.y()) && hf::subset(val(l.x()), val(l.y()));
    case Rel::VarEq: return val(l.x()) == val(l.y());
    case Rel::VarNeq: return val(l.x()) != val(l.y());
  }
  return false;
}

bool evaluate(const SetAssignment& m, const Formula& f) {
  return eval_formula(f, [&m](const Literal& l) { return evaluate(m, l); });
}

bool evaluate(const SetAssignment& m, const Problem& p) {
  return std::all_of(p.source.begin(), p.source.end(),
                     [&m](const Literal& l) { return evaluate(m, l); });
}

bool evaluate_core(const SetAssignment& m, const Problem& p) {
  auto ok = [&m](const Literal& l) { return evaluate(m, l); };
  return std::all_of(p.phi.begin(), p.phi.end(), ok) && std::all_of(p.psi.begin(), p.psi.end(), ok);
}

bool is_flat(const SetAssignment& m, int flat_rank) {
  for (const auto& [name, value] : m.values())
    for (HFSet s : value.members())
      if (s.rank() != flat_rank) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<bool>> realized_regions(const SetAssignment& m,
                                                const std::vector<std::string>& vars) {
  std::vector<HFSet> values;
  for (const auto& v : vars) values.push_back(m.at(v));
  std::set<std::vector<bool>> out;
  for (HFSet value : values)
    for (HFSet s : value.members()) {
      std::vector<bool> sig(vars.size());
      for (std::size_t j = 0; j < vars.size(); ++j) sig[j] = values[j].contains(s);
      out.insert(std::move(sig));
    }
  return {out.begin(), out.end()};
}

std::vector<std::vector<bool>> realized_regions(const AbstractModel& a,
                                                const std::vector<std::string>& vars) {
  std::vector<std::size_t> cols;
  for (const auto& v : vars) cols.push_back(a.column(v));
  std::set<std::vector<bool>> out;
  for (std::size_t e = 0; e < a.elements; ++e) {
    if (!a.active[e]) continue;
    std::vector<bool> sig(vars.size());
    bool any = false;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      sig[j] = a.member(e, cols[j]);
      any = any || sig[j];
    }
    if (any) out.insert(std::move(sig));
  }
  return {out.begin(), out.end()};
}

FlatModel flatten(const AbstractModel& a, const std::vector<std::string>& vars, int flat_rank) {
  if (flat_rank < static_cast<int>(vars.size()) + 1)
    throw PreconditionError("flatten: flat rank " + std::to_string(flat_rank) + " below " +
                            std::to_string(vars.size() + 1));
  FlatModel out;
  out.params.flat_rank = flat_rank;
  std::vector<std::vector<HFSet>> members(vars.size());
  for (const auto& sig : realized_regions(a, vars)) {
    HFSet rep = hf::im_inject(sig, flat_rank);
    out.params.region_index.emplace(sig, rep);
    for (std::size_t j = 0; j < vars.size(); ++j)
      if (sig[j]) members[j].push_back(rep);
  }
  for (std::size_t j = 0; j < vars.size(); ++j)
    out.assignment.set(vars[j], HFSet::of(std::move(members[j])));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string describe_cycle(const std::vector<Literal>& cycle) {
  std::string s = "cycle among singleton atoms:";
  for (const auto& l : cycle) s += " [" + print(l) + "]";
  return s;
}

}  // namespace

CycleDetected::CycleDetected(std::vector<Literal> cycle)
    : Error(describe_cycle(cycle)), cycle_(std::move(cycle)) {}

AtomOrder order(const std::vector<Literal>& psi, const SetAssignment& m) {
  const std::size_t k = psi.size();
  AtomOrder ord;
  ord.atoms = psi;
  ord.edge.assign(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i) {
    HFSet xi = m.at(psi[i].x());
    for (std::size_t j = 0; j < k; ++j) ord.edge[i][j] = !hf::disjoint(xi, m.at(psi[j].y()));
  }
  ord.closure = ord.edge;
  for (std::size_t mid = 0; mid < k; ++mid)
    for (std::size_t i = 0; i < k; ++i)
      if (ord.closure[i][mid])
        for (std::size_t j = 0; j < k; ++j)
          if (ord.closure[mid][j]) ord.closure[i][j] = true;

  for (std::size_t i = 0; i < k; ++i) {
    if (!ord.closure[i][i]) continue;
    // Walk edges that stay on the cycle through i.
    std::vector<Literal> cycle{psi[i]};
    std::size_t cur = i;
    while (true) {
      if (ord.edge[cur][i]) break;
      std::size_t next = 0;
      while (!(ord.edge[cur][next] && ord.closure[next][i])) ++next;
      cur = next;
      cycle.push_back(psi[cur]);
    }
    throw CycleDetected(std::move(cycle));
  }

  std::vector<std::size_t> indeg(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (ord.edge[i][j]) ++indeg[j];
  std::vector<bool> done(k, false);
  while (ord.topo.size() < k) {
    std::size_t pick = 0;
    while (done[pick] || indeg[pick] != 0) ++pick;
    done[pick] = true;
    ord.topo.push_back(pick);
    for (std::size_t j = 0; j < k; ++j)
      if (ord.edge[pick][j]) --indeg[j];
  }
  return ord;
}

// ---------------------------------------------------------------------------

TransformPrecondition::TransformPrecondition(std::string var)
    : PreconditionError("transform: the right-hand value is a member of '" + var + "'"),
      var_(std::move(var)) {}

SetAssignment transform(const SetAssignment& m, const std::string& x, const std::string& y) {
  const HFSet mx = m.at(x);
  const HFSet my = m.at(y);
  for (const auto& [v, value] : m.values())
    if (!is_tilde(v) && value.contains(my)) throw TransformPrecondition(v);
  SetAssignment out = m;
  const HFSet single = hf::singleton(my);
  for (const auto& [v, value] : m.values()) {
    if (is_tilde(v) || hf::disjoint(mx, value)) continue;
    out.set(v, hf::unite(hf::diff(value, mx), single));
  }
  return out;
}

}  // namespace bstkit
