#include "bstkit/translate.hpp"

namespace bstkit {

namespace {

Formula atom(Rel rel, const std::string& x, const std::string& y) {
  return Formula::lit(Literal::make(rel, x, y));
}

}  // namespace

XiFormula translate(const Problem& p) {
  XiFormula xi;
  xi.vars = p.vars;
  xi.tilde_vars.reserve(p.vars.size());
  for (const auto& v : p.vars) xi.tilde_vars.push_back(make_var(tilde_name(v.name)));

  const std::size_t n = p.vars.size();
  const std::size_t m = p.psi.size();
  xi.conjuncts.reserve(m + 2 * m * n + m * (m - (m ? 1 : 0)) / 2 + n * (n - (n ? 1 : 0)) / 2);
  auto emit = [&](XiFormula::Family fam, Formula f) {
    xi.conjuncts.push_back({fam, std::move(f)});
  };

  for (const auto& a : p.psi) emit(XiFormula::Family::NotSubset, atom(Rel::NotSubseteq, a.x(), a.y()));

  for (const auto& a : p.psi) {
    const std::string ty = tilde_name(a.y());
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& v = p.vars[i].name;
      emit(XiFormula::Family::InclusionGuard,
           Formula::implies(atom(Rel::NotDisj, a.x(), v), atom(Rel::Subseteq, a.x(), v)));
      emit(XiFormula::Family::RankGuard,
           Formula::implies(atom(Rel::NotDisj, a.x(), v),
                            atom(Rel::StrictSub, ty, xi.tilde_vars[i].name)));
    }
  }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      emit(XiFormula::Family::AtomEquality,
           Formula::iff(atom(Rel::VarEq, p.psi[i].y(), p.psi[j].y()),
                        atom(Rel::VarEq, p.psi[i].x(), p.psi[j].x())));

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      emit(XiFormula::Family::TildeEquality,
           Formula::implies(atom(Rel::VarEq, p.vars[i].name, p.vars[j].name),
                            atom(Rel::VarEq, xi.tilde_vars[i].name, xi.tilde_vars[j].name)));
  return xi;
}

std::uint64_t translate_size(std::uint64_t n, std::uint64_t p) {
  return p + 2 * p * n + p * (p - (p ? 1 : 0)) / 2 + n * (n - (n ? 1 : 0)) / 2;
}

Formula XiFormula::as_formula() const {
  std::vector<Formula> fs;
  fs.reserve(conjuncts.size());
  for (const auto& c : conjuncts) fs.push_back(c.formula);
  return Formula::all(std::move(fs));
}

std::string XiFormula::print() const {
  std::string out;
  for (const auto& c : conjuncts) {
    out += bstkit::print(c.formula);
    out += '\n';
  }
  return out;
}

Formula flat_formula(const Problem& p, const XiFormula& xi) {
  std::vector<Formula> fs;
  fs.reserve(p.phi.size() + xi.size());
  for (const auto& l : p.phi) fs.push_back(Formula::lit(l));
  for (const auto& c : xi.conjuncts) fs.push_back(c.formula);
  Formula f;
  f.op = Formula::Op::And;
  f.kids = std::move(fs);
  return f;
}

}  // namespace bstkit
