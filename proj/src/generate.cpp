#include <charconv>

#include "bstkit/error.hpp"
#include "bstkit/hf.hpp"
#include "bstkit/oracle.hpp"

namespace bstkit::oracle {

namespace {

// Plain modulo keeps streams identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  bool coin() { return (gen_() & 1u) != 0; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

std::vector<std::string> var_list(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

Generated planted(Rng& rng, const Profile& pr) {
  const auto names = var_list(pr.vars);
  const std::size_t n = names.size();
  const std::size_t s = n < 2 ? 0 : std::min(pr.singletons, n - 1);

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  rng.shuffle(perm);
  std::vector<bool> is_lhs(n, false);
  for (std::size_t i = 0; i < s; ++i) is_lhs[perm[n - 1 - i]] = true;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (lhs, rhs)
  std::vector<bool> is_rhs(n, false);
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t lhs = perm[n - 1 - i];
    const std::size_t rhs = perm[rng.below(n - s)];
    pairs.emplace_back(lhs, rhs);
    is_rhs[rhs] = true;
  }

  const hf::LevelTable v3 = hf::enumerate_level(3);
  const hf::LevelTable v4 = hf::enumerate_level(4);
  std::vector<hf::HFSet> val(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (is_lhs[j]) continue;
    val[j] = is_rhs[j] ? v3.sets[rng.below(v3.sets.size())] : v4.sets[rng.below(v4.sets.size())];
  }
  for (auto [lhs, rhs] : pairs) val[lhs] = hf::singleton(val[rhs]);

  std::vector<Literal> lits;
  for (auto [lhs, rhs] : pairs) lits.push_back(Literal::make(Rel::Singleton, names[lhs], names[rhs]));
  for (std::size_t i = 0; i < pr.diff && n > 0; ++i) {
    const std::size_t y = rng.below(n), z = rng.below(n);
    const hf::HFSet d = hf::diff(val[y], val[z]);
    std::size_t x = rng.below(n);
    if (rng.coin()) {
      for (std::size_t j = 0; j < n; ++j)
        if (val[j] == d) x = j;
    }
    const Rel rel = val[x] == d ? Rel::DiffEq : Rel::DiffNeq;
    lits.push_back(Literal::make(rel, names[x], names[y], names[z]));
  }
  rng.shuffle(lits);

  Generated out;
  out.problem = Problem::from_literals(lits);
  SetAssignment cert;
  for (const auto& v : source_vars(out.problem)) {
    const auto idx = static_cast<std::size_t>(std::stoul(v.substr(1)));
    cert.set(v, val[idx]);
  }
  out.certificate = std::move(cert);
  return out;
}

Generated unplanted(Rng& rng, const Profile& pr) {
  const auto names = var_list(pr.vars);
  const std::size_t n = names.size();
  std::vector<Literal> lits;
  if (n > 0) {
    for (std::size_t i = 0; i < pr.singletons; ++i)
      lits.push_back(Literal::make(Rel::Singleton, names[rng.below(n)], names[rng.below(n)]));
    for (std::size_t i = 0; i < pr.diff; ++i) {
      const Rel rel = rng.coin() ? Rel::DiffEq : Rel::DiffNeq;
      lits.push_back(Literal::make(rel, names[rng.below(n)], names[rng.below(n)], names[rng.below(n)]));
    }
  }
  rng.shuffle(lits);
  return Generated{Problem::from_literals(lits), std::nullopt};
}

constexpr Rel kFlatRels[] = {
    Rel::DiffEq,      Rel::DiffNeq,  Rel::Empty,    Rel::NotEmpty, Rel::Subseteq,
    Rel::NotSubseteq, Rel::InterEq,  Rel::InterNeq, Rel::UnionEq,  Rel::UnionNeq,
    Rel::Disj,        Rel::NotDisj,  Rel::StrictSub, Rel::VarEq,   Rel::VarNeq,
};

Literal random_flat_literal(Rng& rng, const std::vector<std::string>& names) {
  const Rel rel = kFlatRels[rng.below(std::size(kFlatRels))];
  Literal l;
  l.rel = rel;
  for (int i = 0; i < arity(rel); ++i) l.args[i] = names[rng.below(names.size())];
  return l;
}

Formula random_tree(Rng& rng, std::vector<Formula>& leaves, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) {
    Formula f = leaves[lo];
    return rng.below(4) == 0 ? Formula::negate(std::move(f)) : f;
  }
  const std::size_t mid = lo + 1 + rng.below(hi - lo - 1);
  Formula a = random_tree(rng, leaves, lo, mid);
  Formula b = random_tree(rng, leaves, mid, hi);
  switch (rng.below(4)) {
    case 0: return Formula::all({std::move(a), std::move(b)});
    case 1: return Formula::any({std::move(a), std::move(b)});
    case 2: return Formula::implies(std::move(a), std::move(b));
    default: return Formula::iff(std::move(a), std::move(b));
  }
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error("profile: bad " + std::string(what) + " count '" + std::string(text) + "'");
  return v;
}

}  // namespace

Profile Profile::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  Profile p;
  if (parts[0] == "planted") p.kind = Kind::planted;
  else if (parts[0] == "random") p.kind = Kind::random;
  else if (parts[0] == "empty") p.kind = Kind::empty;
  else throw Error("profile: unknown kind '" + std::string(parts[0]) + "'");
  if (parts.size() == 1) return p;
  if (parts.size() != 4) throw Error("profile: expected KIND or KIND:VARS:DIFF:SINGLETONS");
  p.vars = parse_count(parts[1], "variable");
  p.diff = parse_count(parts[2], "difference literal");
  p.singletons = parse_count(parts[3], "singleton");
  return p;
}

std::string Profile::str() const {
  const char* k = kind == Kind::planted ? "planted" : kind == Kind::random ? "random" : "empty";
  return std::string(k) + ":" + std::to_string(vars) + ":" + std::to_string(diff) + ":" +
         std::to_string(singletons);
}

Generated generate(std::uint64_t seed, const Profile& profile) {
  Rng rng(seed);
  switch (profile.kind) {
    case Profile::Kind::planted: return planted(rng, profile);
    case Profile::Kind::random: return unplanted(rng, profile);
    case Profile::Kind::empty: break;
  }
  return Generated{Problem::from_literals({}), SetAssignment{}};
}

Formula generate_flat(std::uint64_t seed, const FlatProfile& profile) {
  Rng rng(seed);
  const auto names = var_list(std::max<std::size_t>(profile.vars, 1));
  std::vector<Formula> leaves;
  for (std::size_t i = 0; i < profile.atoms; ++i)
    leaves.push_back(Formula::lit(random_flat_literal(rng, names)));
  if (leaves.empty()) return Formula::all({});
  if (!profile.connectives) return Formula::all(std::move(leaves));
  return random_tree(rng, leaves, 0, leaves.size());
}

}  // namespace bstkit::oracle
