#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bstkit/syntax.hpp"

namespace bstkit {

/// The flat conjunction produced from a problem (phi, psi), over the problem
/// variables and one auxiliary variable ~v for each of them.
struct XiFormula {
  enum class Family : std::uint8_t {
    NotSubset,        // x nsub y                       for x = {y} in psi
    InclusionGuard,   // ndisj(x,v) -> x sub v          for x = {y}, v
    RankGuard,        // ndisj(x,v) -> ~y ssub ~v       for x = {y}, v
    AtomEquality,     // (y = y') <-> (x = x')          for distinct atom pairs
    TildeEquality,    // x = y -> ~x = ~y               for distinct variable pairs
  };

  struct Conjunct {
    Family family;
    Formula formula;
  };

  std::vector<Conjunct> conjuncts;
  /// Vars(phi & psi) followed by their tilde counterparts, in the same order.
  std::vector<Var> vars;
  std::vector<Var> tilde_vars;

  std::size_t size() const { return conjuncts.size(); }
  Formula as_formula() const;
  /// One conjunct per line in the BST+ surface syntax.
  std::string print() const;
};

/// Emits, in order: the nsub family, the two guard families (interleaved per
/// (atom, v) pair), the atom-equality family over unordered pairs of distinct
/// atoms and the tilde-equality family over unordered pairs of distinct
/// variables. Runs in time quadratic in the number of variables.
XiFormula translate(const Problem& p);

/// Closed-form conjunct count p + 2pn + p(p-1)/2 + n(n-1)/2.
std::uint64_t translate_size(std::uint64_t n, std::uint64_t p);

/// phi (core literals) conjoined with the translation: the flat formula
/// whose satisfiability matches that of phi & psi.
Formula flat_formula(const Problem& p, const XiFormula& xi);

}  // namespace bstkit
