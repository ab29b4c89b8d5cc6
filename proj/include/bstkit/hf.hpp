#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bstkit::hf {

namespace detail {
struct Node;
}

/// Handle to an interned hereditarily finite set.
///
/// Every set is stored once in a process-wide intern table, so two handles
/// are equal exactly when the sets they denote are extensionally equal.
/// Members are kept in canonical order (rank first, then cardinality, then
/// lexicographically by member), which makes rendering deterministic.
/// Handles are trivially copyable and safe to share between threads.
class HFSet {
 public:
  /// The empty set.
  HFSet();

  /// Builds the set whose members are `members` (duplicates are fine).
  static HFSet of(std::vector<HFSet> members);

  std::span<const HFSet> members() const;
  std::size_t size() const;
  bool empty() const;
  int rank() const;
  std::size_t hash() const;

  /// True when `m` is a member of this set.
  bool contains(HFSet m) const;

  friend bool operator==(HFSet a, HFSet b) { return a.node_ == b.node_; }

 private:
  explicit HFSet(const detail::Node* n) : node_(n) {}
  friend struct detail::Node;
  friend HFSet intern(std::vector<HFSet>&& sorted_unique);

  const detail::Node* node_;
};

/// Strict total order used for canonical member ordering.
bool canonical_less(HFSet a, HFSet b);

HFSet empty_set();
HFSet singleton(HFSet a);
HFSet diff(HFSet a, HFSet b);
HFSet unite(HFSet a, HFSet b);
HFSet intersect(HFSet a, HFSet b);
bool member(HFSet a, HFSet b);  // a in b
bool subset(HFSet a, HFSet b);  // a subset-or-equal b
bool disjoint(HFSet a, HFSet b);
inline int rank(HFSet s) { return s.rank(); }

/// chain(0) = {}, chain(k+1) = {chain(k)}; rank(chain(k)) = k.
HFSet chain(int k);

/// Injects the nonempty variable subset with binary code `index` into the
/// sets of rank exactly `flat_rank`:
///   { chain(flat_rank-1) } + { chain(j) : bit j of index set }.
/// Requires 1 <= index < 2^(flat_rank-1).
HFSet im_inject(std::uint64_t index, int flat_rank);

/// Same map for subsets wider than 64 variables; `bits[j]` selects chain(j).
HFSet im_inject(const std::vector<bool>& bits, int flat_rank);

/// Brace notation, e.g. "{{},{{}}}".
std::string to_string(HFSet s);
HFSet parse_set(std::string_view text);

/// Number of sets currently interned (for diagnostics and tests).
std::size_t intern_count();

// ---------------------------------------------------------------------------
// Von Neumann levels
// ---------------------------------------------------------------------------

inline constexpr int kMaxEnumeratedLevel = 5;

/// All sets of V_n. Sets are listed in binary-code order over V_{n-1}: the
/// i-th set contains the j-th set of V_{n-1} iff bit j of i is set.
struct LevelTable {
  int n = 0;
  std::vector<HFSet> sets;
};

LevelTable enumerate_level(int n);

using BigInt = boost::multiprecision::cpp_int;

/// |V_n| by the recurrence |V_0| = 0, |V_{n+1}| = 2^|V_n|. Defined for n <= 6.
BigInt level_size(int n);

/// |V#_n| = |V_{n+1}| - |V_n|. Defined for n <= 5.
BigInt rank_count(int n);

// ---------------------------------------------------------------------------
// Level counting bounds and difference-algebra axioms
// ---------------------------------------------------------------------------

struct BoundRow {
  int n = 0;
  bool inequality_holds = false;       // 2^(2^n) >= 3*2^n - 2n
  bool rank_bound_checked = false;     // |V#_n| >= 2^(n-1) evaluated for this n
  bool rank_bound_holds = false;
  std::string rank_method;             // "enumeration", "recurrence", "monotone"
  std::string rank_count;              // decimal |V#_n| (or lower bound for "monotone")
};

struct BoundReport {
  std::vector<BoundRow> rows;
  std::vector<int> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the doubly exponential inequality for n <= n_max with big integers,
/// and |V#_n| >= 2^(n-1) by enumeration (n <= 4), by the exact recurrence
/// (n = 5) and by monotonicity of k -> 2^k - k (n = 6).
BoundReport bound_checks(int n_max);

struct Triple {
  HFSet x, y, z;
};

struct AxiomViolation {
  std::size_t index;  // position in the sample
  int axiom;          // 1..4
};

struct AxiomReport {
  std::size_t checked = 0;
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Difference-algebra axioms on each triple:
///   D.1  x \ (y \ y) = x
///   D.2  (x \ y) \ z = (x \ z) \ y
///   D.3  x \ (x \ y) = y \ (y \ x)
///   D.4  (x \ y) \ y = x \ y
/// The OpenMP kernel splits the sample across threads.
AxiomReport check_axioms(std::span<const Triple> sample);
AxiomReport check_axioms_serial(std::span<const Triple> sample);

}  // namespace bstkit::hf

template <>
struct std::hash<bstkit::hf::HFSet> {
  std::size_t operator()(bstkit::hf::HFSet s) const noexcept { return s.hash(); }
};
