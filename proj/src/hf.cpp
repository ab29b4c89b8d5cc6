#include "bstkit/hf.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <deque>
#include <mutex>
#include <unordered_map>

#include "bstkit/error.hpp"

namespace bstkit::hf {

namespace detail {

struct Node {
  std::vector<HFSet> members;
  int rank = 0;
  std::size_t hash = 0;

  static HFSet handle(const Node* n) { return HFSet(n); }
};

}  // namespace detail

namespace {

using detail::Node;

std::size_t mix(std::size_t h, std::size_t v) {
  std::uint64_t x = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return static_cast<std::size_t>(x);
}

std::size_t hash_members(const std::vector<HFSet>& ms) {
  std::size_t h = mix(0x51ed2701, ms.size());
  for (const auto& m : ms) h = mix(h, m.hash());
  return h;
}

const Node* empty_node() {
  static const Node node{{}, 0, hash_members({})};
  return &node;
}

constexpr std::size_t kShards = 64;

struct Shard {
  std::mutex mu;
  std::deque<Node> storage;
  std::unordered_multimap<std::size_t, const Node*> index;
};

std::array<Shard, kShards>& shards() {
  static std::array<Shard, kShards> table;
  return table;
}

std::atomic<std::size_t> g_count{1};

}  // namespace

// Members must already be canonically sorted and duplicate-free.
HFSet intern(std::vector<HFSet>&& ms) {
  if (ms.empty()) return HFSet();
  std::size_t h = hash_members(ms);
  Shard& shard = shards()[h % kShards];
  std::lock_guard lock(shard.mu);
  auto [lo, hi] = shard.index.equal_range(h);
  for (auto it = lo; it != hi; ++it)
    if (it->second->members == ms) return Node::handle(it->second);
  int r = 0;
  for (const auto& m : ms) r = std::max(r, m.rank() + 1);
  Node& n = shard.storage.emplace_back(Node{std::move(ms), r, h});
  shard.index.emplace(h, &n);
  g_count.fetch_add(1, std::memory_order_relaxed);
  return Node::handle(&n);
}

HFSet::HFSet() : node_(empty_node()) {}

HFSet HFSet::of(std::vector<HFSet> members) {
  std::sort(members.begin(), members.end(), canonical_less);
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return intern(std::move(members));
}

std::span<const HFSet> HFSet::members() const { return node_->members; }
std::size_t HFSet::size() const { return node_->members.size(); }
bool HFSet::empty() const { return node_->members.empty(); }
int HFSet::rank() const { return node_->rank; }
std::size_t HFSet::hash() const { return node_->hash; }

bool HFSet::contains(HFSet m) const {
  const auto& ms = node_->members;
  auto it = std::lower_bound(ms.begin(), ms.end(), m, canonical_less);
  return it != ms.end() && *it == m;
}

bool canonical_less(HFSet a, HFSet b) {
  if (a == b) return false;
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  if (a.size() != b.size()) return a.size() < b.size();
  auto ma = a.members();
  auto mb = b.members();
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (ma[i] == mb[i]) continue;
    return canonical_less(ma[i], mb[i]);
  }
  return false;
}

HFSet empty_set() { return HFSet(); }

HFSet singleton(HFSet a) { return intern({a}); }

HFSet diff(HFSet a, HFSet b) {
  if (b.empty() || a.empty()) return a;
  std::vector<HFSet> out;
  out.reserve(a.size());
  std::set_difference(a.members().begin(), a.members().end(), b.members().begin(),
                      b.members().end(), std::back_inserter(out), canonical_less);
  if (out.size() == a.size()) return a;
  return intern(std::move(out));
}

HFSet unite(HFSet a, HFSet b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<HFSet> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                 std::back_inserter(out), canonical_less);
  return intern(std::move(out));
}

HFSet intersect(HFSet a, HFSet b) {
  if (a.empty() || b.empty()) return HFSet();
  std::vector<HFSet> out;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                        b.members().end(), std::back_inserter(out), canonical_less);
  return intern(std::move(out));
}

bool member(HFSet a, HFSet b) { return b.contains(a); }

bool subset(HFSet a, HFSet b) {
  if (a.size() > b.size()) return false;
  return std::includes(b.members().begin(), b.members().end(), a.members().begin(),
                       a.members().end(), canonical_less);
}

bool disjoint(HFSet a, HFSet b) {
  auto ia = a.members().begin(), ea = a.members().end();
  auto ib = b.members().begin(), eb = b.members().end();
  while (ia != ea && ib != eb) {
    if (*ia == *ib) return false;
    if (canonical_less(*ia, *ib)) ++ia;
    else ++ib;
  }
  return true;
}

HFSet chain(int k) {
  if (k < 0) throw PreconditionError("chain: negative depth " + std::to_string(k));
  HFSet s;
  for (int i = 0; i < k; ++i) s = singleton(s);
  return s;
}

HFSet im_inject(const std::vector<bool>& bits, int flat_rank) {
  if (flat_rank < 1) throw PreconditionError("im_inject: flat rank must be positive");
  bool any = false;
  std::vector<HFSet> ms;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (!bits[j]) continue;
    if (static_cast<int>(j) > flat_rank - 2)
      throw PreconditionError("im_inject: subset code does not fit below rank " +
                              std::to_string(flat_rank));
    any = true;
    ms.push_back(chain(static_cast<int>(j)));
  }
  if (!any) throw PreconditionError("im_inject: empty subset has no image");
  ms.push_back(chain(flat_rank - 1));
  return HFSet::of(std::move(ms));
}

HFSet im_inject(std::uint64_t index, int flat_rank) {
  std::vector<bool> bits;
  for (std::uint64_t v = index; v; v >>= 1) bits.push_back(v & 1);
  return im_inject(bits, flat_rank);
}

namespace {

void render(HFSet s, std::string& out) {
  out += '{';
  bool first = true;
  for (auto m : s.members()) {
    if (!first) out += ',';
    first = false;
    render(m, out);
  }
  out += '}';
}

}  // namespace

std::string to_string(HFSet s) {
  std::string out;
  render(s, out);
  return out;
}

namespace {

class BraceParser {
 public:
  explicit BraceParser(std::string_view t) : t_(t) {}

  HFSet parse() {
    HFSet s = set();
    skip();
    if (i_ != t_.size()) fail("trailing input");
    return s;
  }

 private:
  void skip() {
    while (i_ < t_.size() && (t_[i_] == ' ' || t_[i_] == '\t' || t_[i_] == '\n')) ++i_;
  }
  [[noreturn]] void fail(const char* what) {
    throw ParseError(1, i_ + 1, std::string("set literal: ") + what);
  }
  HFSet set() {
    skip();
    if (i_ >= t_.size() || t_[i_] != '{') fail("expected '{'");
    ++i_;
    std::vector<HFSet> ms;
    skip();
    if (i_ < t_.size() && t_[i_] == '}') {
      ++i_;
      return HFSet();
    }
    while (true) {
      ms.push_back(set());
      skip();
      if (i_ < t_.size() && t_[i_] == ',') {
        ++i_;
        continue;
      }
      if (i_ < t_.size() && t_[i_] == '}') {
        ++i_;
        break;
      }
      fail("expected ',' or '}'");
    }
    return HFSet::of(std::move(ms));
  }

  std::string_view t_;
  std::size_t i_ = 0;
};

}  // namespace

HFSet parse_set(std::string_view text) { return BraceParser(text).parse(); }

std::size_t intern_count() { return g_count.load(std::memory_order_relaxed); }

// ---------------------------------------------------------------------------

LevelTable enumerate_level(int n) {
  if (n < 0 || n > kMaxEnumeratedLevel)
    throw PreconditionError("enumerate_level: level " + std::to_string(n) +
                            " outside 0.." + std::to_string(kMaxEnumeratedLevel));
  std::vector<HFSet> level;
  for (int k = 0; k < n; ++k) {
    std::vector<HFSet> next;
    const std::uint64_t count = std::uint64_t{1} << level.size();
    next.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      std::vector<HFSet> ms;
      for (std::size_t j = 0; j < level.size(); ++j)
        if (mask >> j & 1) ms.push_back(level[j]);
      next.push_back(HFSet::of(std::move(ms)));
    }
    level = std::move(next);
  }
  return LevelTable{n, std::move(level)};
}

BigInt level_size(int n) {
  if (n < 0 || n > 6) throw PreconditionError("level_size: level outside 0..6");
  BigInt size = 0;
  for (int k = 0; k < n; ++k) {
    BigInt next = 1;
    next <<= static_cast<unsigned>(size);
    size = next;
  }
  return size;
}

BigInt rank_count(int n) {
  if (n < 0 || n > 5) throw PreconditionError("rank_count: rank outside 0..5");
  return level_size(n + 1) - level_size(n);
}

BoundReport bound_checks(int n_max) {
  if (n_max < 1 || n_max > 24) throw PreconditionError("bound_checks: n_max outside 1..24");
  BoundReport report;
  for (int n = 1; n <= n_max; ++n) {
    BoundRow row;
    row.n = n;
    BigInt lhs = 1;
    lhs <<= (1u << n);
    BigInt pow_n = BigInt(1) << n;
    row.inequality_holds = lhs >= 3 * pow_n - 2 * n;

    BigInt floor = BigInt(1) << (n - 1);
    if (n <= 4) {
      auto table = enumerate_level(n + 1);
      std::size_t c = std::count_if(table.sets.begin(), table.sets.end(),
                                    [n](HFSet s) { return s.rank() == n; });
      row.rank_bound_checked = true;
      row.rank_bound_holds = BigInt(c) >= floor;
      row.rank_method = "enumeration";
      row.rank_count = std::to_string(c);
    } else if (n == 5) {
      BigInt c = rank_count(5);
      row.rank_bound_checked = true;
      row.rank_bound_holds = c >= floor;
      row.rank_method = "recurrence";
      row.rank_count = c.str();
    } else if (n == 6) {
      // |V#_6| = 2^k - k with k = |V_6| >= 6, and 2^k - k is increasing.
      bool k_large = level_size(6) >= 6;
      BigInt low = (BigInt(1) << 6) - 6;
      row.rank_bound_checked = true;
      row.rank_bound_holds = k_large && low >= floor;
      row.rank_method = "monotone";
      row.rank_count = ">=" + low.str();
    }
    if (!row.inequality_holds || (row.rank_bound_checked && !row.rank_bound_holds))
      report.violations.push_back(n);
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

void check_triple(const Triple& t, std::size_t index, std::vector<AxiomViolation>& out) {
  const HFSet x = t.x, y = t.y, z = t.z;
  if (diff(x, diff(y, y)) != x) out.push_back({index, 1});
  if (diff(diff(x, y), z) != diff(diff(x, z), y)) out.push_back({index, 2});
  if (diff(x, diff(x, y)) != diff(y, diff(y, x))) out.push_back({index, 3});
  if (diff(diff(x, y), y) != diff(x, y)) out.push_back({index, 4});
}

}  // namespace

AxiomReport check_axioms_serial(std::span<const Triple> sample) {
  AxiomReport report;
  for (std::size_t i = 0; i < sample.size(); ++i) check_triple(sample[i], i, report.violations);
  report.checked = sample.size();
  return report;
}

AxiomReport check_axioms(std::span<const Triple> sample) {
  AxiomReport report;
  const auto count = static_cast<std::int64_t>(sample.size());
#pragma omp parallel
  {
    std::vector<AxiomViolation> local;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < count; ++i)
      check_triple(sample[static_cast<std::size_t>(i)], static_cast<std::size_t>(i), local);
#pragma omp critical(bstkit_axioms)
    report.violations.insert(report.violations.end(), local.begin(), local.end());
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const AxiomViolation& a, const AxiomViolation& b) {
              return a.index != b.index ? a.index < b.index : a.axiom < b.axiom;
            });
  report.checked = sample.size();
  return report;
}

}  // namespace bstkit::hf
