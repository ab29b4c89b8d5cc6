#include "bstkit/sat.hpp"

#include <algorithm>
#include <sstream>

#include "bstkit/error.hpp"

namespace bstkit::sat {

std::string CnfInstance::to_dimacs() const {
  std::ostringstream out;
  out << "p cnf " << num_vars << ' ' << clauses.size() << '\n';
  for (const auto& c : clauses) {
    for (int l : c) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

CnfInstance parse_dimacs(std::string_view text) {
  CnfInstance cnf;
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<int> current;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      std::size_t nclauses = 0;
      ls >> p >> fmt >> cnf.num_vars >> nclauses;
      if (fmt != "cnf") throw ParseError(1, 1, "DIMACS: expected 'p cnf'");
      header = true;
      continue;
    }
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
      } else {
        cnf.num_vars = std::max(cnf.num_vars, std::abs(lit));
        current.push_back(lit);
      }
    }
  }
  if (!header) throw ParseError(1, 1, "DIMACS: missing header");
  if (!current.empty()) cnf.clauses.push_back(std::move(current));
  return cnf;
}

bool satisfies(const CnfInstance& cnf, const std::vector<bool>& model) {
  for (const auto& c : cnf.clauses) {
    bool sat = false;
    for (int l : c)
      if (l > 0 ? model[l] : !model[-l]) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

CnfInstance pigeonhole(int pigeons, int holes) {
  CnfInstance cnf;
  auto var = [holes](int p, int h) { return p * holes + h + 1; };
  cnf.num_vars = pigeons * holes;
  for (int p = 0; p < pigeons; ++p) {
    std::vector<int> c;
    for (int h = 0; h < holes; ++h) c.push_back(var(p, h));
    cnf.add(std::move(c));
  }
  for (int h = 0; h < holes; ++h)
    for (int p = 0; p < pigeons; ++p)
      for (int q = p + 1; q < pigeons; ++q) cnf.add({-var(p, h), -var(q, h)});
  return cnf;
}

namespace {

using Lit = int;  // 2 * var + sign, var 0-based

Lit to_lit(int d) { return d > 0 ? 2 * (d - 1) : 2 * (-d - 1) + 1; }
int var_of(Lit l) { return l >> 1; }
Lit negate(Lit l) { return l ^ 1; }

constexpr int kNoReason = -1;
constexpr signed char kUndef = -1;

class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>& act) : act_(act) {}

  void resize(int n) { pos_.assign(n, -1); }
  bool contains(int v) const { return pos_[v] >= 0; }
  bool empty() const { return heap_.empty(); }

  void insert(int v) {
    if (contains(v)) return;
    pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    up(pos_[v]);
  }

  void increased(int v) {
    if (contains(v)) up(pos_[v]);
  }

  int pop() {
    int top = heap_.front();
    heap_.front() = heap_.back();
    pos_[heap_.front()] = 0;
    heap_.pop_back();
    pos_[top] = -1;
    if (!heap_.empty()) down(0);
    return top;
  }

 private:
  bool better(int a, int b) const { return act_[a] > act_[b] || (act_[a] == act_[b] && a < b); }
  void up(int i) {
    int v = heap_[i];
    while (i > 0) {
      int parent = (i - 1) / 2;
      if (!better(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    pos_[v] = i;
  }
  void down(int i) {
    int v = heap_[i];
    int n = static_cast<int>(heap_.size());
    while (true) {
      int child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && better(heap_[child + 1], heap_[child])) ++child;
      if (!better(heap_[child], v)) break;
      heap_[i] = heap_[child];
      pos_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  const std::vector<double>& act_;
  std::vector<int> heap_;
  std::vector<int> pos_;
};

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

class Solver {
 public:
  Solver(const CnfInstance& cnf, SolverOptions opts)
      : opts_(opts), n_(cnf.num_vars), heap_(activity_) {
    assign_.assign(n_, kUndef);
    level_.assign(n_, 0);
    reason_.assign(n_, kNoReason);
    phase_.assign(n_, 0);
    seen_.assign(n_, 0);
    activity_.assign(n_, 0.0);
    watches_.resize(2 * static_cast<std::size_t>(n_));
    heap_.resize(n_);
    if (opts_.activity)
      for (int v = 0; v < n_; ++v) heap_.insert(v);

    for (const auto& dc : cnf.clauses) {
      std::vector<Lit> c;
      for (int d : dc) {
        if (d == 0 || std::abs(d) > n_) throw PreconditionError("CNF literal out of range");
        c.push_back(to_lit(d));
      }
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      bool tautology = false;
      for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] == negate(c[i - 1])) tautology = true;
      if (tautology) continue;
      if (!add_clause(std::move(c))) {
        ok_ = false;
        return;
      }
    }
  }

  SolveResult run() {
    SolveResult res;
    if (ok_ && propagate() != kNoReason) ok_ = false;
    if (!ok_) {
      res.status = Status::Unsat;
      res.stats = stats_;
      return res;
    }
    int restart_round = 0;
    std::uint64_t conflicts_until_restart = opts_.activity ? static_cast<std::uint64_t>(100 * luby(2, 0)) : 0;
    while (true) {
      int confl = propagate();
      if (confl != kNoReason) {
        ++stats_.conflicts;
        if (decision_level() == 0) {
          res.status = Status::Unsat;
          break;
        }
        std::vector<Lit> learnt;
        int bt = analyze(confl, learnt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          int ci = static_cast<int>(clauses_.size());
          clauses_.push_back(learnt);
          watches_[learnt[0]].push_back(ci);
          watches_[learnt[1]].push_back(ci);
          enqueue(learnt[0], ci);
        }
        ++stats_.learned;
        if (opts_.activity) {
          var_inc_ /= 0.95;
          if (conflicts_until_restart > 0 && --conflicts_until_restart == 0) {
            cancel_until(0);
            conflicts_until_restart = static_cast<std::uint64_t>(100 * luby(2, ++restart_round));
          }
        }
        continue;
      }
      int v = pick_branch();
      if (v < 0) {
        res.status = Status::Sat;
        res.model.assign(static_cast<std::size_t>(n_) + 1, false);
        for (int i = 0; i < n_; ++i) res.model[i + 1] = assign_[i] == 1;
        break;
      }
      ++stats_.decisions;
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      Lit l = 2 * v + (opts_.activity && phase_[v] ? 0 : 1);
      enqueue(l, kNoReason);
    }
    res.stats = stats_;
    return res;
  }

 private:
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  // 1 true, 0 false, -1 unassigned
  int value(Lit l) const {
    signed char a = assign_[var_of(l)];
    if (a == kUndef) return -1;
    return a ^ (l & 1);
  }

  void enqueue(Lit l, int reason) {
    int v = var_of(l);
    assign_[v] = static_cast<signed char>((l & 1) ^ 1);
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(l);
  }

  bool add_clause(std::vector<Lit> c) {
    if (c.empty()) return false;
    if (c.size() == 1) {
      int val = value(c[0]);
      if (val == 0) return false;
      if (val == -1) enqueue(c[0], kNoReason);
      return true;
    }
    int ci = static_cast<int>(clauses_.size());
    watches_[c[0]].push_back(ci);
    watches_[c[1]].push_back(ci);
    clauses_.push_back(std::move(c));
    return true;
  }

  int propagate() {
    while (qhead_ < trail_.size()) {
      Lit p = trail_[qhead_++];
      ++stats_.propagations;
      Lit fl = negate(p);
      auto& ws = watches_[fl];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        int ci = ws[i++];
        auto& c = clauses_[ci];
        if (c[0] == fl) std::swap(c[0], c[1]);
        if (value(c[0]) == 1) {
          ws[j++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) != 0) {
            std::swap(c[1], c[k]);
            watches_[c[1]].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = ci;
        if (value(c[0]) == 0) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return ci;
        }
        enqueue(c[0], ci);
      }
      ws.resize(j);
    }
    return kNoReason;
  }

  void bump(int v) {
    if (!opts_.activity) return;
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (auto& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    heap_.increased(v);
  }

  int analyze(int confl, std::vector<Lit>& learnt) {
    learnt.assign(1, 0);
    int path = 0;
    Lit p = -1;
    int idx = static_cast<int>(trail_.size()) - 1;
    int ci = confl;
    do {
      const auto& c = clauses_[ci];
      for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
        Lit q = c[k];
        int v = var_of(q);
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        bump(v);
        if (level_[v] == decision_level()) ++path;
        else learnt.push_back(q);
      }
      while (!seen_[var_of(trail_[idx])]) --idx;
      p = trail_[idx--];
      ci = reason_[var_of(p)];
      seen_[var_of(p)] = 0;
      --path;
    } while (path > 0);
    learnt[0] = negate(p);

    int bt = 0;
    if (learnt.size() > 1) {
      std::size_t best = 1;
      for (std::size_t k = 2; k < learnt.size(); ++k)
        if (level_[var_of(learnt[k])] > level_[var_of(learnt[best])]) best = k;
      std::swap(learnt[1], learnt[best]);
      bt = level_[var_of(learnt[1])];
    }
    for (std::size_t k = 1; k < learnt.size(); ++k) seen_[var_of(learnt[k])] = 0;
    return bt;
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[lvl]; --i) {
      int v = var_of(trail_[i]);
      phase_[v] = static_cast<signed char>(assign_[v]);
      assign_[v] = kUndef;
      reason_[v] = kNoReason;
      if (opts_.activity) heap_.insert(v);
      else cursor_ = std::min(cursor_, v);
    }
    trail_.resize(trail_lim_[lvl]);
    trail_lim_.resize(lvl);
    qhead_ = trail_.size();
  }

  int pick_branch() {
    if (opts_.activity) {
      while (!heap_.empty()) {
        int v = heap_.pop();
        if (assign_[v] == kUndef) return v;
      }
      return -1;
    }
    while (cursor_ < n_ && assign_[cursor_] != kUndef) ++cursor_;
    return cursor_ < n_ ? cursor_ : -1;
  }

  SolverOptions opts_;
  int n_;
  bool ok_ = true;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<signed char> assign_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<signed char> phase_;
  std::vector<char> seen_;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  VarHeap heap_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  int cursor_ = 0;
  SolveStats stats_;
};

}  // namespace

SolveResult solve(const CnfInstance& cnf, SolverOptions options) {
  Solver s(cnf, options);
  return s.run();
}

}  // namespace bstkit::sat
