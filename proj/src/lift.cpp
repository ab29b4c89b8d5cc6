#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>

#include "bstkit/models.hpp"

namespace bstkit {

using hf::HFSet;

namespace {

std::vector<std::string> with_tildes(const Problem& p) {
  std::vector<std::string> out = p.var_names();
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back(tilde_name(out[i]));
  return out;
}

bool rank_in_window(int r, int i, int flat_rank) {
  return (r >= 0 && r <= i) || (r >= flat_rank + 1 && r <= flat_rank + 1 + i);
}

void check_iteration(const Problem& p, const Formula& flat, const AtomOrder& ord0,
                     const SetAssignment& next, const std::vector<bool>& processed, int i,
                     int flat_rank) {
  auto broken = [i](const std::string& what) {
    throw LiftInvariantBroken("lift iteration " + std::to_string(i) + ": " + what);
  };
  std::vector<HFSet> processed_rhs;
  for (std::size_t j = 0; j < p.psi.size(); ++j) {
    if (!processed[j]) continue;
    if (!evaluate(next, p.psi[j])) broken("processed atom '" + print(p.psi[j]) + "' is false");
    processed_rhs.push_back(next.at(p.psi[j].y()));
  }
  for (const auto& v : p.var_names()) {
    HFSet value = next.at(v);
    if (!rank_in_window(value.rank(), i, flat_rank))
      broken("rank " + std::to_string(value.rank()) + " of '" + v + "' outside the window");
    for (HFSet s : value.members()) {
      if (s.rank() == flat_rank) continue;
      if (std::find(processed_rhs.begin(), processed_rhs.end(), s) == processed_rhs.end())
        broken("'" + v + "' has a member that is neither flat nor a processed right-hand value");
    }
  }
  if (!evaluate(next, flat)) broken("model no longer satisfies phi & Xi");
  try {
    if (order(p.psi, next).edge != ord0.edge) broken("atom order changed");
  } catch (const CycleDetected&) {
    broken("atom order became cyclic");
  }
}

}  // namespace

LiftResult lift(const Problem& p, const SetAssignment& m0, const FlatParams& params,
                LiftOptions options) {
  const bool debug = options.debug_asserts || debug_asserts_from_env();
  const int flat_rank = params.flat_rank;
  const std::size_t n = p.vars.size();
  const std::size_t m = p.psi.size();
  if (flat_rank <= static_cast<int>(2 * n) || flat_rank <= static_cast<int>(m))
    throw PreconditionError("lift: flat rank " + std::to_string(flat_rank) +
                            " must exceed both 2n = " + std::to_string(2 * n) +
                            " and |psi| = " + std::to_string(m));

  const XiFormula xi = translate(p);
  const Formula flat = flat_formula(p, xi);
  SetAssignment cur = m0.restricted(with_tildes(p));
  if (!is_flat(cur, flat_rank))
    throw PreconditionError("lift: initial model is not " + std::to_string(flat_rank) + "-flat");
  if (!evaluate(cur, flat))
    throw PreconditionError("lift: initial model does not satisfy phi & Xi");

  AtomOrder ord;
  try {
    ord = order(p.psi, cur);
  } catch (const CycleDetected& e) {
    throw LiftInvariantBroken(std::string("lift: initial order: ") + e.what());
  }

  LiftResult out;
  std::vector<bool> processed(m, false);
  std::size_t remaining = m;
  for (int i = 1; remaining > 0; ++i) {
    std::size_t pick = m;
    for (std::size_t k = 0; k < m && pick == m; ++k) {
      if (processed[k]) continue;
      bool minimal = true;
      for (std::size_t j = 0; j < m && minimal; ++j)
        if (j != k && !processed[j] && ord.closure[j][k]) minimal = false;
      if (minimal) pick = k;
    }
    const Literal& atom = p.psi[pick];

    SetAssignment next;
    try {
      next = transform(cur, atom.x(), atom.y());
    } catch (const TransformPrecondition& e) {
      throw LiftInvariantBroken(std::string("lift: ") + e.what());
    }

    LiftStep step{atom, {}, {}};
    for (std::size_t j = 0; j < m; ++j) {
      if (next.at(p.psi[j].x()) == cur.at(p.psi[j].x())) continue;
      if (processed[j] && debug)
        throw LiftInvariantBroken("lift: processed atom '" + print(p.psi[j]) + "' changed");
      if (!processed[j]) {
        processed[j] = true;
        --remaining;
      }
      step.satisfied.push_back(p.psi[j]);
    }
    if (!processed[pick])
      throw LiftInvariantBroken("lift: atom '" + print(atom) + "' left unchanged");

    if (debug) check_iteration(p, flat, ord, next, processed, i, flat_rank);
    if (options.keep_steps) {
      step.after = next;
      out.steps.push_back(std::move(step));
    }
    cur = std::move(next);
  }

  out.model = cur.restricted(p.var_names());
  if (!evaluate_core(out.model, p))
    throw LiftInvariantBroken("lift: final model does not satisfy phi & psi");
  return out;
}

SetAssignment extend(const SetAssignment& m, const Problem& p) {
  const std::vector<std::string> vars = p.var_names();
  SetAssignment base = m.restricted(vars);
  if (!evaluate_core(base, p))
    throw PreconditionError("extend: assignment does not satisfy phi & psi");

  const std::size_t n = vars.size();
  std::vector<HFSet> vals;
  for (const auto& v : vars) vals.push_back(base.at(v));
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) below[u][v] = vals[v].contains(vals[u]);
  for (std::size_t mid = 0; mid < n; ++mid)
    for (std::size_t u = 0; u < n; ++u)
      if (below[u][mid])
        for (std::size_t v = 0; v < n; ++v)
          if (below[mid][v]) below[u][v] = true;

  SetAssignment out = base;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<HFSet> members;
    for (std::size_t u = 0; u < n; ++u)
      if (below[u][v]) members.push_back(vals[u]);
    out.set(tilde_name(vars[v]), HFSet::of(std::move(members)));
  }
  if (!evaluate(out, translate(p).as_formula()))
    throw Error("extend: extended assignment does not satisfy the translation");
  return out;
}

int pipeline_flat_rank(const Problem& p) {
  return static_cast<int>(2 * p.vars.size() + p.psi.size() + 2);
}

NestedResult solve_nested(const Problem& p, const NestedOptions& options) {
  using Clock = std::chrono::steady_clock;
  auto ms_since = [](Clock::time_point t) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
  };
  NestedResult out;

  auto t = Clock::now();
  const XiFormula xi = translate(p);
  const Formula flat = flat_formula(p, xi);
  out.xi_conjuncts = xi.size();
  out.times.translate_ms = ms_since(t);

  t = Clock::now();
  const std::vector<std::string> cols = with_tildes(p);
  DecideResult dec = decide(flat, DecideOptions{cols, options.solver});
  out.status = dec.status;
  out.atoms = dec.atoms;
  out.cnf_vars = dec.cnf_vars;
  out.cnf_clauses = dec.cnf_clauses;
  out.times.decide_ms = ms_since(t);
  if (!dec.sat()) return out;

  t = Clock::now();
  out.flat_rank = pipeline_flat_rank(p);
  FlatModel fm = flatten(dec.model, cols, out.flat_rank);
  out.times.flatten_ms = ms_since(t);

  t = Clock::now();
  LiftResult lr = lift(p, fm.assignment, fm.params, options.lift);
  out.times.lift_ms = ms_since(t);
  if (!evaluate(lr.model, p))
    throw Error("solve_nested: lifted model does not satisfy the input literals");
  out.model = std::move(lr.model);
  out.steps = std::move(lr.steps);
  return out;
}

bool debug_asserts_from_env() {
  const char* v = std::getenv("BSTKIT_DEBUG_ASSERTS");
  return v != nullptr && std::strcmp(v, "1") == 0;
}

}  // namespace bstkit
