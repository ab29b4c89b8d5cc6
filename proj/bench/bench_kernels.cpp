// Serial vs OpenMP timings for the three parallel kernels.

#include <chrono>
#include <cstdio>
#include <random>

#include <omp.h>

#include "bstkit/hf.hpp"
#include "bstkit/oracle.hpp"

namespace {

using namespace bstkit;
using Clock = std::chrono::steady_clock;

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t).count());
  }
  return best;
}

void row(const char* kernel, double serial, double parallel, bool agree) {
  std::printf("%-14s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n", kernel, serial, parallel,
              serial / parallel, agree ? "agree" : "DISAGREE");
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d, best of %d\n", omp_get_max_threads(), reps);

  const hf::LevelTable v5 = hf::enumerate_level(5);
  std::mt19937_64 rng(1);
  std::vector<hf::Triple> triples(200000);
  for (auto& t : triples)
    t = {v5.sets[rng() % v5.sets.size()], v5.sets[rng() % v5.sets.size()], v5.sets[rng() % v5.sets.size()]};
  hf::AxiomReport as, ap;
  const double a_s = best_of(reps, [&] { as = hf::check_axioms_serial(triples); });
  const double a_p = best_of(reps, [&] { ap = hf::check_axioms(triples); });
  row("check_axioms", a_s, a_p, as.checked == ap.checked && as.ok() == ap.ok());

  // An unsatisfiable flat formula forces the full 2^(vars*k) scan.
  Formula f = parse_formula("a sub b ; b sub c ; c sub a ; a != c");
  oracle::FlatResult fs, fp;
  const double f_s = best_of(reps, [&] { fs = oracle::flat_sat_serial(f, 6); });
  const double f_p = best_of(reps, [&] { fp = oracle::flat_sat(f, 6); });
  row("flat_sat", f_s, f_p, fs.status == fp.status && fs.assignments == fp.assignments);

  Problem p = parse_problem("a sub b ; b sub a ; a != b ; c = d \\ e");
  oracle::NestedOracleResult ns, np;
  const double n_s = best_of(reps, [&] { ns = oracle::nested_sat_serial(p, 4); });
  const double n_p = best_of(reps, [&] { np = oracle::nested_sat(p, 4); });
  row("nested_sat", n_s, n_p, ns.status == np.status);
  return 0;
}
