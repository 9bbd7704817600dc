// Compares the serial reference kernels against their OpenMP versions on
// inputs large enough to amortize thread startup. Results must be bitwise
// identical; timing differences are the point of the exercise.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "statlie/sweep.hpp"

using namespace statlie;

namespace {

double time_once(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double best_of(int reps, const std::function<void()>& fn) {
  double best = time_once(fn);
  for (int i = 1; i < reps; ++i) best = std::min(best, time_once(fn));
  return best;
}

void report(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-22s %10.3f ms %10.3f ms %8.2fx   %s\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel, identical ? "bitwise equal" : "MISMATCH");
}

bool same(const SweepResult& a, const SweepResult& b) {
  return a.n_total == b.n_total && a.n_random == b.n_random &&
         a.n_family_injected == b.n_family_injected &&
         a.n_family_detected == b.n_family_detected &&
         a.n_disagreements == b.n_disagreements && a.n_mismatches == b.n_mismatches &&
         a.max_family_residual == b.max_family_residual &&
         a.min_offfamily_residual == b.min_offfamily_residual;
}

bool same(const GridResult& a, const GridResult& b) {
  return a.max_fisher_abs == b.max_fisher_abs && a.max_fisher_scaled == b.max_fisher_scaled &&
         a.max_cubic_abs == b.max_cubic_abs && a.max_cubic_scaled == b.max_cubic_scaled &&
         a.max_offdiag == b.max_offdiag && a.max_mu_dependence == b.max_mu_dependence;
}

}  // namespace

int main(int argc, char** argv) {
  int scale = 1;
  if (argc > 1) scale = std::max(1, std::atoi(argv[1]));

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; parallel mode falls back to the serial path\n");
#endif
  std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    SweepConfig cfg;
    cfg.n_random = 20000 * scale;
    cfg.n_family = 2000 * scale;
    SweepResult rs, rp;
    const double ts = best_of(3, [&] { rs = run_structure_sweep(cfg, ExecMode::serial); });
    const double tp = best_of(3, [&] { rp = run_structure_sweep(cfg, ExecMode::parallel); });
    report("structure sweep", ts, tp, same(rs, rp));
  }

  {
    GridConfig cfg;
    cfg.n_mu = 100 * scale;
    cfg.n_sigma = 100;
    GridResult rs, rp;
    const double ts = best_of(3, [&] { rs = run_fisher_grid(cfg, ExecMode::serial); });
    const double tp = best_of(3, [&] { rp = run_fisher_grid(cfg, ExecMode::parallel); });
    report("quadrature grid", ts, tp, same(rs, rp));
  }

  return 0;
}
