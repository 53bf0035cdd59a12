// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

// Compares the OpenMP kernels against their serial references: the lift of
// a one-dimensional kernel onto the triangle, and the Monte Carlo
// conditional sampler. Usage: bench_parallel [N] [trials].

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "nspec/kernel.hpp"
#include "nspec/lift.hpp"
#include "nspec/sim.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double>(elapsed).count();
}

}  // namespace

int main(int argc, char** argv) {
  const long N = argc > 1 ? std::atol(argv[1]) : 60;
  const long long trials = argc > 2 ? std::atoll(argv[2]) : 400000;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("N = %ld, trials = %lld, threads = %d\n", N, trials, threads);

  const nspec::KernelSpec spec = nspec::random_kernel(1, N, 0.3);

  auto start = std::chrono::steady_clock::now();
  const nspec::LiftedChain serial = nspec::lift_full_serial(spec);
  const double t_serial = seconds_since(start);

  start = std::chrono::steady_clock::now();
  const nspec::LiftedChain parallel = nspec::lift_full(spec);
  const double t_parallel = seconds_since(start);

  const bool lift_equal = serial.pi.a == parallel.pi.a;
  std::printf("lift_full      serial %8.3f s   parallel %8.3f s   "
              "speedup %5.2fx   identical: %s\n",
              t_serial, t_parallel, t_serial / t_parallel,
              lift_equal ? "yes" : "NO");

  nspec::SimConfig cfg;
  cfg.seed = 7;
  cfg.trials = trials;
  cfg.horizon = 50;
  cfg.init_i = N / 3;
  cfg.init_j = N / 3;

#ifdef _OPENMP
  omp_set_num_threads(1);
#endif
  start = std::chrono::steady_clock::now();
  const nspec::ConditionalSample one = nspec::sample_conditional(spec, cfg);
  const double t_one = seconds_since(start);
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
  start = std::chrono::steady_clock::now();
  const nspec::ConditionalSample many = nspec::sample_conditional(spec, cfg);
  const double t_many = seconds_since(start);

  const bool sim_equal = one.counts == many.counts;
  std::printf("conditional MC 1 thread %7.3f s   %d threads %7.3f s   "
              "speedup %5.2fx   identical: %s\n",
              t_one, threads, t_many, t_one / t_many,
              sim_equal ? "yes" : "NO");

  return lift_equal && sim_equal ? 0 : 1;
}
