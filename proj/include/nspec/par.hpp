// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nspec {

// Worker count for parallel regions: the OpenMP default, capped by the
// NEUTRAL_SPECTRA_THREADS environment variable when set. Always >= 1.
inline int worker_count() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* cap = std::getenv("NEUTRAL_SPECTRA_THREADS")) {
    const int c = std::atoi(cap);
    if (c >= 1 && c < n) n = c;
  }
  return n;
}

}  // namespace nspec
