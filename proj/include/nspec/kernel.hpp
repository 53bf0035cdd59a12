// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <cstdint>
#include <vector>

namespace nspec {

// One-dimensional transition kernel on {0, ..., N} with 0 absorbing: the
// dynamics of the total population size.
struct KernelSpec {
  long N = 0;
  std::vector<double> rows;  // (N+1) x (N+1), row-major

  double at(long n, long m) const { return rows[n * (N + 1) + m]; }
  double& at(long n, long m) { return rows[n * (N + 1) + m]; }
};

// Positive weights on the interior states {1..N} satisfying detailed
// balance; mu[0] is unused and zero so that mu[n] is the weight of state n.
struct ReversibleMeasure {
  std::vector<double> mu;
};

// Validates and wraps a full matrix: rows stochastic within 1e-12, state 0
// absorbing, entries in [0,1].
KernelSpec from_rows(const std::vector<std::vector<double>>& rows);

// Tridiagonal kernel from birth probabilities p_1..p_N and death
// probabilities q_1..q_N (vectors of length N, index k-1 holding the
// probability at state k); p_N must be 0. q_1 is the absorption route.
KernelSpec birth_death(const std::vector<double>& p,
                       const std::vector<double>& q, long N);

// Detailed-balance weights with mu = 1 at the first state of each connected
// component of the interior transition graph. Throws NotReversibleError
// with the first violated pair. For tridiagonal kernels with positive
// off-diagonals this reduces to mu_{k+1} = mu_k p_k / q_{k+1}.
ReversibleMeasure reversible_measure(const KernelSpec& spec);

// Seeded birth-death test kernel: strictly positive sub- and super-diagonal
// bands in the interior (so the interior restriction is irreducible) and
// absorption from state 1 of at least absorption_mass / N.
KernelSpec random_kernel(std::uint64_t seed, long N, double absorption_mass);

}  // namespace nspec
