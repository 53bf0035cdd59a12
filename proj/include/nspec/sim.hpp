// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nspec/kernel.hpp"
#include "nspec/qsd.hpp"
#include "nspec/rng.hpp"

namespace nspec {

struct SimConfig {
  std::uint64_t seed = 0;
  long long trials = 1;
  long horizon = 0;
  long init_i = 0;
  long init_j = 0;
};

// One step of the neutral two-type dynamics without materializing the
// lifted matrix: the total moves by the one-dimensional kernel, added
// individuals copy the type of a uniformly chosen existing one (Polya urn),
// and removed individuals are a uniform subset (hypergeometric).
std::pair<long, long> step_neutral(const KernelSpec& spec, long i, long j,
                                   Rng& rng);

// One step of an arbitrary absorbed chain by CDF inversion over the row.
std::pair<long, long> step_general(const A2dMCSpec& spec, long i, long j,
                                   Rng& rng);

struct ConditionalSample {
  std::vector<long long> counts;   // non-absorbed endpoints, per flat state
  std::vector<double> histogram;   // counts / survivors; zero when none
  long long survivors = 0;
  long long trials = 0;
  bool no_survivors = false;
};

// Monte Carlo estimate of the law at the horizon conditioned on survival.
// Trial t draws from the derived stream(seed, t), so results are identical
// no matter how many threads run the trials or in which order.
ConditionalSample sample_conditional(const A2dMCSpec& spec,
                                     const SimConfig& cfg);
ConditionalSample sample_conditional(const KernelSpec& spec,
                                     const SimConfig& cfg);

}  // namespace nspec
