// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include "nspec/sim.hpp"

#include <vector>

#include "nspec/errors.hpp"
#include "nspec/triangle.hpp"

namespace nspec {

namespace {

// Index of the sampled column under CDF inversion. Row sums can differ
// from 1 by rounding, so a draw past the accumulated mass lands on the
// last positive entry.
template <typename Row>
long sample_row(Row entry, long cols, Rng& rng) {
  const double u = rng.uniform01();
  double acc = 0.0;
  long last = 0;
  for (long c = 0; c < cols; ++c) {
    const double p = entry(c);
    if (p <= 0.0) continue;
    acc += p;
    last = c;
    if (u < acc) return c;
  }
  return last;
}

template <typename StepFn>
ConditionalSample conditional_core(const TriIndex& index,
                                   const SimConfig& cfg, StepFn step) {
  if (cfg.trials < 1) throw ValidationError("trials must be >= 1");
  if (cfg.horizon < 0) throw ValidationError("horizon must be >= 0");
  if (!index.contains(cfg.init_i, cfg.init_j))
    throw ValidationError("initial state outside the triangle");

  const long size = index.size();
  ConditionalSample out;
  out.trials = cfg.trials;
  out.counts.assign(static_cast<std::size_t>(size), 0);

  const Rng master(cfg.seed);
#pragma omp parallel
  {
    std::vector<long long> local(static_cast<std::size_t>(size), 0);
#pragma omp for schedule(static)
    for (long long t = 0; t < cfg.trials; ++t) {
      Rng rng = master.stream(static_cast<std::uint64_t>(t));
      long i = cfg.init_i;
      long j = cfg.init_j;
      for (long n = 0; n < cfg.horizon && (i != 0 || j != 0); ++n) {
        const auto [ni, nj] = step(i, j, rng);
        i = ni;
        j = nj;
      }
      if (i != 0 || j != 0)
        ++local[static_cast<std::size_t>(index.index(i, j))];
    }
#pragma omp critical
    for (long k = 0; k < size; ++k)
      out.counts[static_cast<std::size_t>(k)] +=
          local[static_cast<std::size_t>(k)];
  }

  for (long long c : out.counts) out.survivors += c;
  out.histogram.assign(static_cast<std::size_t>(size), 0.0);
  if (out.survivors == 0) {
    out.no_survivors = true;
  } else {
    for (long k = 0; k < size; ++k)
      out.histogram[static_cast<std::size_t>(k)] =
          static_cast<double>(out.counts[static_cast<std::size_t>(k)]) /
          static_cast<double>(out.survivors);
  }
  return out;
}

}  // namespace

std::pair<long, long> step_neutral(const KernelSpec& spec, long i, long j,
                                   Rng& rng) {
  const long s = i + j;
  if (s < 0 || s > spec.N || i < 0 || j < 0)
    throw ValidationError("state outside the triangle");
  const long m = sample_row([&](long c) { return spec.at(s, c); },
                            spec.N + 1, rng);
  long ci = i, cj = j;
  for (long t = s; t < m; ++t) {
    if (rng.uniform_int(static_cast<std::uint64_t>(t)) <
        static_cast<std::uint64_t>(ci))
      ++ci;
    else
      ++cj;
  }
  for (long t = s; t > m; --t) {
    if (rng.uniform_int(static_cast<std::uint64_t>(t)) <
        static_cast<std::uint64_t>(ci))
      --ci;
    else
      --cj;
  }
  return {ci, cj};
}

std::pair<long, long> step_general(const A2dMCSpec& spec, long i, long j,
                                   Rng& rng) {
  if (!spec.index.contains(i, j))
    throw ValidationError("state outside the triangle");
  const long row = spec.index.index(i, j);
  const long next = sample_row([&](long c) { return spec.pi.at(row, c); },
                               spec.index.size(), rng);
  return spec.index.state(next);
}

ConditionalSample sample_conditional(const A2dMCSpec& spec,
                                     const SimConfig& cfg) {
  return conditional_core(spec.index, cfg, [&](long i, long j, Rng& rng) {
    return step_general(spec, i, j, rng);
  });
}

ConditionalSample sample_conditional(const KernelSpec& spec,
                                     const SimConfig& cfg) {
  return conditional_core(TriIndex(spec.N), cfg,
                          [&](long i, long j, Rng& rng) {
                            return step_neutral(spec, i, j, rng);
                          });
}

}  // namespace nspec
