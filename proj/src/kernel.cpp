// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include <nspec/kernel.hpp>

#include <nspec/errors.hpp>
#include <nspec/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <string>

namespace nspec {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void validate(const KernelSpec& spec) {
  const long n_states = spec.N + 1;
  for (long n = 0; n < n_states; ++n) {
    double sum = 0.0;
    for (long m = 0; m < n_states; ++m) {
      const double v = spec.at(n, m);
      if (v < 0.0 || v > 1.0)
        throw ValidationError("entry (" + std::to_string(n) + "," +
                              std::to_string(m) + ") = " + fmt(v) +
                              " outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw ValidationError("row " + std::to_string(n) + " sums to " +
                            fmt(sum));
  }
  if (spec.at(0, 0) != 1.0) throw ValidationError("state 0 not absorbing");
}

}  // namespace

KernelSpec from_rows(const std::vector<std::vector<double>>& rows) {
  const long n_states = static_cast<long>(rows.size());
  if (n_states < 2) throw ValidationError("kernel needs at least 2 states");
  KernelSpec spec;
  spec.N = n_states - 1;
  spec.rows.assign(n_states * n_states, 0.0);
  for (long n = 0; n < n_states; ++n) {
    if (static_cast<long>(rows[n].size()) != n_states)
      throw ValidationError("row " + std::to_string(n) + " has " +
                            std::to_string(rows[n].size()) + " entries, want " +
                            std::to_string(n_states));
    for (long m = 0; m < n_states; ++m) spec.at(n, m) = rows[n][m];
  }
  validate(spec);
  return spec;
}

KernelSpec birth_death(const std::vector<double>& p,
                       const std::vector<double>& q, long N) {
  if (N < 1) throw ValidationError("birth_death needs N >= 1");
  if (static_cast<long>(p.size()) != N || static_cast<long>(q.size()) != N)
    throw ValidationError("birth_death needs N birth and N death entries");
  for (long k = 1; k <= N; ++k) {
    const double pk = p[k - 1], qk = q[k - 1];
    if (pk < 0.0 || qk < 0.0)
      throw ValidationError("negative rate at state " + std::to_string(k));
    if (pk + qk > 1.0)
      throw ValidationError("p+q = " + fmt(pk + qk) + " > 1 at state " +
                            std::to_string(k));
  }
  if (p[N - 1] != 0.0)
    throw ValidationError("p_N must be 0 (no growth beyond N)");
  KernelSpec spec;
  spec.N = N;
  spec.rows.assign((N + 1) * (N + 1), 0.0);
  spec.at(0, 0) = 1.0;
  for (long k = 1; k <= N; ++k) {
    const double pk = p[k - 1], qk = q[k - 1];
    if (k < N) spec.at(k, k + 1) = pk;
    spec.at(k, k - 1) = qk;
    spec.at(k, k) = 1.0 - pk - qk;
  }
  validate(spec);
  return spec;
}

ReversibleMeasure reversible_measure(const KernelSpec& spec) {
  const long N = spec.N;
  std::vector<double> mu(N + 1, 0.0);

  // Propagate detailed balance along a BFS tree of the interior graph, then
  // verify every edge. One-way edges (p_{ij} > 0, p_{ji} = 0) are an
  // immediate obstruction.
  for (long root = 1; root <= N; ++root) {
    if (mu[root] != 0.0) continue;
    mu[root] = 1.0;
    std::queue<long> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const long i = frontier.front();
      frontier.pop();
      for (long j = 1; j <= N; ++j) {
        if (j == i) continue;
        const double fwd = spec.at(i, j), bwd = spec.at(j, i);
        if (fwd == 0.0 && bwd == 0.0) continue;
        if (fwd == 0.0 || bwd == 0.0)
          throw NotReversibleError(
              i, j, std::max(fwd, bwd),
              "one-way transition between states " + std::to_string(i) +
                  " and " + std::to_string(j));
        if (mu[j] != 0.0) continue;
        mu[j] = mu[i] * fwd / bwd;
        frontier.push(j);
      }
    }
  }

  for (long i = 1; i <= N; ++i)
    for (long j = i + 1; j <= N; ++j) {
      const double a = mu[i] * spec.at(i, j);
      const double b = mu[j] * spec.at(j, i);
      const double scale = std::max(a, b);
      if (scale == 0.0) continue;
      const double defect = std::abs(a - b) / scale;
      if (defect > 1e-10)
        throw NotReversibleError(i, j, defect,
                                 "detailed balance fails between states " +
                                     std::to_string(i) + " and " +
                                     std::to_string(j) + " (relative defect " +
                                     fmt(defect) + ")");
    }

  return ReversibleMeasure{std::move(mu)};
}

KernelSpec random_kernel(std::uint64_t seed, long N, double absorption_mass) {
  if (N < 1) throw ValidationError("random_kernel needs N >= 1");
  if (absorption_mass <= 0.0 || absorption_mass >= 1.0)
    throw ValidationError("absorption_mass must lie in (0,1)");
  Rng rng(seed);
  std::vector<double> p(N, 0.0), q(N, 0.0);
  for (long k = 1; k < N; ++k) p[k - 1] = 0.10 + 0.35 * rng.uniform01();
  for (long k = 2; k <= N; ++k) q[k - 1] = 0.10 + 0.35 * rng.uniform01();
  q[0] = std::max(0.10 + 0.35 * rng.uniform01(), absorption_mass / N);
  if (N > 1) p[0] = std::min(p[0], 0.8 * (1.0 - q[0]));
  return birth_death(p, q, N);
}

}  // namespace nspec
