// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include <nspec/lift.hpp>

#include <nspec/errors.hpp>
#include <nspec/par.hpp>

#include <algorithm>
#include <string>
#include <type_traits>

namespace nspec {

namespace {

constexpr long kMaxN = 150;  // dense T_N storage is O(N^4)

void check_envelope(long N) {
  if (N > kMaxN)
    throw ValidationError("N = " + std::to_string(N) +
                          " exceeds the supported envelope (" +
                          std::to_string(kMaxN) + ")");
}

}  // namespace

Rat lift_weight(long i, long j, long ip, long jp) {
  const long s = i + j, sp = ip + jp;
  if (sp > s) {
    const long k = ip - i, l = jp - j;
    const BigInt num = binomial(ip - 1, k) * binomial(jp - 1, l);
    if (num == 0) return Rat(0);
    return Rat(num, binomial(sp - 1, sp - s));
  }
  if (sp < s) {
    const long k = i - ip, l = j - jp;
    const BigInt num = binomial(i, k) * binomial(j, l);
    if (num == 0) return Rat(0);
    return Rat(num, binomial(s, s - sp));
  }
  return (i == ip) ? Rat(1) : Rat(0);
}

namespace {

template <typename Kernel, typename Matrix, typename Value>
void fill_lift_row(const Kernel& spec, const TriIndex& index, Matrix& pi,
                   long row) {
  const auto [i, j] = index.state(row);
  const long s = i + j;
  for (long flat = 0; flat < index.size(); ++flat) {
    const auto [ip, jp] = index.state(flat);
    const auto p = spec.at(s, ip + jp);
    if (p == Value(0)) continue;
    const Rat w = lift_weight(i, j, ip, jp);
    if (w == 0) continue;
    if constexpr (std::is_same_v<Value, double>)
      pi.at(row, flat) = to_double(w) * p;
    else
      pi.at(row, flat) = w * p;
  }
}

}  // namespace

LiftedChain lift_full(const KernelSpec& spec) {
  check_envelope(spec.N);
  TriIndex index(spec.N);
  Mat pi(index.size(), index.size());
  const long n = index.size();
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (long row = 0; row < n; ++row)
    fill_lift_row<KernelSpec, Mat, double>(spec, index, pi, row);
  return LiftedChain{std::move(index), std::move(pi)};
}

LiftedChain lift_full_serial(const KernelSpec& spec) {
  check_envelope(spec.N);
  TriIndex index(spec.N);
  Mat pi(index.size(), index.size());
  for (long row = 0; row < index.size(); ++row)
    fill_lift_row<KernelSpec, Mat, double>(spec, index, pi, row);
  return LiftedChain{std::move(index), std::move(pi)};
}

RatMat lift_full_exact(const RatKernel& spec) {
  check_envelope(spec.N);
  TriIndex index(spec.N);
  RatMat pi(index.size(), index.size());
  for (long row = 0; row < index.size(); ++row)
    fill_lift_row<RatKernel, RatMat, Rat>(spec, index, pi, row);
  return pi;
}

namespace {

// Entry multiplier of the degree-d companion matrix at (n, m).
Rat block_ratio(long d, long n, long m) {
  if (m > n) return Rat(binomial(m + d - 1, m - n), binomial(m - 1, m - n));
  if (m < n) return Rat(binomial(n - d, n - m), binomial(n, n - m));
  return Rat(1);
}

}  // namespace

BlockMatrix lift_block(const KernelSpec& spec, long d) {
  const long N = spec.N;
  if (d < 0 || d > N)
    throw ValidationError("block degree d = " + std::to_string(d) +
                          " outside 0..N");
  if (d == 0) {
    // The degree-0 companion is the kernel itself; the general entry
    // formula degenerates to 0/0 on the absorbing row.
    BlockMatrix block{0, N, Mat(N + 1, N + 1)};
    block.p.a = spec.rows;
    return block;
  }
  BlockMatrix block{d, N, Mat(N - d + 1, N - d + 1)};
  for (long n = d; n <= N; ++n)
    for (long m = d; m <= N; ++m) {
      const double p = spec.at(n, m);
      if (p == 0.0) continue;
      block.at(n, m) = to_double(block_ratio(d, n, m)) * p;
    }
  return block;
}

RatMat lift_block_exact(const RatKernel& spec, long d) {
  const long N = spec.N;
  if (d < 1 || d > N)
    throw ValidationError("block degree d = " + std::to_string(d) +
                          " outside 1..N");
  RatMat block(N - d + 1, N - d + 1);
  for (long n = d; n <= N; ++n)
    for (long m = d; m <= N; ++m) {
      const Rat& p = spec.at(n, m);
      if (p == 0) continue;
      block.at(n - d, m - d) = block_ratio(d, n, m) * p;
    }
  return block;
}

std::vector<double> block_measure(const ReversibleMeasure& mu, long d,
                                  long N) {
  std::vector<double> w(N + 1, 0.0);
  for (long n = std::max(d, 1L); n <= N; ++n)
    w[n] = 2.0 * n * to_double(Rat(binomial(n + d - 1, 2 * d - 1))) * mu.mu[n];
  return w;
}

std::vector<double> interior_measure(const ReversibleMeasure& mu,
                                     const TriIndex& index) {
  std::vector<double> w(index.size(), 0.0);
  for (long flat = 0; flat < index.size(); ++flat) {
    const auto [i, j] = index.state(flat);
    if (i < 1 || j < 1) continue;
    w[flat] = (i + j) * mu.mu[i + j] / static_cast<double>(i * j);
  }
  return w;
}

Restriction restrict_k(const LiftedChain& chain, long k) {
  const long N = chain.index.N();
  if (k < 1 || k > N)
    throw ValidationError("restriction level k = " + std::to_string(k) +
                          " outside 1..N");
  std::vector<long> states;
  for (long flat = 0; flat < chain.index.size(); ++flat) {
    const auto [i, j] = chain.index.state(flat);
    const bool keep = (k == 1) ? (i >= 1) : (i >= 1 && j >= 1 && i + j >= k);
    if (keep) states.push_back(flat);
  }
  if (states.empty()) throw EmptyDomainError("empty restriction domain");
  const long n = static_cast<long>(states.size());
  Mat m(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) m.at(r, c) = chain.pi.at(states[r], states[c]);
  return Restriction{std::move(states), std::move(m)};
}

KernelSpec truncate(const KernelSpec& spec, long Nprime) {
  const long N = spec.N;
  if (Nprime < 1 || Nprime > N)
    throw ValidationError("truncation level outside 1..N");
  KernelSpec t = spec;
  for (long n = 1; n <= N; ++n) {
    double removed = 0.0;
    for (long m = 1; m <= N; ++m) {
      if (n <= Nprime && m <= Nprime) continue;
      removed += t.at(n, m);
      t.at(n, m) = 0.0;
    }
    t.at(n, 0) += removed;
  }
  return t;
}

}  // namespace nspec
