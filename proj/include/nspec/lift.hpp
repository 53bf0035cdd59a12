// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <nspec/kernel.hpp>
#include <nspec/matrix.hpp>
#include <nspec/rational.hpp>
#include <nspec/triangle.hpp>

#include <vector>

namespace nspec {

// The two-type chain on the triangle T_N driven by a one-dimensional kernel:
// reproduction events add individuals by Polya-urn allocation and removal
// events take a uniform subset, so the pair (type-1 count, type-2 count) is
// Markov and its coordinate sum moves by the original kernel.
struct LiftedChain {
  TriIndex index;
  Mat pi;
};

// Exact combinatorial weight of the move (i,j) -> (ip,jp): the conditional
// probability of that type split given the total moves from i+j to ip+jp.
// Upward moves use Polya-urn counts, downward moves hypergeometric counts;
// same-total moves have weight 1 on the diagonal and 0 elsewhere. Relies on
// the binomial convention binom(n,0)=1 for all n, which makes axis rows
// reproduce the one-dimensional kernel exactly.
Rat lift_weight(long i, long j, long ip, long jp);

LiftedChain lift_full(const KernelSpec& spec);
LiftedChain lift_full_serial(const KernelSpec& spec);

// The degree-d companion matrix on {d..N}: entry (n,m) is a binomial-ratio
// multiple of p_{n,m}. Its spectrum is a slice of the lifted chain's.
struct BlockMatrix {
  long d = 0;
  long N = 0;
  Mat p;  // (N-d+1) square; (n,m) stored at (n-d, m-d)

  double at(long n, long m) const { return p.at(n - d, m - d); }
  double& at(long n, long m) { return p.at(n - d, m - d); }
};

BlockMatrix lift_block(const KernelSpec& spec, long d);

// Exact twins over the rationals, for ground-truth identities.
struct RatKernel {
  long N = 0;
  std::vector<Rat> rows;  // (N+1) x (N+1), row-major

  const Rat& at(long n, long m) const { return rows[n * (N + 1) + m]; }
  Rat& at(long n, long m) { return rows[n * (N + 1) + m]; }
};

RatMat lift_full_exact(const RatKernel& spec);
RatMat lift_block_exact(const RatKernel& spec, long d);

// Weights making the companion matrices self-adjoint when the interior of
// the one-dimensional kernel is mu-reversible. Indexed by state; entries
// outside the domain are zero.
std::vector<double> block_measure(const ReversibleMeasure& mu, long d, long N);
std::vector<double> interior_measure(const ReversibleMeasure& mu,
                                     const TriIndex& index);

// Principal submatrix on the survival domains: k=1 keeps every state with
// i >= 1; k >= 2 keeps the interior states with i+j >= k.
struct Restriction {
  std::vector<long> states;  // flat TriIndex positions, ascending
  Mat m;
};

Restriction restrict_k(const LiftedChain& chain, long k);

// Zeroes the interior entries with a row or column index above Nprime and
// adds the removed mass to the absorption column, so the result is again a
// valid kernel. Interior differences against the original are unaffected by
// that rebalancing.
KernelSpec truncate(const KernelSpec& spec, long Nprime);

}  // namespace nspec
