// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <utility>
#include <vector>

#include "nspec/eigen_poly.hpp"
#include "nspec/matrix.hpp"
#include "nspec/poly.hpp"
#include "nspec/rational.hpp"
#include "nspec/triangle.hpp"

namespace nspec {

// Three-colors Moran urn on the triangle {(i, j) : i, j >= 0, i + j <= N}.
// One step picks an ordered pair of balls and repaints the second with the
// color of the first, so from (i, j) with r = N - i - j the chain moves to
//
//   (i + 1, j), (i - 1, j)          with probability i r / N^2 each,
//   (i, j + 1), (i, j - 1)          with probability j r / N^2 each,
//   (i + 1, j - 1), (i - 1, j + 1)  with probability i j / N^2 each,
//
// and stays put with probability (i^2 + j^2 + r^2) / N^2. All entries are
// exact rationals with denominator N^2.
struct MoranSpec {
  long N = 0;
  TriIndex index;
  RatMat pi;

  explicit MoranSpec(long n) : N(n), index(n) {}
};

// Builds the exact transition matrix. Requires N >= 2.
MoranSpec moran_matrix(long N);

// Double-precision copy of the transition matrix, for the floating tools.
Mat moran_matrix_double(const MoranSpec& spec);

// The full spectrum as (eigenvalue, multiplicity) pairs in decreasing order:
// eigenvalue 1 with multiplicity 3, then 1 - k(k-1)/N^2 with multiplicity
// k + 1 for k = 2..N. Multiplicities add up to (N+1)(N+2)/2.
std::vector<std::pair<Rat, long>> predicted_spectrum(long N);

// The univariate factor R_n^{(N,d)} of degree n - 1 appearing in the
// eigenvectors that carry a dependence on the number of unpainted balls:
// (N - X) R_n^{(N,d)}(X) equals the Hahn polynomial Q_n(X - d; 2d-1, -1,
// N-d+1). Requires 0 <= d <= N - 1 and 1 <= n <= N - d.
//
// For d >= 1 the Hahn series is evaluated directly (beta = -1 never lands
// in a denominator). For d = 0 the Hahn parameter alpha = 2d - 1 = -1 makes
// the series itself degenerate, so the factor is recovered as the unique
// polynomial solution of the three-term recurrence
//
//   -n(n-1) u(k) = k (N - k) (u(k+1) - 2 u(k) + u(k-1)),  u = (N - X) R,
//
// normalized to a monic R (the Hahn route, where defined, is normalized by
// Q_n(0) = 1 instead).
UniPoly r_polynomial(long N, long d, long n);

// One member of the eigenbasis: the vector of exact values over the
// triangle, indexed by MoranSpec::index, together with its labels. Vectors
// with n = 0 evaluate the bivariate eigen-polynomial of degree d alone;
// vectors with n >= 1 multiply it by (N - i - j) R_n^{(N,d)}(i + j). The
// eigenvalue is 1 - (d+n)(d+n-1)/N^2.
struct MoranVector {
  long d = 0;
  long n = 0;
  Rat theta;
  std::vector<Rat> v;
};

// The complete claimed eigenbasis: d = 0..N with n = 0 (for d = 1 the first
// of the two degree-one polynomials, namely X), plus d = 0..N-1 with
// n = 1..N-d. Exactly (N+1)(N+2)/2 vectors.
std::vector<MoranVector> moran_eigenvectors(long N);

// Outcome of the exact verification of the eigen-structure.
struct MoranReport {
  long N = 0;
  long vectors = 0;
  bool residuals_zero = false;
  bool full_rank = false;
  bool spectrum_matches = false;
  bool ok = false;
};

// Assembles every claimed eigenvector, checks pi v = theta v in rational
// arithmetic with zero residual, checks that the family has full rank over
// the rationals, and compares the resulting eigenvalue multiset against
// predicted_spectrum. Together the three checks pin the spectrum of the
// matrix exactly; in particular the eigenspace of 1 - k(k-1)/N^2 has
// dimension exactly k + 1 for k >= 2.
MoranReport verify_eigen(long N);

// Two-colors Moran urn on {0..N}: from state k the chain moves to k - 1 or
// k + 1 with probability k(N-k)/N^2 each and stays otherwise. Its spectrum
// is 1 - k(k-1)/N^2 for k = 0..N with eigenvalue 1 appearing twice; the
// non-constant eigenvectors are ((N - k) R_n^{(N,0)}(k))_{k=0..N}.
RatMat urn2_matrix(long N);

// The claimed eigenbasis of the two-colors urn: the constant vector, then
// one vector per n = 1..N as above. N + 1 vectors in total.
std::vector<std::vector<Rat>> urn2_eigenvectors(long N);

}  // namespace nspec
