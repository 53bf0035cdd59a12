// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <nspec/poly.hpp>
#include <nspec/rational.hpp>

namespace nspec {

// A polynomial of the form sign * sqrt(scale_sq) * core, with core exact
// rational and scale_sq a positive rational. The eigen-polynomials P_d carry
// an irrational normalization constant; keeping its square exact lets every
// identity that is quadratic in P_d be checked in rational arithmetic.
struct ScaledPoly {
  int sign = 1;
  Rat scale_sq = 1;
  BiPoly core;

  double scale() const;  // sign * sqrt(scale_sq)
  double eval(double x, double y) const;
};

// Same carrier for univariate sections of P_d.
struct ScaledUniPoly {
  int sign = 1;
  Rat scale_sq = 1;
  UniPoly core;
};

// The rational core psi_d of the degree-d eigen-polynomial, d >= 2, from its
// terminating hypergeometric expansion
//
//   psi_d(X,Y) = sum_{k=1}^{d} (-d)_k (d-1)_k / ((k-1)! k!)
//                  * (-X)_k * (-X-Y+k)_{d-k}.
BiPoly eigen_core(int d);

// P_d itself. P_0 = 1; for d = 1 the eigenspace is two-dimensional and the
// flag selects between the spanning pair X (default) and Y. For d >= 2,
// P_d = (-1)^{d+1} sqrt(4(2d-1)/(d(d-1))) * psi_d.
ScaledPoly build_P(int d, bool second = false);

// Point evaluation of P_d: the core is evaluated exactly, then scaled and
// rounded to double once.
double eval_P(int d, long i, long j);

// H_d(w) := [P_d]_d((1+w)/2, (1-w)/2), the top homogeneous part of P_d on
// the simplex line. Satisfies (1-w^2) H'' + d(d-1) H = 0 exactly and has the
// parity of d; both are enforced by tests, not by construction.
ScaledUniPoly hahn_H(int d);

// Hahn polynomial value Q_n(x; alpha, beta, N) from the terminating sum
//
//   sum_k (-n)_k (-x)_k (n+alpha+beta+1)_k / ((alpha+1)_k (-N+1)_k k!).
//
// The sum stops as soon as a numerator factor vanishes; a vanishing
// denominator factor before that point raises PoleError. beta never appears
// in a denominator, so beta = -1 is fine.
Rat hahn_Q(long n, const Rat& alpha, const Rat& beta, long N, const Rat& x);

// The same sum with x left symbolic: Q_n(x; alpha, beta, N) as a polynomial.
UniPoly hahn_poly(long n, const Rat& alpha, const Rat& beta, long N);

// Exact rational part of sum_{i=1}^{k-1} P_d(i,k-i) P_d2(i,k-i) / (i(k-i)):
// the product of the two cores summed over the slice. The full sum is this
// value times sign_d sign_d2 sqrt(scale_sq_d * scale_sq_d2).
Rat orthogonality_core_sum(int d, int d2, long k);

// The full weighted sum as a double.
double orthogonality_sum(int d, int d2, long k);

}  // namespace nspec
