// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace nspec {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Binomial coefficient with the extended convention used by the lifted
// transition kernel:
//
//   binom(n, 0) = 1 for every integer n, including negative n,
//   binom(n, k) = 0 if k < 0,
//   binom(n, k) = 0 if n >= 0 and k > n,
//   binom(n, k) = 0 if n < 0 and k > 0.
//
// Equivalently, for n < 0 the only nonzero value is at k = 0. This is what
// makes the axis rows of the lifted kernel reproduce the one-dimensional
// kernel exactly: the combinatorial weight of splitting k offspring among a
// colony of size 0 is zero unless k = 0.
inline BigInt binomial(long n, long k) {
  if (k < 0) return 0;
  if (k == 0) return 1;
  if (n < 0) return 0;
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long t = 1; t <= k; ++t) {
    r *= n - k + t;
    r /= t;
  }
  return r;
}

inline BigInt factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of a negative integer");
  BigInt r = 1;
  for (long t = 2; t <= n; ++t) r *= t;
  return r;
}

// Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.
inline Rat pochhammer(const Rat& a, long k) {
  if (k < 0) throw std::domain_error("pochhammer with negative length");
  Rat r = 1;
  Rat f = a;
  for (long t = 0; t < k; ++t) {
    r *= f;
    f += 1;
  }
  return r;
}

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

}  // namespace nspec
