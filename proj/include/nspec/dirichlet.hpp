// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <string>
#include <vector>

#include "nspec/kernel.hpp"
#include "nspec/lift.hpp"

namespace nspec {

// Maximal Dirichlet eigenvalue of the lifted chain on the domain kept by
// restrict_k: the spectral radius of the restricted matrix, computed from
// Perron data (per irreducible class when the restriction is reducible).
double theta_dirichlet(const LiftedChain& chain, long k);

// Spectral radius of the d-th diagonal block of the lifted chain. d = 0 is
// the one-dimensional kernel itself, so the value is 1.
double theta_block(const KernelSpec& spec, long d);

enum class Verdict { Equal, Strict, Indeterminate };

enum class RelationKind { Equality, Ordering };

// One edge of the ordering diagram. `margin` is lhs - rhs. For Ordering
// relations `hypothesis` records whether the irreducibility condition that
// forces a strict decrease was satisfied by this kernel; `ok` then demands
// a Strict verdict, otherwise only that the weak inequality holds.
struct OrderingRelation {
  std::string name;
  RelationKind kind = RelationKind::Ordering;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::Indeterminate;
  bool hypothesis = false;
  bool ok = false;
};

struct OrderingReport {
  long N = 0;
  std::vector<double> theta_d;      // Dirichlet radii, k = 1..N
  std::vector<double> theta_b;      // block radii, d = 0..N
  std::vector<OrderingRelation> relations;
  bool all_ok = true;
};

// Computes both eigenvalue sequences and checks every relation of the
// ordering diagram: the equalities at k = 1, 2 and N, the domination of
// block radii by Dirichlet radii in between, monotonicity of both
// sequences, and strictness wherever the restricted one-dimensional kernel
// on {k..N} is irreducible.
OrderingReport ordering_report(const KernelSpec& spec);

}  // namespace nspec
