// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <nspec/kernel.hpp>
#include <nspec/lift.hpp>
#include <nspec/matrix.hpp>
#include <nspec/triangle.hpp>

#include <vector>

namespace nspec {

// Interior restriction of a one-dimensional kernel: rows and columns 1..N.
Mat interior(const KernelSpec& spec);

struct EigenSys {
  std::vector<double> values;                // descending
  std::vector<std::vector<double>> vectors;  // right eigenvectors, w-orthonormal
};

// Full spectrum of a w-self-adjoint matrix: symmetrize by the diagonal
// similarity D^{1/2} M D^{-1/2}, run cyclic Jacobi rotations to machine
// precision, and map the orthonormal frame back to right eigenvectors of M.
// Throws NotSymmetrizableError when the symmetrized matrix is asymmetric
// beyond 1e-8 of its Frobenius norm.
EigenSys sym_eigen(const Mat& m, const std::vector<double>& w);

struct PerronPair {
  double theta = 0.0;
  std::vector<double> right;  // entry-wise positive, scaled so left.right = 1
  std::vector<double> left;   // entry-wise positive, scaled so left.1 = 1
};

// Maximal eigenvalue of an irreducible nonnegative matrix with its positive
// right and left eigenvectors, by power iteration from the all-ones vector.
// Periodic matrices are iterated through the lazy half-step (M+I)/2, which
// shares eigenvectors and maps the root by theta -> (theta+1)/2.
PerronPair perron_pair(const Mat& m, double tol = 1e-12);

// Spectral radius of any nonnegative matrix: the maximum of the Perron
// roots over strongly connected components.
double spectral_radius(const Mat& m, double tol = 1e-12);

std::vector<std::vector<long>> strongly_connected_components(const Mat& m);
bool is_irreducible(const Mat& m);

// Period of an irreducible nonnegative matrix: gcd of its cycle lengths.
long period(const Mat& m);

// ||M|| as an operator on l^2(w), for w-self-adjoint M: the largest
// eigenvalue magnitude of the symmetrized matrix.
double weighted_operator_norm(const Mat& m, const std::vector<double>& w);

// Smallest singular value of the matrix whose columns are the given vectors
// scaled to unit Euclidean length.
double smallest_singular_value_of_columns(
    const std::vector<std::vector<double>>& cols);

struct AssembledVector {
  double theta = 0.0;
  long d = 0;
  std::vector<double> v;  // over T_N, sup-norm 1
};

// Eigenbasis of the lifted chain, assembled degree by degree: the constant
// vector, the interior spectrum extended by zero at the origin, and for
// each d >= 1 the block eigenvectors spread over the triangle through the
// degree-d eigen-polynomial profile v_(i,j) = P_d(i,j) u_{i+j}. The count
// is always (N+1)(N+2)/2.
struct AssembledBasis {
  TriIndex index;
  std::vector<AssembledVector> vectors;
};

AssembledBasis assemble_basis(const KernelSpec& spec,
                              const ReversibleMeasure& mu);

}  // namespace nspec
