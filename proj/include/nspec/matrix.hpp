// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <nspec/rational.hpp>

#include <vector>

namespace nspec {

// Dense row-major matrix of doubles.
struct Mat {
  long rows = 0, cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(long r, long c) : rows(r), cols(c), a(r * c, 0.0) {}

  double at(long i, long j) const { return a[i * cols + j]; }
  double& at(long i, long j) { return a[i * cols + j]; }

  static Mat identity(long n);
  Mat transposed() const;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat operator*(double s, Mat a);

std::vector<double> mat_vec(const Mat& m, const std::vector<double>& x);
std::vector<double> vec_mat(const std::vector<double>& x, const Mat& m);
double dot(const std::vector<double>& a, const std::vector<double>& b);

// LU factorization with partial pivoting. Throws SingularMatrixError when a
// pivot vanishes to working precision.
struct Lu {
  Mat lu;
  std::vector<long> perm;
};

Lu lu_factor(Mat m);
std::vector<double> lu_solve(const Lu& f, std::vector<double> b);
Mat lu_inverse(const Lu& f);

// Dense matrix with exact rational entries, for the ground-truth routes.
struct RatMat {
  long rows = 0, cols = 0;
  std::vector<Rat> a;

  RatMat() = default;
  RatMat(long r, long c) : rows(r), cols(c), a(r * c, Rat(0)) {}

  const Rat& at(long i, long j) const { return a[i * cols + j]; }
  Rat& at(long i, long j) { return a[i * cols + j]; }
};

RatMat operator*(const RatMat& a, const RatMat& b);
std::vector<Rat> mat_vec(const RatMat& m, const std::vector<Rat>& x);
bool operator==(const RatMat& a, const RatMat& b);

// Rank over the rationals by Gaussian elimination; exact.
long rational_rank(RatMat m);

}  // namespace nspec
