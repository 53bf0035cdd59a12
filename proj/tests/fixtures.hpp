// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <cmath>
#include <vector>

#include "nspec/matrix.hpp"
#include "nspec/qsd.hpp"
#include "nspec/triangle.hpp"

// Hand-sized absorbed chains on the N = 2 triangle, one per classification
// branch. Each has two states per axis and the single interior state (1,1),
// so every eigen-quantity can be checked against pencil-and-paper values.
namespace fixtures {

inline nspec::Mat mat1(double a) {
  nspec::Mat m(1, 1);
  m.at(0, 0) = a;
  return m;
}

inline nspec::Mat mat2(double a, double b, double c, double d) {
  nspec::Mat m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

inline nspec::Mat row2(double a, double b) {
  nspec::Mat m(1, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  return m;
}

inline nspec::A2dMCSpec assemble(const nspec::Mat& q1, const nspec::Mat& q2,
                                 const nspec::Mat& q3, const nspec::Mat& r1,
                                 const nspec::Mat& r2) {
  const nspec::TriIndex index(2);
  return nspec::extract_blocks(index,
                               nspec::a2dmc_matrix(index, q1, q2, q3, r1, r2));
}

// theta1 = theta2 = 0.3 < theta3 = 0.6. The conditioned chain settles on
// interior mass 3/7 with axis tails w1 = (13/30, 7/30) and its mirror.
inline nspec::A2dMCSpec coexistence_chain() {
  const nspec::Mat axis = mat2(0.2, 0.1, 0.1, 0.2);
  return assemble(axis, axis, mat1(0.6), row2(0.15, 0.05), row2(0.05, 0.15));
}

// theta1 = 0.3 > theta2 = 0.15, but theta3 = 0.6 still dominates.
inline nspec::A2dMCSpec skewed_coexistence_chain() {
  return assemble(mat2(0.2, 0.1, 0.1, 0.2), mat2(0.1, 0.05, 0.05, 0.1),
                  mat1(0.6), row2(0.15, 0.05), row2(0.05, 0.15));
}

// theta1 = 0.3 beats both theta2 = 0.15 and theta3 = 0.25.
inline nspec::A2dMCSpec dominant_axis1_chain() {
  return assemble(mat2(0.2, 0.1, 0.1, 0.2), mat2(0.1, 0.05, 0.05, 0.1),
                  mat1(0.25), row2(0.15, 0.05), row2(0.05, 0.15));
}

inline nspec::A2dMCSpec dominant_axis2_chain() {
  return assemble(mat2(0.1, 0.05, 0.05, 0.1), mat2(0.2, 0.1, 0.1, 0.2),
                  mat1(0.25), row2(0.05, 0.15), row2(0.15, 0.05));
}

// theta1 = theta2 = 0.3 > theta3 = 0.2; the mixture weight from (1,1) is
// p = 0.3/0.1 / (0.3/0.1 + 0.1/0.1) = 3/4.
inline nspec::A2dMCSpec start_mixed_tie_chain() {
  const nspec::Mat axis = mat2(0.2, 0.1, 0.1, 0.2);
  return assemble(axis, axis, mat1(0.2), row2(0.25, 0.05), row2(0.05, 0.05));
}

// All three eigenvalues equal (bitwise: the interior entry is the same
// floating sum 7e-7 + 3e-7 the axis root evaluates to). The coupling rows
// are multiples of the axis left eigenvector, which kills every geometric
// correction, so the 1/n-rate mixture q = 0.5/0.9 = 5/9 is reached to
// within theta/(0.9 n) at horizon n.
inline nspec::A2dMCSpec equal_tie_chain() {
  const double a = 7e-7, b = 3e-7;
  const nspec::Mat axis = mat2(a, b, b, a);
  return assemble(axis, axis, mat1(a + b), row2(0.25, 0.25), row2(0.2, 0.2));
}

// theta2/theta1 - 1 = 1e-8 sits between the equality and strictness
// tolerances, so classification must flag the band and report both answers.
inline nspec::A2dMCSpec band_tie_chain() {
  const double s = 1.0 + 1e-8;
  return assemble(mat2(0.2, 0.1, 0.1, 0.2),
                  mat2(0.2 * s, 0.1 * s, 0.1 * s, 0.2 * s), mat1(0.2),
                  row2(0.25, 0.05), row2(0.05, 0.05));
}

inline double tv_distance(const std::vector<double>& a,
                          const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
  return 0.5 * s;
}

}  // namespace fixtures
