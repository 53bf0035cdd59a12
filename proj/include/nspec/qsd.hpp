// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <string>
#include <vector>

#include "nspec/kernel.hpp"
#include "nspec/lift.hpp"
#include "nspec/matrix.hpp"
#include "nspec/triangle.hpp"

namespace nspec {

// An absorbed two-dimensional chain in block form. The origin (0,0) is
// absorbing, each axis is absorbing as a set, and after ordering states as
// axis-1 (i,0) for i = 1..N, axis-2 (0,j) for j = 1..N, then the interior
// in lexicographic order, the non-origin part of the matrix reads
//
//   [ q1   0    0  ]
//   [ 0    q2   0  ]
//   [ r1   r2   q3 ]
//
// with the leftover row mass going to the origin (the `absorb` column).
struct BlockFlags {
  bool irreducible = false;
  bool aperiodic = false;
};

struct A2dMCSpec {
  explicit A2dMCSpec(TriIndex idx) : index(idx) {}

  TriIndex index;
  Mat pi;                        // full matrix over the triangle
  std::vector<long> axis1;       // flat index of (i,0), i = 1..N
  std::vector<long> axis2;       // flat index of (0,j), j = 1..N
  std::vector<long> inter;       // flat indices of the interior, lex order
  Mat q1, q2, q3, r1, r2;
  std::vector<double> absorb;    // mass to the origin, per flat state
  BlockFlags f1, f2, f3;
  bool r1_nonzero = false;
  bool r2_nonzero = false;
};

// Splits a full triangle matrix into the block form above. Validates row
// stochasticity, the absorbing origin, and the axis block zeros; records
// (without enforcing) the irreducibility and aperiodicity of each diagonal
// block and whether the coupling blocks are nonzero.
A2dMCSpec extract_blocks(const TriIndex& index, const Mat& pi);
A2dMCSpec extract_blocks(const LiftedChain& chain);

// Rebuilds the full matrix from blocks, routing missing row mass to the
// origin. The inverse of extract_blocks up to that absorption column.
Mat a2dmc_matrix(const TriIndex& index, const Mat& q1, const Mat& q2,
                 const Mat& q3, const Mat& r1, const Mat& r2);

enum class YaglomCase {
  Axis1Initial,
  Axis2Initial,
  StrongType1,   // theta1 >= theta3 and theta1 > theta2
  StrongType2,   // theta2 >= theta3 and theta2 > theta1
  Coexistence,   // theta3 > theta1, theta2
  TieAboveQ3,    // theta1 = theta2 > theta3, mix depends on the start
  TieEqualsQ3,   // theta1 = theta2 = theta3, universal mix
};

const char* case_label(YaglomCase c);

struct YaglomReport {
  YaglomCase primary = YaglomCase::StrongType1;
  std::string paper_case;
  double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0;
  std::vector<double> u1, v1, u2, v2, u3, v3;
  std::vector<double> w1, w2;        // populated in the coexistence case
  double mix = 0.0;                  // p_{ij} or q in the tie cases
  bool has_mix = false;
  std::vector<double> distribution;  // over the triangle, origin entry 0
  long init_i = 0, init_j = 0;
  // When eigenvalue comparisons land between the equal and strict
  // tolerances, both candidate classifications are reported.
  bool tie_warning = false;
  YaglomCase alternate = YaglomCase::StrongType1;
  std::string alternate_paper_case;
  std::vector<double> alternate_distribution;
};

// The limiting law of the chain conditioned on non-absorption, classified
// by comparing the three block eigenvalues. Axis starts converge to the
// quasi-stationary law of their own axis regardless of the comparison.
YaglomReport yaglom_limit(const A2dMCSpec& spec, long i, long j);

struct QsdDescription {
  std::string name;  // "axis-1", "axis-2" or "interior"
  double theta = 0.0;
  std::vector<double> nu;  // over the triangle, origin entry 0
};

struct QsdFamily {
  std::vector<QsdDescription> measures;
  std::string family_note;
  bool mixtures_closed = false;  // every p-mixture is itself quasi-stationary
  bool threshold_band = false;   // theta3 vs max(theta1,theta2) undecidable
};

// All quasi-stationary laws: the two axis endpoints of the mixture family,
// plus the interior law exactly when theta3 exceeds both axis eigenvalues.
QsdFamily enumerate_qsd(const A2dMCSpec& spec);

struct ConditionalLaw {
  std::vector<double> law;  // over the triangle, origin entry 0, sums to 1
  double log_mass = 0.0;    // log of the unnormalized surviving mass
};

// The law at horizon n conditioned on having avoided the origin, computed
// by repeated vector-matrix products with per-step renormalization.
ConditionalLaw conditional_law_exact(const A2dMCSpec& spec, long i, long j,
                                     long n);

struct RnReport {
  std::string branch;  // which asymptotic regime applied
  std::vector<long> n_grid;
  std::vector<double> max_drift;   // max entry-wise |ratio - 1| per n
  std::vector<double> mean_drift;
};

// The coupling block of the n-step matrix, summed directly, against its
// predicted asymptote; entries are compared as ratios so the geometric
// scale cancels.
RnReport rn_asymptotics_check(const A2dMCSpec& spec,
                              const std::vector<long>& n_grid);

// Unscaled direct sum for small n (exact single-term base case at n=1).
Mat rn_direct(const A2dMCSpec& spec, long n);

struct PerturbVerdict {
  double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0;
  double margin = 0.0;  // max(theta1, theta2) - theta3
  YaglomCase classification = YaglomCase::TieAboveQ3;
  std::string paper_case;
  bool no_coexistence = false;
};

// Lifts a neutral kernel, applies seeded multiplicative noise of relative
// size eps to the interior rows (support preserved, rows renormalized),
// and reclassifies. Near neutrality the interior eigenvalue stays below
// the axis eigenvalues, so coexistence cannot appear.
PerturbVerdict perturb_experiment(const KernelSpec& spec, double eps,
                                  std::uint64_t seed);

}  // namespace nspec
