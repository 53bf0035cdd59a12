// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "nspec/dirichlet.hpp"
#include "nspec/errors.hpp"
#include "nspec/kernel.hpp"
#include "nspec/lift.hpp"
#include "nspec/matrix.hpp"
#include "nspec/qsd.hpp"
#include "nspec/spectral.hpp"

namespace {

using fixtures::mat1;
using fixtures::mat2;
using fixtures::row2;
using fixtures::tv_distance;
using nspec::A2dMCSpec;
using nspec::Mat;
using nspec::TriIndex;
using nspec::YaglomCase;

// Largest violation of nu Pi = theta nu over the non-origin states.
double qsd_residual(const A2dMCSpec& s, const std::vector<double>& nu,
                    double theta) {
  const std::vector<double> lhs = vec_mat(nu, s.pi);
  const long origin = s.index.index(0, 0);
  double worst = 0.0;
  for (long t = 0; t < s.index.size(); ++t)
    if (t != origin)
      worst = std::max(worst, std::abs(lhs[t] - theta * nu[t]));
  return worst;
}

}  // namespace

TEST_CASE("block extraction round-trips a full matrix") {
  const A2dMCSpec s = fixtures::coexistence_chain();
  CHECK(s.axis1 == std::vector<long>{3, 5});
  CHECK(s.axis2 == std::vector<long>{1, 2});
  CHECK(s.inter == std::vector<long>{4});

  CHECK(s.q1.a == mat2(0.2, 0.1, 0.1, 0.2).a);
  CHECK(s.q2.a == mat2(0.2, 0.1, 0.1, 0.2).a);
  CHECK(s.q3.a == mat1(0.6).a);
  CHECK(s.r1.a == row2(0.15, 0.05).a);
  CHECK(s.r2.a == row2(0.05, 0.15).a);

  CHECK(s.f1.irreducible);
  CHECK(s.f1.aperiodic);
  CHECK(s.f3.irreducible);
  CHECK(s.r1_nonzero);
  CHECK(s.r2_nonzero);

  CHECK(s.absorb[3] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(std::abs(s.absorb[4]) <= 1e-15);

  const Mat rebuilt =
      a2dmc_matrix(s.index, s.q1, s.q2, s.q3, s.r1, s.r2);
  CHECK(rebuilt.a == s.pi.a);
}

TEST_CASE("block extraction rejects broken structure") {
  const A2dMCSpec s = fixtures::coexistence_chain();
  const TriIndex index(2);

  Mat leak_axis = s.pi;
  leak_axis.at(3, 4) = 0.1;
  leak_axis.at(3, 0) -= 0.1;
  CHECK_THROWS_AS(extract_blocks(index, leak_axis), nspec::StructureError);

  Mat leak_other = s.pi;
  leak_other.at(1, 3) = 0.1;
  leak_other.at(1, 0) -= 0.1;
  CHECK_THROWS_AS(extract_blocks(index, leak_other), nspec::StructureError);

  Mat leak_origin = s.pi;
  leak_origin.at(0, 0) = 0.5;
  leak_origin.at(0, 3) = 0.5;
  CHECK_THROWS_AS(extract_blocks(index, leak_origin), nspec::StructureError);

  Mat heavy = s.pi;
  heavy.at(4, 4) += 0.1;
  CHECK_THROWS_AS(extract_blocks(index, heavy), nspec::ValidationError);

  CHECK_THROWS_AS(extract_blocks(index, Mat(3, 3)), nspec::ValidationError);
}

TEST_CASE("neutral lifts split into twin axis blocks and the interior") {
  const nspec::KernelSpec kernel = nspec::random_kernel(7, 6, 0.5);
  const nspec::LiftedChain chain = nspec::lift_full(kernel);
  const A2dMCSpec s = extract_blocks(chain);

  CHECK(s.q1.a == s.q2.a);
  CHECK(s.q1.a == nspec::interior(kernel).a);
  CHECK(s.q3.a == nspec::restrict_k(chain, 2).m.a);
  CHECK(s.f1.irreducible);
  CHECK(s.f3.irreducible);

  const double t1 = nspec::perron_pair(s.q1).theta;
  const double t2 = nspec::perron_pair(s.q2).theta;
  const double t3 = nspec::perron_pair(s.q3).theta;
  CHECK(t1 == t2);
  CHECK(t1 == doctest::Approx(nspec::theta_dirichlet(chain, 1)).epsilon(1e-11));
  CHECK(t3 == doctest::Approx(nspec::theta_dirichlet(chain, 2)).epsilon(1e-11));
  CHECK(t3 < t1);
}

TEST_CASE("the lifted spectrum is the disjoint union over the blocks") {
  const nspec::KernelSpec kernel = nspec::random_kernel(11, 5, 0.4);
  const nspec::ReversibleMeasure mu = nspec::reversible_measure(kernel);
  const nspec::LiftedChain chain = nspec::lift_full(kernel);
  const A2dMCSpec s = extract_blocks(chain);

  std::vector<double> w1(mu.mu.begin() + 1, mu.mu.end());
  const std::vector<double> axis_vals = nspec::sym_eigen(s.q1, w1).values;

  const std::vector<double> im = nspec::interior_measure(mu, chain.index);
  std::vector<double> w3;
  for (long flat : s.inter) w3.push_back(im[flat]);
  const std::vector<double> inter_vals = nspec::sym_eigen(s.q3, w3).values;

  std::vector<double> split{1.0};
  split.insert(split.end(), axis_vals.begin(), axis_vals.end());
  split.insert(split.end(), axis_vals.begin(), axis_vals.end());
  split.insert(split.end(), inter_vals.begin(), inter_vals.end());

  std::vector<double> assembled;
  for (const auto& v : nspec::assemble_basis(kernel, mu).vectors)
    assembled.push_back(v.theta);

  REQUIRE(split.size() == assembled.size());
  std::sort(split.begin(), split.end());
  std::sort(assembled.begin(), assembled.end());
  for (std::size_t k = 0; k < split.size(); ++k)
    CHECK(split[k] == doctest::Approx(assembled[k]).epsilon(1e-8));
}

TEST_CASE("axis starts settle on their own axis law") {
  const A2dMCSpec s = fixtures::coexistence_chain();

  const nspec::YaglomReport r1 = yaglom_limit(s, 2, 0);
  CHECK(r1.primary == YaglomCase::Axis1Initial);
  CHECK(r1.paper_case == "axis-1 initial state");
  CHECK(r1.distribution[3] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r1.distribution[5] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r1.distribution[1] == 0.0);
  CHECK(r1.distribution[4] == 0.0);

  const nspec::YaglomReport r2 = yaglom_limit(s, 0, 1);
  CHECK(r2.primary == YaglomCase::Axis2Initial);
  CHECK(r2.paper_case == "axis-2 initial state");
  CHECK(r2.distribution[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r2.distribution[2] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r2.distribution[3] == 0.0);
}

TEST_CASE("the coexistence chain reproduces the pencil-and-paper law") {
  const A2dMCSpec s = fixtures::coexistence_chain();
  const nspec::YaglomReport r = yaglom_limit(s, 1, 1);

  CHECK(r.primary == YaglomCase::Coexistence);
  CHECK(r.paper_case == "theta3>theta1,theta2");
  CHECK_FALSE(r.tie_warning);
  CHECK(r.theta1 == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r.theta2 == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r.theta3 == doctest::Approx(0.6).epsilon(1e-12));

  REQUIRE(r.w1.size() == 2);
  CHECK(r.w1[0] == doctest::Approx(13.0 / 30.0).epsilon(1e-12));
  CHECK(r.w1[1] == doctest::Approx(7.0 / 30.0).epsilon(1e-12));
  CHECK(r.w2[0] == doctest::Approx(7.0 / 30.0).epsilon(1e-12));
  CHECK(r.w2[1] == doctest::Approx(13.0 / 30.0).epsilon(1e-12));

  CHECK(r.distribution[4] == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
  CHECK(r.distribution[3] == doctest::Approx(13.0 / 70.0).epsilon(1e-12));
  CHECK(r.distribution[5] == doctest::Approx(7.0 / 70.0).epsilon(1e-12));
  CHECK(r.distribution[1] == doctest::Approx(7.0 / 70.0).epsilon(1e-12));
  CHECK(r.distribution[2] == doctest::Approx(13.0 / 70.0).epsilon(1e-12));
  CHECK(r.distribution[0] == 0.0);
}

TEST_CASE("an unbalanced coexistence chain still solves the tail system") {
  const A2dMCSpec s = fixtures::skewed_coexistence_chain();
  const nspec::YaglomReport r = yaglom_limit(s, 1, 1);

  CHECK(r.primary == YaglomCase::Coexistence);
  CHECK_FALSE(r.tie_warning);

  double sum = 0.0;
  for (double e : r.distribution) sum += e;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));

  // w1 (theta3 I - Q1) = v3 R1, checked entry by entry.
  const std::vector<double> w1q1 = vec_mat(r.w1, s.q1);
  for (long k = 0; k < 2; ++k)
    CHECK(r.theta3 * r.w1[k] - w1q1[k] ==
          doctest::Approx(s.r1.at(0, k)).epsilon(1e-12));
}

TEST_CASE("a dominant axis eigenvalue forces that axis in the limit") {
  const nspec::YaglomReport r1 =
      yaglom_limit(fixtures::dominant_axis1_chain(), 1, 1);
  CHECK(r1.primary == YaglomCase::StrongType1);
  CHECK(r1.paper_case == "theta1>=theta3 and theta1>theta2");
  CHECK_FALSE(r1.has_mix);
  CHECK(r1.distribution[3] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r1.distribution[5] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r1.distribution[4] == 0.0);
  CHECK(r1.distribution[1] == 0.0);

  const nspec::YaglomReport r2 =
      yaglom_limit(fixtures::dominant_axis2_chain(), 1, 1);
  CHECK(r2.primary == YaglomCase::StrongType2);
  CHECK(r2.paper_case == "theta2>=theta3 and theta2>theta1");
  CHECK(r2.distribution[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r2.distribution[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("tied axis eigenvalues above the interior mix by start") {
  const A2dMCSpec s = fixtures::start_mixed_tie_chain();
  const nspec::YaglomReport r = yaglom_limit(s, 1, 1);

  CHECK(r.primary == YaglomCase::TieAboveQ3);
  CHECK(r.paper_case == "theta1=theta2>theta3");
  CHECK_FALSE(r.tie_warning);
  REQUIRE(r.has_mix);
  CHECK(r.mix == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(r.distribution[3] == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(r.distribution[5] == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(r.distribution[1] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(r.distribution[2] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(r.distribution[4] == 0.0);
}

TEST_CASE("a three-way tie mixes by total coupling strength") {
  const A2dMCSpec s = fixtures::equal_tie_chain();
  const nspec::YaglomReport r = yaglom_limit(s, 1, 1);

  CHECK(r.primary == YaglomCase::TieEqualsQ3);
  CHECK(r.paper_case == "theta1=theta2=theta3");
  CHECK_FALSE(r.tie_warning);
  REQUIRE(r.has_mix);
  CHECK(r.mix == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
  CHECK(r.distribution[3] == doctest::Approx(5.0 / 18.0).epsilon(1e-12));
  CHECK(r.distribution[1] == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("comparisons inside the tolerance band report both readings") {
  const A2dMCSpec s = fixtures::band_tie_chain();
  const nspec::YaglomReport r = yaglom_limit(s, 1, 1);

  CHECK(r.tie_warning);
  CHECK(r.primary == YaglomCase::TieAboveQ3);
  CHECK(r.paper_case == "theta1=theta2>theta3");
  REQUIRE(r.has_mix);
  CHECK(r.mix == doctest::Approx(0.75).epsilon(1e-9));

  CHECK(r.alternate == YaglomCase::StrongType2);
  CHECK(r.alternate_paper_case == "theta2>=theta3 and theta2>theta1");
  REQUIRE(r.alternate_distribution.size() == r.distribution.size());
  CHECK(r.alternate_distribution[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.alternate_distribution[2] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.alternate_distribution[3] == 0.0);
}

TEST_CASE("yaglom rejects bad starts and broken hypotheses") {
  const A2dMCSpec good = fixtures::coexistence_chain();
  CHECK_THROWS_AS(yaglom_limit(good, 0, 0), nspec::ValidationError);
  CHECK_THROWS_AS(yaglom_limit(good, 3, 0), nspec::ValidationError);

  const TriIndex index(2);
  const Mat circ = mat2(0.2, 0.1, 0.1, 0.2);
  const Mat inter = mat1(0.2);
  const Mat r1 = row2(0.25, 0.05);
  const Mat r2 = row2(0.05, 0.05);

  const A2dMCSpec reducible = extract_blocks(
      index, a2dmc_matrix(index, mat2(0.3, 0.0, 0.0, 0.3), circ, inter, r1,
                          r2));
  CHECK_THROWS_AS(yaglom_limit(reducible, 1, 1), nspec::HypothesisError);

  const A2dMCSpec periodic = extract_blocks(
      index, a2dmc_matrix(index, mat2(0.0, 0.3, 0.3, 0.0), circ, inter, r1,
                          r2));
  CHECK_THROWS_AS(yaglom_limit(periodic, 1, 1), nspec::HypothesisError);

  const A2dMCSpec uncoupled = extract_blocks(
      index, a2dmc_matrix(index, circ, circ, inter, row2(0.0, 0.0), r2));
  CHECK_THROWS_AS(yaglom_limit(uncoupled, 1, 1), nspec::HypothesisError);
}

TEST_CASE("every enumerated measure is quasi-stationary to full precision") {
  struct Expect {
    A2dMCSpec spec;
    std::size_t count;
    bool closed;
  };
  const std::vector<Expect> table{
      {fixtures::coexistence_chain(), 3, true},
      {fixtures::skewed_coexistence_chain(), 3, false},
      {fixtures::dominant_axis1_chain(), 2, false},
      {fixtures::dominant_axis2_chain(), 2, false},
      {fixtures::start_mixed_tie_chain(), 2, true},
      {fixtures::equal_tie_chain(), 2, true},
  };
  for (const Expect& e : table) {
    const nspec::QsdFamily fam = enumerate_qsd(e.spec);
    CHECK(fam.measures.size() == e.count);
    CHECK(fam.mixtures_closed == e.closed);
    CHECK_FALSE(fam.threshold_band);
    const long origin = e.spec.index.index(0, 0);
    for (const nspec::QsdDescription& q : fam.measures) {
      CHECK(qsd_residual(e.spec, q.nu, q.theta) <= 1e-10);
      CHECK(q.nu[origin] == 0.0);
      double sum = 0.0;
      for (double x : q.nu) {
        CHECK(x >= 0.0);
        sum += x;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("an interior eigenvalue inside the band flags the threshold") {
  const TriIndex index(2);
  const Mat circ = mat2(0.2, 0.1, 0.1, 0.2);
  const A2dMCSpec s = extract_blocks(
      index, a2dmc_matrix(index, circ, circ, mat1(0.3 * (1.0 + 1e-8)),
                          row2(0.25, 0.05), row2(0.05, 0.05)));
  const nspec::QsdFamily fam = enumerate_qsd(s);
  CHECK(fam.threshold_band);
  CHECK(fam.measures.size() == 2);
}

TEST_CASE("conditional laws converge to the yaglom limit") {
  const A2dMCSpec s = fixtures::coexistence_chain();
  const nspec::YaglomReport lim = yaglom_limit(s, 1, 1);

  const nspec::ConditionalLaw start = conditional_law_exact(s, 1, 1, 0);
  CHECK(start.law[4] == 1.0);
  CHECK(start.log_mass == 0.0);

  const nspec::ConditionalLaw one = conditional_law_exact(s, 1, 1, 1);
  CHECK(one.law[4] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(one.law[3] == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(one.law[2] == doctest::Approx(0.15).epsilon(1e-15));

  double prev = 1.0;
  for (long n : {5L, 10L, 20L, 50L}) {
    const double d =
        tv_distance(conditional_law_exact(s, 1, 1, n).law, lim.distribution);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(tv_distance(conditional_law_exact(s, 1, 1, 200).law,
                    lim.distribution) < 1e-12);

  // The three-way tie converges at rate 1/n, not geometrically; the tiny
  // interior eigenvalue makes the n = 200 residual about 5.6e-9.
  const A2dMCSpec tie = fixtures::equal_tie_chain();
  const nspec::YaglomReport tie_lim = yaglom_limit(tie, 1, 1);
  const double tie_d =
      tv_distance(conditional_law_exact(tie, 1, 1, 200).law,
                  tie_lim.distribution);
  CHECK(tie_d < 1e-8);
  CHECK(tie_d > 1e-9);
}

TEST_CASE("a chain that cannot survive raises the degenerate error") {
  const TriIndex index(2);
  const Mat circ = mat2(0.2, 0.1, 0.1, 0.2);
  const A2dMCSpec dead = extract_blocks(
      index, a2dmc_matrix(index, circ, circ, mat1(0.0), row2(0.0, 0.0),
                          row2(0.0, 0.0)));
  CHECK_THROWS_AS(conditional_law_exact(dead, 1, 1, 1),
                  nspec::DegenerateError);
  CHECK_THROWS_AS(conditional_law_exact(dead, 0, 0, 3),
                  nspec::ValidationError);
}

TEST_CASE("small coupling sums match the recursion exactly") {
  const A2dMCSpec s = fixtures::coexistence_chain();
  CHECK(rn_direct(s, 1).a == s.r1.a);
  CHECK(rn_direct(s, 2).a == (s.q3 * s.r1 + s.r1 * s.q1).a);
}

TEST_CASE("coupling sums approach the dominant-interior asymptote") {
  const nspec::RnReport rep =
      rn_asymptotics_check(fixtures::coexistence_chain(), {10, 20, 50});
  CHECK(rep.branch == "theta1<theta3");
  REQUIRE(rep.max_drift.size() == 3);
  CHECK(rep.max_drift[1] < rep.max_drift[0]);
  CHECK(rep.max_drift[2] < rep.max_drift[1]);
  CHECK(rep.max_drift[2] < 1e-12);
}

TEST_CASE("coupling sums approach the dominant-axis asymptote") {
  const nspec::RnReport rep = rn_asymptotics_check(
      fixtures::dominant_axis1_chain(), {40, 80, 120});
  CHECK(rep.branch == "theta1>theta3");
  CHECK(rep.max_drift[1] < rep.max_drift[0]);
  CHECK(rep.max_drift[2] < rep.max_drift[1]);
  CHECK(rep.max_drift[2] < 1e-8);
}

TEST_CASE("coupling sums grow linearly at an exact tie") {
  const nspec::RnReport rep =
      rn_asymptotics_check(fixtures::equal_tie_chain(), {5, 50});
  CHECK(rep.branch == "theta1=theta3");
  CHECK(rep.max_drift[0] < 1e-9);
  CHECK(rep.max_drift[1] < 1e-9);
}

TEST_CASE("perturbed neutral chains keep the axis tie and never coexist") {
  const nspec::KernelSpec kernel = nspec::random_kernel(21, 6, 0.5);

  const nspec::PerturbVerdict base = perturb_experiment(kernel, 0.0, 99);
  CHECK(base.classification == YaglomCase::TieAboveQ3);
  CHECK(base.paper_case == "theta1=theta2>theta3");
  CHECK(base.no_coexistence);
  CHECK(base.theta1 == base.theta2);
  CHECK(base.margin > 1e-3);

  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const nspec::PerturbVerdict v = perturb_experiment(kernel, 1e-3, seed);
    CHECK(v.no_coexistence);
    CHECK(v.theta1 == v.theta2);
    CHECK(v.margin > 0.0);
    CHECK(std::abs(v.theta3 - base.theta3) < 1e-2);
  }
}

TEST_CASE("perturbation experiments demand the neutral hypotheses") {
  // No absorption route at all: q_1 = 0.
  const nspec::KernelSpec closed =
      nspec::birth_death({0.3, 0.3, 0.0}, {0.0, 0.2, 0.2}, 3);
  CHECK_THROWS_AS(perturb_experiment(closed, 1e-3, 1),
                  nspec::HypothesisError);

  // Identity kernel: the interior never communicates.
  const nspec::KernelSpec frozen = nspec::from_rows({{1.0, 0.0, 0.0},
                                                     {0.0, 1.0, 0.0},
                                                     {0.0, 0.0, 1.0}});
  CHECK_THROWS_AS(perturb_experiment(frozen, 1e-3, 1),
                  nspec::HypothesisError);
}
