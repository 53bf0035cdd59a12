// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include <nspec/kernel.hpp>

#include <nspec/errors.hpp>
#include <nspec/rng.hpp>

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using nspec::KernelSpec;

TEST_CASE("from_rows accepts valid kernels") {
  const KernelSpec id = nspec::from_rows(
      {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
  CHECK(id.N == 2);
  CHECK(id.at(1, 1) == 1.0);
}

TEST_CASE("from_rows rejects bad kernels") {
  CHECK_THROWS_WITH_AS(
      (void)nspec::from_rows({{0.9, 0.1}, {0.5, 0.5}}),
      "state 0 not absorbing", nspec::ValidationError);
  CHECK_THROWS_AS(
      (void)nspec::from_rows(
          {{1.0, 0.0, 0.0}, {0.2, 0.5, 0.3}, {0.0, 0.38, 0.6}}),
      nspec::ValidationError);
  CHECK_THROWS_AS((void)nspec::from_rows({{1.0, 0.0}, {-0.1, 1.1}}),
                  nspec::ValidationError);
  CHECK_THROWS_AS((void)nspec::from_rows({{1.0}}), nspec::ValidationError);
}

TEST_CASE("birth_death construction") {
  const KernelSpec bd = nspec::birth_death({0.3, 0.0}, {0.2, 0.4}, 2);
  const std::vector<double> want = {1.0, 0.0, 0.0, 0.2, 0.5,
                                    0.3, 0.0, 0.4, 0.6};
  REQUIRE(bd.rows.size() == want.size());
  for (size_t t = 0; t < want.size(); ++t)
    CHECK(bd.rows[t] == doctest::Approx(want[t]).epsilon(1e-15));

  const KernelSpec frozen = nspec::birth_death({0.0, 0.0}, {0.0, 0.0}, 2);
  for (long n = 0; n <= 2; ++n) CHECK(frozen.at(n, n) == 1.0);

  CHECK_THROWS_AS((void)nspec::birth_death({0.7, 0.0}, {0.4, 0.1}, 2),
                  nspec::ValidationError);
  CHECK_THROWS_AS((void)nspec::birth_death({0.3, 0.1}, {0.2, 0.1}, 2),
                  nspec::ValidationError);
}

TEST_CASE("reversible measure of a birth-death kernel") {
  const KernelSpec bd = nspec::birth_death({0.3, 0.0}, {0.2, 0.4}, 2);
  const auto m = nspec::reversible_measure(bd);
  CHECK(m.mu[1] == 1.0);
  CHECK(m.mu[2] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("reversible measure of an identity kernel is all ones") {
  const KernelSpec id = nspec::from_rows(
      {{1.0, 0.0, 0.0, 0.0},
       {0.0, 1.0, 0.0, 0.0},
       {0.0, 0.0, 1.0, 0.0},
       {0.0, 0.0, 0.0, 1.0}});
  const auto m = nspec::reversible_measure(id);
  for (long n = 1; n <= 3; ++n) CHECK(m.mu[n] == 1.0);
}

TEST_CASE("cycle kernel violating Kolmogorov's criterion") {
  const KernelSpec cyc = nspec::from_rows({{1.0, 0.0, 0.0, 0.0},
                                           {0.0, 0.6, 0.3, 0.1},
                                           {0.0, 0.1, 0.6, 0.3},
                                           {0.0, 0.3, 0.1, 0.6}});
  CHECK_THROWS_AS((void)nspec::reversible_measure(cyc),
                  nspec::NotReversibleError);
}

TEST_CASE("one-way transition is an obstruction") {
  const KernelSpec oneway = nspec::from_rows(
      {{1.0, 0.0, 0.0}, {0.0, 0.7, 0.3}, {0.0, 0.0, 1.0}});
  CHECK_THROWS_AS((void)nspec::reversible_measure(oneway),
                  nspec::NotReversibleError);
}

TEST_CASE("random kernels are deterministic in the seed") {
  const KernelSpec a = nspec::random_kernel(42, 6, 0.2);
  const KernelSpec b = nspec::random_kernel(42, 6, 0.2);
  const KernelSpec c = nspec::random_kernel(43, 6, 0.2);
  CHECK(a.rows == b.rows);
  CHECK(a.rows != c.rows);
}

TEST_CASE("random kernels satisfy their structural contract") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const long N = 3 + static_cast<long>(seed % 9);
    const KernelSpec k = nspec::random_kernel(seed, N, 0.2);
    for (long n = 0; n <= N; ++n) {
      double sum = 0.0;
      for (long m = 0; m <= N; ++m) sum += k.at(n, m);
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
    CHECK(k.at(1, 0) >= 0.2 / N);
    for (long n = 2; n <= N; ++n) CHECK(k.at(n, n - 1) > 0.0);
    for (long n = 1; n < N; ++n) CHECK(k.at(n, n + 1) > 0.0);

    // Birth-death structure makes the reverse measure well defined.
    const auto m = nspec::reversible_measure(k);
    for (long i = 1; i <= N; ++i)
      for (long j = 1; j <= N; ++j) {
        const double a = m.mu[i] * k.at(i, j);
        const double b = m.mu[j] * k.at(j, i);
        CHECK(std::abs(a - b) <= 1e-10 * std::max({a, b, 1e-300}));
      }
  }
}

TEST_CASE("counter rng basics") {
  nspec::Rng r(7);
  nspec::Rng r2(7);
  const auto a = r.next();
  CHECK(a == r2.next());
  CHECK(r.next() != a);

  // Streams are pure functions of (seed, index), insensitive to consumption.
  nspec::Rng fresh(7);
  (void)fresh.next();
  (void)fresh.next();
  nspec::Rng s1 = fresh.stream(5);
  nspec::Rng s2 = nspec::Rng(7).stream(5);
  CHECK(s1.next() == s2.next());

  nspec::Rng u(123);
  for (int t = 0; t < 1000; ++t) {
    const double x = u.uniform01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  std::set<std::uint64_t> seen;
  nspec::Rng v(9);
  for (int t = 0; t < 200; ++t) {
    const auto x = v.uniform_int(7);
    CHECK(x < 7);
    seen.insert(x);
  }
  CHECK(seen.size() == 7);
}
