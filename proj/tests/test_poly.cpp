// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include <nspec/eigen_poly.hpp>
#include <nspec/errors.hpp>
#include <nspec/poly.hpp>

#include <doctest.h>

#include <cmath>
#include <vector>

using nspec::BigInt;
using nspec::BiPoly;
using nspec::Rat;
using nspec::ScaledPoly;
using nspec::UniPoly;

namespace {

const BiPoly X = BiPoly::monomial(1, 0);
const BiPoly Y = BiPoly::monomial(0, 1);

BiPoly bi_const(long c) { return BiPoly::constant(Rat(c)); }

// Asserts p == target_sign * sqrt(target_sq) * m by comparing squares and
// then the sign of the rational ratio, all in exact arithmetic.
void check_scaled_equal(const ScaledPoly& p, int target_sign,
                        const Rat& target_sq, const BiPoly& m) {
  const Rat ratio = target_sq / p.scale_sq;
  const BigInt rn = sqrt(numerator(ratio));
  const BigInt rd = sqrt(denominator(ratio));
  REQUIRE(rn * rn == numerator(ratio));
  REQUIRE(rd * rd == denominator(ratio));
  const Rat r(rn, rd);
  CHECK(Rat(p.sign) * p.core == Rat(target_sign) * r * m);
}

// p(X, X) as a univariate polynomial; zero iff (X - Y) divides p.
UniPoly diagonal_restriction(const BiPoly& p) {
  UniPoly u;
  for (const auto& [key, c] : p.terms()) {
    std::vector<Rat> mono(key.first + key.second + 1, Rat(0));
    mono.back() = c;
    u += UniPoly(std::move(mono));
  }
  return u;
}

// Exact determinant by fraction-free forward elimination.
Rat rational_det(std::vector<std::vector<Rat>> m) {
  const size_t n = m.size();
  Rat det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (size_t row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      const Rat f = m[row][col] / m[col][col];
      for (size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  return det;
}

}  // namespace

TEST_CASE("BiPoly arithmetic and transforms") {
  const BiPoly p = X * Y - bi_const(2) * X;
  CHECK(p.coeff(1, 1) == 1);
  CHECK(p.coeff(1, 0) == -2);
  CHECK(p.eval(Rat(3), Rat(4)) == 6);
  CHECK(p.swapped() == X * Y - bi_const(2) * Y);
  CHECK(p.negated_args() == X * Y + bi_const(2) * X);
  CHECK((p - p).is_zero());
  CHECK(p.total_degree() == 2);

  const BiPoly q = (X * Y).shifted(Rat(1), Rat(-1));
  CHECK(q == X * Y - X + Y - bi_const(1));

  const BiPoly h = X * X * Y + X - Y;
  CHECK(h.homogeneous_part(3) == X * X * Y);
  CHECK(h.homogeneous_part(1) == X - Y);
  CHECK(h.homogeneous_part(2).is_zero());
}

TEST_CASE("UniPoly arithmetic, shift, division") {
  const UniPoly p(std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});  // x^2 - 1
  CHECK(p.eval(Rat(3)) == 8);
  CHECK(p.derivative() == UniPoly(std::vector<Rat>{Rat(0), Rat(2)}));

  auto [q, r] = p.divide_by_linear_root(Rat(1));
  CHECK(r == 0);
  CHECK(q == UniPoly(std::vector<Rat>{Rat(1), Rat(1)}));

  auto [q2, r2] = p.divide_by_linear_root(Rat(2));
  CHECK(r2 == 3);
  CHECK((q2 * UniPoly(std::vector<Rat>{Rat(-2), Rat(1)}) +
         UniPoly::constant(r2)) == p);

  const UniPoly s = UniPoly(std::vector<Rat>{Rat(0), Rat(1)}).shifted(Rat(5));
  CHECK(s == UniPoly(std::vector<Rat>{Rat(5), Rat(1)}));
  const UniPoly sq(std::vector<Rat>{Rat(0), Rat(0), Rat(1)});
  CHECK(sq.shifted(Rat(1)) ==
        UniPoly(std::vector<Rat>{Rat(1), Rat(2), Rat(1)}));
}

TEST_CASE("printed low-degree eigen-polynomial table") {
  CHECK(nspec::build_P(0).core == bi_const(1));
  CHECK(nspec::build_P(0).scale_sq == 1);
  CHECK(nspec::build_P(1).core == X);
  CHECK(nspec::build_P(1, true).core == Y);

  check_scaled_equal(nspec::build_P(2), 1, Rat(24), X * Y);
  check_scaled_equal(nspec::build_P(3), -1, Rat(120), X * Y * (X - Y));
  check_scaled_equal(nspec::build_P(4), 1, Rat(336),
                     X * Y * (X * X - bi_const(3) * X * Y + Y * Y +
                              bi_const(1)));
  check_scaled_equal(nspec::build_P(5), -1, Rat(720),
                     X * Y * (X - Y) *
                         (X * X - bi_const(5) * X * Y + Y * Y + bi_const(5)));
}

TEST_CASE("top mixed coefficient and normalization") {
  for (int d = 2; d <= 10; ++d) {
    const ScaledPoly p = nspec::build_P(d);
    CHECK(p.scale_sq == Rat(4 * (2 * d - 1), d * (d - 1)));
    CHECK(p.sign == ((d % 2 == 0) ? -1 : 1));
    // The (d-1,1)-coefficient of P_d is (-1)^d 2 sqrt(d(d-1)(2d-1)); on the
    // core that is the statement sign * coeff = (-1)^d d(d-1).
    const Rat want = Rat(((d % 2 == 0) ? 1 : -1) * d * (d - 1));
    CHECK(Rat(p.sign) * p.core.coeff(d - 1, 1) == want);
    CHECK(p.scale_sq * p.core.coeff(d - 1, 1) * p.core.coeff(d - 1, 1) ==
          Rat(4 * d * (d - 1) * (2 * d - 1)));
  }
}

TEST_CASE("point evaluation") {
  CHECK(nspec::eval_P(2, 1, 1) ==
        doctest::Approx(2 * std::sqrt(6.0)).epsilon(1e-14));
  CHECK(nspec::eval_P(3, 1, 2) ==
        doctest::Approx(4 * std::sqrt(30.0)).epsilon(1e-14));
  CHECK(nspec::eval_P(4, 1, 2) == 0.0);
  CHECK(nspec::eval_P(0, 3, 4) == 1.0);
  CHECK(nspec::eval_P(1, 3, 4) == 3.0);
}

TEST_CASE("forward shift recurrence") {
  // X P_d(X+1,Y) + Y P_d(X,Y+1) = (X+Y+d) P_d(X,Y), exact on cores.
  for (int d = 0; d <= 12; ++d) {
    for (int variant = 0; variant < (d == 1 ? 2 : 1); ++variant) {
      const BiPoly c = nspec::build_P(d, variant == 1).core;
      const BiPoly lhs = X * c.shifted(Rat(1), Rat(0)) +
                         Y * c.shifted(Rat(0), Rat(1));
      CHECK(lhs == (X + Y + bi_const(d)) * c);
    }
  }
}

TEST_CASE("backward shift recurrence") {
  for (int d = 0; d <= 12; ++d) {
    for (int variant = 0; variant < (d == 1 ? 2 : 1); ++variant) {
      const BiPoly c = nspec::build_P(d, variant == 1).core;
      const BiPoly lhs = X * c.shifted(Rat(-1), Rat(0)) +
                         Y * c.shifted(Rat(0), Rat(-1));
      CHECK(lhs == (X + Y - bi_const(d)) * c);
    }
  }
}

TEST_CASE("exchange recurrence") {
  // (2XY - d(d-1)) P_d = XY (P_d(X+1,Y-1) + P_d(X-1,Y+1)).
  for (int d = 2; d <= 12; ++d) {
    const BiPoly c = nspec::build_P(d).core;
    const BiPoly lhs = (bi_const(2) * X * Y - bi_const(d * (d - 1))) * c;
    const BiPoly rhs =
        X * Y * (c.shifted(Rat(1), Rat(-1)) + c.shifted(Rat(-1), Rat(1)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("parity of homogeneous components") {
  for (int d = 2; d <= 10; ++d) {
    const BiPoly c = nspec::build_P(d).core;
    for (int m = d - 1; m >= 0; m -= 2)
      CHECK(c.homogeneous_part(m).is_zero());
  }
}

TEST_CASE("divisibility by XY and by X-Y for odd degree") {
  for (int d = 2; d <= 10; ++d) {
    const BiPoly c = nspec::build_P(d).core;
    for (const auto& [key, coef] : c.terms()) {
      (void)coef;
      CHECK(key.first >= 1);
      CHECK(key.second >= 1);
    }
    if (d % 2 == 1) CHECK(diagonal_restriction(c).is_zero());
  }
}

TEST_CASE("symmetry under swap and global negation") {
  for (int d = 2; d <= 10; ++d) {
    const BiPoly c = nspec::build_P(d).core;
    const BiPoly sgn = (d % 2 == 0) ? c : Rat(-1) * c;
    CHECK(c.swapped() == sgn);
    CHECK(c.negated_args() == sgn);
  }
}

TEST_CASE("zeros on the small lattice diamond") {
  // P_d(i,j) = 0 whenever ij >= 0 and |i|+|j| <= d-1.
  for (int d = 2; d <= 10; ++d) {
    const BiPoly c = nspec::build_P(d).core;
    for (int i = -(d - 1); i <= d - 1; ++i)
      for (int j = -(d - 1); j <= d - 1; ++j) {
        if (i * j < 0 || std::abs(i) + std::abs(j) > d - 1) continue;
        CHECK(c.eval(Rat(i), Rat(j)) == 0);
      }
  }
}

TEST_CASE("collocation matrix is nonsingular on each slice") {
  for (int d = 0; d <= 10; ++d) {
    std::vector<std::vector<Rat>> m(d + 1, std::vector<Rat>(d + 1));
    for (int i = 0; i <= d; ++i) {
      const BiPoly c = nspec::build_P(i).core;
      for (int j = 0; j <= d; ++j) m[i][j] = c.eval(Rat(j), Rat(d - j));
    }
    CHECK(rational_det(std::move(m)) != 0);
  }
}

TEST_CASE("sign alternation along a slice") {
  for (int d = 3; d <= 10; ++d) {
    const BiPoly c = nspec::build_P(d).core;
    for (int j = 1; j <= d - 2; ++j) {
      const Rat prod =
          c.eval(Rat(j), Rat(d - j)) * c.eval(Rat(j + 1), Rat(d - j - 1));
      CHECK(prod < 0);
    }
  }
}

TEST_CASE("simplex-line section of the top part") {
  const nspec::ScaledUniPoly h2 = nspec::hahn_H(2);
  CHECK(h2.scale_sq == 6);
  CHECK(Rat(h2.sign) * h2.core ==
        UniPoly(std::vector<Rat>{Rat(1, 2), Rat(0), Rat(-1, 2)}));

  for (int d = 2; d <= 10; ++d) {
    const nspec::ScaledUniPoly h = nspec::hahn_H(d);
    REQUIRE(!h.core.is_zero());
    CHECK(h.core.degree() == d);

    // (1 - w^2) H'' + d(d-1) H = 0 exactly.
    const UniPoly one_minus_sq(std::vector<Rat>{Rat(1), Rat(0), Rat(-1)});
    const UniPoly ode = one_minus_sq * h.core.derivative().derivative() +
                        Rat(d * (d - 1)) * h.core;
    CHECK(ode.is_zero());

    // H_d has the parity of d.
    for (int k = (d + 1) % 2; k <= d; k += 2) CHECK(h.core.coeff(k) == 0);
  }
}

TEST_CASE("Hahn evaluation") {
  CHECK(nspec::hahn_Q(0, Rat(1), Rat(2), 7, Rat(3)) == 1);
  CHECK(nspec::hahn_Q(1, Rat(0), Rat(0), 5, Rat(2)) == 0);
  CHECK(nspec::hahn_Q(1, Rat(2), Rat(5), 9, Rat(0)) == 1);
  CHECK(nspec::hahn_Q(4, Rat(3), Rat(-1), 8, Rat(0)) == 1);

  // Denominator Pochhammer vanishing before the series terminates.
  CHECK_THROWS_AS((void)nspec::hahn_Q(2, Rat(-2), Rat(0), 5, Rat(7)),
                  nspec::PoleError);
  CHECK_THROWS_AS((void)nspec::hahn_Q(3, Rat(0), Rat(0), 2, Rat(5)),
                  nspec::PoleError);
}

TEST_CASE("Hahn polynomial form") {
  const UniPoly q1 = nspec::hahn_poly(1, Rat(0), Rat(0), 5);
  CHECK(q1 == UniPoly(std::vector<Rat>{Rat(1), Rat(-1, 2)}));

  for (long n = 0; n <= 5; ++n) {
    const UniPoly q = nspec::hahn_poly(n, Rat(3), Rat(-1), 9);
    CHECK(q.degree() == static_cast<int>(n));
    CHECK(q.coeff(0) == 1);  // Q_n(0) = 1 normalization
    for (long x = 0; x <= 6; ++x)
      CHECK(q.eval(Rat(x)) == nspec::hahn_Q(n, Rat(3), Rat(-1), 9, Rat(x)));
  }

  CHECK_THROWS_AS((void)nspec::hahn_poly(3, Rat(0), Rat(0), 2),
                  nspec::PoleError);
}

TEST_CASE("slice orthogonality") {
  for (int d = 2; d <= 8; ++d)
    for (int d2 = d + 1; d2 <= 8; ++d2)
      for (long k = 2; k <= 20; ++k)
        CHECK(nspec::orthogonality_core_sum(d, d2, k) == 0);
}

TEST_CASE("slice norm ratio is k-independent") {
  for (int d = 2; d <= 6; ++d) {
    const ScaledPoly p = nspec::build_P(d);
    Rat first;
    bool have_first = false;
    for (long k = 2; k <= 16; ++k) {
      const BigInt w = nspec::binomial(k + d - 1, 2 * d - 1);
      if (w == 0) continue;  // slice too short for this degree
      const Rat ratio = p.scale_sq * nspec::orthogonality_core_sum(d, d, k) /
                        Rat(w);
      if (!have_first) {
        first = ratio;
        have_first = true;
        CHECK(ratio > 0);
      } else {
        CHECK(ratio == first);
      }
    }
    REQUIRE(have_first);
    if (d == 2) CHECK(first == 24);
  }
  CHECK(nspec::orthogonality_sum(2, 2, 2) == doctest::Approx(24.0));
}
