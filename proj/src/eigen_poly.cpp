// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include <nspec/eigen_poly.hpp>

#include <nspec/errors.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace nspec {

double ScaledPoly::scale() const {
  return sign * std::sqrt(to_double(scale_sq));
}

double ScaledPoly::eval(double x, double y) const {
  double v = 0.0;
  for (const auto& [key, c] : core.terms())
    v += to_double(c) * std::pow(x, key.first) * std::pow(y, key.second);
  return scale() * v;
}

BiPoly eigen_core(int d) {
  if (d < 2) throw std::domain_error("eigen_core requires d >= 2");
  const BiPoly minus_x = BiPoly::monomial(1, 0, Rat(-1));
  const BiPoly minus_xy = minus_x + BiPoly::monomial(0, 1, Rat(-1));
  BiPoly psi;
  BiPoly falling_x = minus_x;  // (-X)_k, extended one factor per k
  for (int k = 1; k <= d; ++k) {
    if (k > 1) falling_x = falling_x * (minus_x + BiPoly::constant(Rat(k - 1)));
    const Rat c = pochhammer(Rat(-d), k) * pochhammer(Rat(d - 1), k) /
                  Rat(factorial(k - 1) * factorial(k));
    BiPoly tail = BiPoly::constant(Rat(1));  // (-X-Y+k)_{d-k}
    for (int t = 0; t < d - k; ++t)
      tail = tail * (minus_xy + BiPoly::constant(Rat(k + t)));
    psi += c * (falling_x * tail);
  }
  return psi;
}

ScaledPoly build_P(int d, bool second) {
  if (d < 0) throw std::domain_error("build_P requires d >= 0");
  ScaledPoly p;
  if (d == 0) {
    p.core = BiPoly::constant(Rat(1));
    return p;
  }
  if (d == 1) {
    p.core = second ? BiPoly::monomial(0, 1) : BiPoly::monomial(1, 0);
    return p;
  }
  p.sign = (d % 2 == 0) ? -1 : 1;
  p.scale_sq = Rat(4 * (2 * d - 1), d * (d - 1));
  p.core = eigen_core(d);
  return p;
}

double eval_P(int d, long i, long j) {
  const ScaledPoly p = build_P(d);
  return p.sign * std::sqrt(to_double(p.scale_sq)) *
         to_double(p.core.eval(Rat(i), Rat(j)));
}

ScaledUniPoly hahn_H(int d) {
  if (d < 2) throw std::domain_error("hahn_H requires d >= 2");
  const ScaledPoly p = build_P(d);
  const BiPoly top = p.core.homogeneous_part(d);
  const UniPoly half_plus(std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
  const UniPoly half_minus(std::vector<Rat>{Rat(1, 2), Rat(-1, 2)});
  UniPoly h;
  for (const auto& [key, c] : top.terms()) {
    UniPoly term = UniPoly::constant(c);
    for (int s = 0; s < key.first; ++s) term = term * half_plus;
    for (int s = 0; s < key.second; ++s) term = term * half_minus;
    h += term;
  }
  return ScaledUniPoly{p.sign, p.scale_sq, h};
}

namespace {

[[noreturn]] void throw_pole(long n, long k) {
  throw PoleError("Hahn denominator Pochhammer vanishes at term k=" +
                  std::to_string(k) + " of Q_" + std::to_string(n) +
                  " before the series terminates");
}

}  // namespace

Rat hahn_Q(long n, const Rat& alpha, const Rat& beta, long N, const Rat& x) {
  if (n < 0) throw std::domain_error("hahn_Q requires n >= 0");
  Rat sum = 1;
  Rat term = 1;
  for (long k = 0; k < n; ++k) {
    const Rat f2 = -x + k;
    const Rat f3 = Rat(n) + alpha + beta + 1 + k;
    if (f2 == 0 || f3 == 0) break;
    const Rat g1 = alpha + 1 + k;
    const Rat g2 = Rat(-N + 1 + k);
    if (g1 == 0 || g2 == 0) throw_pole(n, k + 1);
    term *= Rat(-n + k) * f2 * f3 / (g1 * g2 * Rat(k + 1));
    sum += term;
  }
  return sum;
}

UniPoly hahn_poly(long n, const Rat& alpha, const Rat& beta, long N) {
  if (n < 0) throw std::domain_error("hahn_poly requires n >= 0");
  UniPoly sum = UniPoly::constant(Rat(1));
  UniPoly falling = UniPoly::constant(Rat(1));  // (-x)_k
  Rat c = 1;
  for (long k = 0; k < n; ++k) {
    const Rat f3 = Rat(n) + alpha + beta + 1 + k;
    if (f3 == 0) break;
    const Rat g1 = alpha + 1 + k;
    const Rat g2 = Rat(-N + 1 + k);
    if (g1 == 0 || g2 == 0) throw_pole(n, k + 1);
    c *= Rat(-n + k) * f3 / (g1 * g2 * Rat(k + 1));
    falling = falling * UniPoly(std::vector<Rat>{Rat(k), Rat(-1)});
    sum += c * falling;
  }
  return sum;
}

Rat orthogonality_core_sum(int d, int d2, long k) {
  const BiPoly a = build_P(d).core;
  const BiPoly b = build_P(d2).core;
  Rat sum = 0;
  for (long i = 1; i <= k - 1; ++i) {
    const Rat j(k - i);
    sum += a.eval(Rat(i), j) * b.eval(Rat(i), j) / Rat(i * (k - i));
  }
  return sum;
}

double orthogonality_sum(int d, int d2, long k) {
  const ScaledPoly a = build_P(d);
  const ScaledPoly b = build_P(d2);
  const double scale =
      a.sign * b.sign * std::sqrt(to_double(a.scale_sq * b.scale_sq));
  return scale * to_double(orthogonality_core_sum(d, d2, k));
}

}  // namespace nspec
