// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <nspec/rational.hpp>

#include <map>
#include <utility>
#include <vector>

namespace nspec {

// Sparse bivariate polynomial over the rationals. Keys are (a, b) for the
// monomial X^a Y^b; zero coefficients are never stored, so the zero
// polynomial has an empty term map and equality is structural.
class BiPoly {
public:
  using Key = std::pair<int, int>;

  BiPoly() = default;

  static BiPoly constant(const Rat& c);
  static BiPoly monomial(int a, int b, const Rat& c = Rat(1));

  const std::map<Key, Rat>& terms() const { return c_; }
  Rat coeff(int a, int b) const;
  bool is_zero() const { return c_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial

  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator*=(const Rat& s);

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const Rat& s) { return a *= s; }
  friend BiPoly operator*(const Rat& s, BiPoly a) { return a *= s; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    return a.c_ == b.c_;
  }

  BiPoly shifted(const Rat& dx, const Rat& dy) const;  // p(X+dx, Y+dy)
  BiPoly swapped() const;                              // p(Y, X)
  BiPoly negated_args() const;                         // p(-X, -Y)
  BiPoly homogeneous_part(int k) const;
  Rat eval(const Rat& x, const Rat& y) const;

private:
  void add_term(int a, int b, const Rat& c);
  std::map<Key, Rat> c_;
};

// Dense univariate polynomial over the rationals, coefficients stored in
// ascending degree order with no trailing zeros.
class UniPoly {
public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs);

  static UniPoly constant(const Rat& c);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }

  Rat eval(const Rat& x) const;
  UniPoly derivative() const;
  UniPoly shifted(const Rat& a) const;  // p(x + a)

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const Rat& s);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const Rat& s) { return a *= s; }
  friend UniPoly operator*(const Rat& s, UniPoly a) { return a *= s; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.c_ == b.c_;
  }

  // Writes p as (x - root)·q + r and returns (q, r).
  std::pair<UniPoly, Rat> divide_by_linear_root(const Rat& root) const;

private:
  void trim();
  std::vector<Rat> c_;
};

}  // namespace nspec
