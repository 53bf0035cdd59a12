// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include <nspec/poly.hpp>

#include <algorithm>

namespace nspec {

BiPoly BiPoly::constant(const Rat& c) { return monomial(0, 0, c); }

BiPoly BiPoly::monomial(int a, int b, const Rat& c) {
  BiPoly p;
  p.add_term(a, b, c);
  return p;
}

void BiPoly::add_term(int a, int b, const Rat& c) {
  if (c == 0) return;
  auto key = Key{a, b};
  auto it = c_.find(key);
  if (it == c_.end()) {
    c_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

Rat BiPoly::coeff(int a, int b) const {
  auto it = c_.find({a, b});
  return it == c_.end() ? Rat(0) : it->second;
}

int BiPoly::total_degree() const {
  int deg = -1;
  for (const auto& [key, c] : c_) deg = std::max(deg, key.first + key.second);
  return deg;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [key, c] : o.c_) add_term(key.first, key.second, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [key, c] : o.c_) add_term(key.first, key.second, -c);
  return *this;
}

BiPoly& BiPoly::operator*=(const Rat& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& [key, c] : c_) c *= s;
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  for (const auto& [ka, ca] : a.c_)
    for (const auto& [kb, cb] : b.c_)
      r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return r;
}

BiPoly BiPoly::shifted(const Rat& dx, const Rat& dy) const {
  // Expand (X+dx)^a (Y+dy)^b term by term with binomial weights.
  BiPoly r;
  for (const auto& [key, c] : c_) {
    const int a = key.first, b = key.second;
    Rat xw = 1;  // dx^(a-s) binom(a,s), built from the top power down
    std::vector<Rat> xpart(a + 1);
    for (int s = a; s >= 0; --s) {
      xpart[s] = Rat(binomial(a, s)) * xw;
      xw *= dx;
    }
    Rat yw = 1;
    for (int t = b; t >= 0; --t) {
      const Rat ypart = Rat(binomial(b, t)) * yw;
      yw *= dy;
      if (ypart == 0) continue;
      for (int s = 0; s <= a; ++s) {
        if (xpart[s] == 0) continue;
        r.add_term(s, t, c * xpart[s] * ypart);
      }
    }
  }
  return r;
}

BiPoly BiPoly::swapped() const {
  BiPoly r;
  for (const auto& [key, c] : c_) r.add_term(key.second, key.first, c);
  return r;
}

BiPoly BiPoly::negated_args() const {
  BiPoly r;
  for (const auto& [key, c] : c_) {
    const Rat s = ((key.first + key.second) % 2 == 0) ? c : -c;
    r.add_term(key.first, key.second, s);
  }
  return r;
}

BiPoly BiPoly::homogeneous_part(int k) const {
  BiPoly r;
  for (const auto& [key, c] : c_)
    if (key.first + key.second == k) r.add_term(key.first, key.second, c);
  return r;
}

Rat BiPoly::eval(const Rat& x, const Rat& y) const {
  Rat sum = 0;
  for (const auto& [key, c] : c_) {
    Rat t = c;
    for (int s = 0; s < key.first; ++s) t *= x;
    for (int s = 0; s < key.second; ++s) t *= y;
    sum += t;
  }
  return sum;
}

UniPoly::UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rat& c) { return UniPoly(std::vector<Rat>{c}); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat UniPoly::eval(const Rat& x) const {
  Rat r = 0;
  for (size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
  return r;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Rat> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = Rat(k) * c_[k];
  return UniPoly(std::move(d));
}

UniPoly UniPoly::shifted(const Rat& a) const {
  // Horner in the shifted variable: p(x+a) accumulated from the top.
  UniPoly r;
  const UniPoly lin(std::vector<Rat>{a, Rat(1)});
  for (size_t k = c_.size(); k-- > 0;) {
    r = r * lin;
    r += UniPoly::constant(c_[k]);
  }
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rat& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(r));
}

std::pair<UniPoly, Rat> UniPoly::divide_by_linear_root(const Rat& root) const {
  if (c_.empty()) return {UniPoly(), Rat(0)};
  std::vector<Rat> q(c_.size() - 1, Rat(0));
  Rat carry = c_.back();
  for (size_t k = c_.size() - 1; k-- > 0;) {
    q[k] = carry;
    carry = c_[k] + root * carry;
  }
  return {UniPoly(std::move(q)), carry};
}

}  // namespace nspec
