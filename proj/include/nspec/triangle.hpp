// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace nspec {

// Bijection between the discrete triangle {(i,j) : i,j >= 0, i+j <= N} and
// {0, ..., (N+1)(N+2)/2 - 1}, ordered lexicographically by (i, j).
class TriIndex {
public:
  explicit TriIndex(long N) : n_(N) {
    if (N < 0) throw std::domain_error("TriIndex needs N >= 0");
    states_.reserve(size());
    for (long i = 0; i <= N; ++i)
      for (long j = 0; i + j <= N; ++j) states_.emplace_back(i, j);
  }

  long N() const { return n_; }
  long size() const { return (n_ + 1) * (n_ + 2) / 2; }

  long index(long i, long j) const {
    return i * (n_ + 1) - i * (i - 1) / 2 + j;
  }
  bool contains(long i, long j) const {
    return i >= 0 && j >= 0 && i + j <= n_;
  }
  std::pair<long, long> state(long idx) const { return states_[idx]; }
  const std::vector<std::pair<long, long>>& states() const { return states_; }

private:
  long n_;
  std::vector<std::pair<long, long>> states_;
};

}  // namespace nspec
