// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <cstdint>

namespace nspec {

// Counter-based generator with an explicit algorithm, so that published
// numbers are reproducible from the seed alone, in any language:
//
//   out(i) = mix(seed + (i+1) * 0x9E3779B97F4A7C15)
//
// where mix is the 64-bit finalizer
//
//   z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9;
//   z ^= z >> 27;  z *= 0x94D049BB133111EB;
//   z ^= z >> 31.
//
// Derived stream t reseeds with out(t) of the master sequence; streams are
// pure functions of (seed, t), so trials can run in any order or in
// parallel without changing results.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next() { return out(count_++); }

  Rng stream(std::uint64_t t) const { return Rng(out(t)); }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., bound-1}, exactly, by multiply-shift with rejection.
  std::uint64_t uniform_int(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t cutoff = -bound % bound;
      while (lo < cutoff) {
        m = static_cast<unsigned __int128>(next()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t out(std::uint64_t i) const {
    return mix(seed_ + (i + 1) * 0x9E3779B97F4A7C15ULL);
  }

  std::uint64_t seed_;
  std::uint64_t count_ = 0;
};

}  // namespace nspec
