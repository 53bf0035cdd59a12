// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include "nspec/moran.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "nspec/errors.hpp"

namespace nspec {

namespace {

// Basis of the nullspace of an m x n rational matrix, by reduction to row
// echelon form. Each basis vector sets one free column to 1.
std::vector<std::vector<Rat>> rational_kernel(RatMat a) {
  const long rows = a.rows;
  const long cols = a.cols;
  std::vector<long> pivot_col;
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long p = -1;
    for (long i = r; i < rows; ++i) {
      if (a.at(i, c) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    for (long j = 0; j < cols; ++j) std::swap(a.at(r, j), a.at(p, j));
    const Rat inv = Rat(1) / a.at(r, c);
    for (long j = c; j < cols; ++j) a.at(r, j) *= inv;
    for (long i = 0; i < rows; ++i) {
      if (i == r || a.at(i, c) == 0) continue;
      const Rat f = a.at(i, c);
      for (long j = c; j < cols; ++j) a.at(i, j) -= f * a.at(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (long c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (long c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[c] = 1;
    for (long i = 0; i < static_cast<long>(pivot_col.size()); ++i) {
      v[pivot_col[i]] = -a.at(i, c);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

void require_range(long N, long d, long n) {
  if (N < 2) throw ValidationError("urn size must be at least 2");
  if (d < 0 || d > N - 1) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "degree %ld outside [0, %ld]", d, N - 1);
    throw ValidationError(buf);
  }
  if (n < 1 || n > N - d) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "index %ld outside [1, %ld]", n, N - d);
    throw ValidationError(buf);
  }
}

// The factor for d = 0, where the Hahn parametrization alpha = 2d - 1 = -1
// degenerates. u = (N - X) R solves
//
//   -n(n-1) u(k) = k (N - k) (u(k+1) - 2 u(k) + u(k-1))
//
// as a polynomial identity, and for n >= 2 the solution with R of degree
// n - 1 is unique up to scale. Expanding R over the monomial basis turns
// the identity into a homogeneous linear system on the coefficients.
UniPoly r_polynomial_degenerate(long N, long n) {
  if (n == 1) return UniPoly::constant(Rat(1));
  const UniPoly n_minus_x(std::vector<Rat>{Rat(N), Rat(-1)});
  RatMat sys(n + 2, n);
  for (long m = 0; m < n; ++m) {
    std::vector<Rat> mono(m + 1, Rat(0));
    mono[m] = 1;
    const UniPoly w = n_minus_x * UniPoly(std::move(mono));
    UniPoly second_diff = w.shifted(Rat(1)) + w.shifted(Rat(-1));
    second_diff -= w * Rat(2);
    UniPoly e = w * Rat(n * (n - 1));
    e += UniPoly(std::vector<Rat>{Rat(0), Rat(N), Rat(-1)}) * second_diff;
    for (long k = 0; k <= n + 1; ++k) sys.at(k, m) = e.coeff(k);
  }
  const auto basis = rational_kernel(sys);
  if (basis.size() != 1) {
    throw std::logic_error("degenerate factor solution space is not a line");
  }
  std::vector<Rat> c = basis[0];
  const Rat lead = c[n - 1];
  if (lead == 0) {
    throw std::logic_error("degenerate factor dropped a degree");
  }
  for (auto& x : c) x /= lead;
  return UniPoly(std::move(c));
}

BiPoly core_for(long d) {
  return build_P(static_cast<int>(d)).core;
}

}  // namespace

MoranSpec moran_matrix(long N) {
  if (N < 2) throw ValidationError("urn size must be at least 2");
  MoranSpec spec(N);
  const long size = spec.index.size();
  spec.pi = RatMat(size, size);
  const Rat denom(N * N);
  for (long s = 0; s < size; ++s) {
    const auto [i, j] = spec.index.state(s);
    const long r = N - i - j;
    auto put = [&](long k, long l, long mass) {
      if (mass == 0) return;
      spec.pi.at(s, spec.index.index(k, l)) += Rat(mass) / denom;
    };
    put(i + 1, j, i * r);
    put(i - 1, j, i * r);
    put(i, j + 1, j * r);
    put(i, j - 1, j * r);
    put(i + 1, j - 1, i * j);
    put(i - 1, j + 1, i * j);
    put(i, j, i * i + j * j + r * r);
  }
  return spec;
}

Mat moran_matrix_double(const MoranSpec& spec) {
  Mat m(spec.pi.rows, spec.pi.cols);
  for (long i = 0; i < spec.pi.rows; ++i) {
    for (long j = 0; j < spec.pi.cols; ++j) {
      m.at(i, j) = to_double(spec.pi.at(i, j));
    }
  }
  return m;
}

std::vector<std::pair<Rat, long>> predicted_spectrum(long N) {
  if (N < 2) throw ValidationError("urn size must be at least 2");
  std::vector<std::pair<Rat, long>> sp;
  sp.emplace_back(Rat(1), 3);
  for (long k = 2; k <= N; ++k) {
    sp.emplace_back(Rat(1) - Rat(k * (k - 1)) / Rat(N * N), k + 1);
  }
  return sp;
}

UniPoly r_polynomial(long N, long d, long n) {
  require_range(N, d, n);
  if (d == 0) return r_polynomial_degenerate(N, n);
  const UniPoly q = hahn_poly(n, Rat(2 * d - 1), Rat(-1), N - d + 1);
  const auto [quot, rem] = q.shifted(Rat(-d)).divide_by_linear_root(Rat(N));
  if (rem != 0) {
    throw DivisionRemainderError(
        "shifted Hahn polynomial does not vanish at the urn size");
  }
  return quot * Rat(-1);
}

std::vector<MoranVector> moran_eigenvectors(long N) {
  if (N < 2) throw ValidationError("urn size must be at least 2");
  const TriIndex index(N);
  const long size = index.size();
  std::vector<MoranVector> out;
  auto theta_of = [&](long k) {
    return Rat(1) - Rat(k * (k - 1)) / Rat(N * N);
  };
  for (long d = 0; d <= N; ++d) {
    MoranVector mv;
    mv.d = d;
    mv.n = 0;
    mv.theta = theta_of(d);
    mv.v.resize(size);
    const BiPoly core = core_for(d);
    for (long s = 0; s < size; ++s) {
      const auto [i, j] = index.state(s);
      mv.v[s] = core.eval(Rat(i), Rat(j));
    }
    out.push_back(std::move(mv));
  }
  for (long d = 0; d <= N - 1; ++d) {
    const BiPoly core = core_for(d);
    for (long n = 1; n <= N - d; ++n) {
      MoranVector mv;
      mv.d = d;
      mv.n = n;
      mv.theta = theta_of(d + n);
      mv.v.resize(size);
      const UniPoly r = r_polynomial(N, d, n);
      for (long s = 0; s < size; ++s) {
        const auto [i, j] = index.state(s);
        mv.v[s] = core.eval(Rat(i), Rat(j)) * Rat(N - i - j) * r.eval(Rat(i + j));
      }
      out.push_back(std::move(mv));
    }
  }
  return out;
}

MoranReport verify_eigen(long N) {
  const MoranSpec spec = moran_matrix(N);
  const long size = spec.index.size();
  const auto family = moran_eigenvectors(N);
  MoranReport report;
  report.N = N;
  report.vectors = static_cast<long>(family.size());

  report.residuals_zero = report.vectors == size;
  for (const auto& mv : family) {
    const auto image = mat_vec(spec.pi, mv.v);
    for (long s = 0; s < size; ++s) {
      if (image[s] != mv.theta * mv.v[s]) {
        report.residuals_zero = false;
        break;
      }
    }
    if (!report.residuals_zero) break;
  }

  RatMat stacked(size, report.vectors);
  for (long c = 0; c < report.vectors; ++c) {
    for (long s = 0; s < size; ++s) stacked.at(s, c) = family[c].v[s];
  }
  report.full_rank = rational_rank(stacked) == size;

  std::map<Rat, long> counted;
  for (const auto& mv : family) ++counted[mv.theta];
  std::map<Rat, long> predicted;
  for (const auto& [theta, mult] : predicted_spectrum(N)) {
    predicted[theta] += mult;
  }
  report.spectrum_matches = counted == predicted;

  report.ok =
      report.residuals_zero && report.full_rank && report.spectrum_matches;
  return report;
}

RatMat urn2_matrix(long N) {
  if (N < 2) throw ValidationError("urn size must be at least 2");
  RatMat pi(N + 1, N + 1);
  const Rat denom(N * N);
  for (long k = 0; k <= N; ++k) {
    const Rat move = Rat(k * (N - k)) / denom;
    if (k > 0) pi.at(k, k - 1) = move;
    if (k < N) pi.at(k, k + 1) = move;
    pi.at(k, k) = Rat(1) - move * 2;
  }
  return pi;
}

std::vector<std::vector<Rat>> urn2_eigenvectors(long N) {
  if (N < 2) throw ValidationError("urn size must be at least 2");
  std::vector<std::vector<Rat>> out;
  out.emplace_back(N + 1, Rat(1));
  for (long n = 1; n <= N; ++n) {
    const UniPoly r = r_polynomial(N, 0, n);
    std::vector<Rat> v(N + 1);
    for (long k = 0; k <= N; ++k) v[k] = Rat(N - k) * r.eval(Rat(k));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace nspec
