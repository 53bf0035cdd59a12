// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include <nspec/spectral.hpp>

#include <nspec/eigen_poly.hpp>
#include <nspec/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace nspec {

Mat interior(const KernelSpec& spec) {
  Mat m(spec.N, spec.N);
  for (long n = 1; n <= spec.N; ++n)
    for (long c = 1; c <= spec.N; ++c) m.at(n - 1, c - 1) = spec.at(n, c);
  return m;
}

EigenSys sym_eigen(const Mat& m, const std::vector<double>& w) {
  const long n = m.rows;
  if (m.cols != n) throw std::invalid_argument("sym_eigen needs square input");
  if (static_cast<long>(w.size()) != n)
    throw std::invalid_argument("weight size mismatch");
  for (double wi : w)
    if (!(wi > 0.0))
      throw std::invalid_argument("sym_eigen weights must be positive");

  std::vector<double> sq(n), inv_sq(n);
  for (long i = 0; i < n; ++i) {
    sq[i] = std::sqrt(w[i]);
    inv_sq[i] = 1.0 / sq[i];
  }

  Mat b(n, n);
  double frob = 0.0;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      b.at(i, j) = sq[i] * m.at(i, j) * inv_sq[j];
      frob += b.at(i, j) * b.at(i, j);
    }
  frob = std::sqrt(frob);

  double defect = 0.0;
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j)
      defect = std::max(defect, std::abs(b.at(i, j) - b.at(j, i)));
  if (defect > 1e-8 * std::max(1.0, frob))
    throw NotSymmetrizableError(
        defect, "matrix is not self-adjoint in the given weights (defect " +
                    std::to_string(defect) + ")");

  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (b.at(i, j) + b.at(j, i));
      b.at(i, j) = avg;
      b.at(j, i) = avg;
    }

  Mat v = Mat::identity(n);
  const double stop = 1e-13 * std::max(1.0, frob);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (long i = 0; i < n; ++i)
      for (long j = i + 1; j < n; ++j) off += 2.0 * b.at(i, j) * b.at(i, j);
    if (std::sqrt(off) < stop) break;
    if (sweep == 99)
      throw ConvergenceError("Jacobi eigensolver did not reach tolerance");

    for (long p = 0; p < n; ++p)
      for (long q = p + 1; q < n; ++q) {
        const double apq = b.at(p, q);
        if (apq == 0.0) continue;
        const double diff = b.at(q, q) - b.at(p, p);
        double t;
        if (std::abs(apq) < 1e-300 * std::abs(diff)) {
          t = apq / diff;
        } else {
          const double theta = diff / (2.0 * apq);
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = b.at(p, p), aqq = b.at(q, q);
        b.at(p, p) = app - t * apq;
        b.at(q, q) = aqq + t * apq;
        b.at(p, q) = 0.0;
        b.at(q, p) = 0.0;
        for (long r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = b.at(r, p), arq = b.at(r, q);
            b.at(r, p) = arp - s * (arq + tau * arp);
            b.at(r, q) = arq + s * (arp - tau * arq);
            b.at(p, r) = b.at(r, p);
            b.at(q, r) = b.at(r, q);
          }
          const double vrp = v.at(r, p), vrq = v.at(r, q);
          v.at(r, p) = vrp - s * (vrq + tau * vrp);
          v.at(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
  }

  std::vector<long> order(n);
  std::iota(order.begin(), order.end(), 0L);
  std::sort(order.begin(), order.end(),
            [&](long x, long y) { return b.at(x, x) > b.at(y, y); });

  EigenSys sys;
  sys.values.resize(n);
  sys.vectors.assign(n, std::vector<double>(n));
  for (long col = 0; col < n; ++col) {
    sys.values[col] = b.at(order[col], order[col]);
    for (long row = 0; row < n; ++row)
      sys.vectors[col][row] = inv_sq[row] * v.at(row, order[col]);
  }
  return sys;
}

std::vector<std::vector<long>> strongly_connected_components(const Mat& m) {
  const long n = m.rows;
  std::vector<long> idx(n, -1), low(n, 0), stack_pos(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<long> stack;
  std::vector<std::vector<long>> comps;
  long counter = 0;

  // Iterative Tarjan: each frame carries the vertex and the next column to
  // scan for an outgoing edge.
  struct Frame {
    long v;
    long next;
  };
  for (long root = 0; root < n; ++root) {
    if (idx[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      bool descended = false;
      while (f.next < n) {
        const long u = f.next++;
        if (m.at(f.v, u) <= 0.0 || u == f.v) continue;
        if (idx[u] == -1) {
          idx[u] = low[u] = counter++;
          stack.push_back(u);
          on_stack[u] = true;
          frames.push_back({u, 0});
          descended = true;
          break;
        }
        if (on_stack[u]) low[f.v] = std::min(low[f.v], idx[u]);
      }
      if (descended) continue;
      const long v = f.v;
      frames.pop_back();
      if (!frames.empty())
        low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == idx[v]) {
        std::vector<long> comp;
        for (;;) {
          const long u = stack.back();
          stack.pop_back();
          on_stack[u] = false;
          comp.push_back(u);
          if (u == v) break;
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

bool is_irreducible(const Mat& m) {
  return strongly_connected_components(m).size() == 1;
}

long period(const Mat& m) {
  const long n = m.rows;
  if (!is_irreducible(m))
    throw NotIrreducibleError("period is defined for irreducible matrices");
  std::vector<long> level(n, -1);
  std::vector<long> queue{0};
  level[0] = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    const long v = queue[head];
    for (long u = 0; u < n; ++u) {
      if (m.at(v, u) <= 0.0) continue;
      if (level[u] == -1) {
        level[u] = level[v] + 1;
        queue.push_back(u);
      }
    }
  }
  long g = 0;
  for (long v = 0; v < n; ++v)
    for (long u = 0; u < n; ++u) {
      if (m.at(v, u) <= 0.0) continue;
      g = std::gcd(g, std::abs(level[v] + 1 - level[u]));
    }
  return g == 0 ? 1 : g;
}

namespace {

double rayleigh(const Mat& m, const std::vector<double>& u) {
  const std::vector<double> mu_ = mat_vec(m, u);
  return dot(u, mu_) / dot(u, u);
}

double inf_residual(const Mat& m, const std::vector<double>& u, double theta) {
  const std::vector<double> mu_ = mat_vec(m, u);
  double r = 0.0;
  for (size_t t = 0; t < u.size(); ++t)
    r = std::max(r, std::abs(mu_[t] - theta * u[t]));
  return r;
}

// Power iteration on an aperiodic irreducible nonnegative matrix.
double power_vector(const Mat& m, std::vector<double>& u, double tol) {
  const long n = m.rows;
  u.assign(n, 1.0 / n);
  double theta = rayleigh(m, u);
  int good_rounds = 0;
  for (long it = 0; it < 1000000; ++it) {
    std::vector<double> next = mat_vec(m, u);
    const double mass = std::accumulate(next.begin(), next.end(), 0.0);
    if (mass <= 0.0) return 0.0;  // the all-zero 1x1 block
    for (double& x : next) x /= mass;
    const double theta_next = rayleigh(m, next);
    u = std::move(next);
    const double scale = std::max(std::abs(theta_next), 1e-300);
    const bool ok = inf_residual(m, u, theta_next) / scale < tol &&
                    std::abs(theta_next - theta) / scale < tol;
    theta = theta_next;
    good_rounds = ok ? good_rounds + 1 : 0;
    if (good_rounds >= 2) return theta;
  }
  throw ConvergenceError("power iteration exceeded its iteration cap");
}

void check_nonnegative(const Mat& m) {
  if (m.rows != m.cols)
    throw std::invalid_argument("Perron theory needs a square matrix");
  for (double x : m.a)
    if (x < 0.0)
      throw ValidationError("Perron theory needs a nonnegative matrix");
}

Mat lazy_half_step(const Mat& m) {
  Mat h = m;
  for (long i = 0; i < h.rows; ++i) h.at(i, i) += 1.0;
  for (double& x : h.a) x *= 0.5;
  return h;
}

}  // namespace

PerronPair perron_pair(const Mat& m, double tol) {
  check_nonnegative(m);
  const long n = m.rows;
  const auto comps = strongly_connected_components(m);
  if (comps.size() != 1)
    throw NotIrreducibleError(
        "matrix is reducible: " + std::to_string(comps.size()) +
        " strongly connected components (first has " +
        std::to_string(comps[0].size()) + " states)");

  const bool periodic = period(m) > 1;
  const Mat it_matrix = periodic ? lazy_half_step(m) : m;

  PerronPair pair;
  double theta = power_vector(it_matrix, pair.right, tol);

  Mat transposed = it_matrix.transposed();
  const double theta_left = power_vector(transposed, pair.left, tol);
  if (std::abs(theta - theta_left) >
      1e-10 * std::max({std::abs(theta), std::abs(theta_left), 1e-300}))
    throw ConvergenceError("left and right Perron estimates disagree");

  if (periodic) theta = 2.0 * theta - 1.0;
  pair.theta = theta;

  const double left_mass =
      std::accumulate(pair.left.begin(), pair.left.end(), 0.0);
  for (double& x : pair.left) x /= left_mass;
  const double cross = dot(pair.left, pair.right);
  if (!(cross > 0.0))
    throw ConvergenceError("degenerate Perron normalization");
  for (double& x : pair.right) x /= cross;

  if (n > 0 && theta > 0.0) {
    const double scale = std::max(theta, 1e-300);
    if (inf_residual(m, pair.right, theta) / scale > 100 * tol)
      throw ConvergenceError("Perron residual above tolerance");
  }
  return pair;
}

double spectral_radius(const Mat& m, double tol) {
  check_nonnegative(m);
  double radius = 0.0;
  for (const auto& comp : strongly_connected_components(m)) {
    if (comp.size() == 1) {
      radius = std::max(radius, m.at(comp[0], comp[0]));
      continue;
    }
    Mat sub(comp.size(), comp.size());
    for (size_t r = 0; r < comp.size(); ++r)
      for (size_t c = 0; c < comp.size(); ++c)
        sub.at(r, c) = m.at(comp[r], comp[c]);
    radius = std::max(radius, perron_pair(sub, tol).theta);
  }
  return radius;
}

double weighted_operator_norm(const Mat& m, const std::vector<double>& w) {
  const EigenSys sys = sym_eigen(m, w);
  double norm = 0.0;
  for (double v : sys.values) norm = std::max(norm, std::abs(v));
  return norm;
}

double smallest_singular_value_of_columns(
    const std::vector<std::vector<double>>& cols) {
  const long k = static_cast<long>(cols.size());
  if (k == 0) return 0.0;
  std::vector<std::vector<double>> unit(cols.begin(), cols.end());
  for (auto& c : unit) {
    const double norm = std::sqrt(dot(c, c));
    if (norm == 0.0) return 0.0;
    for (double& x : c) x /= norm;
  }
  Mat gram(k, k);
  for (long i = 0; i < k; ++i)
    for (long j = i; j < k; ++j) {
      const double g = dot(unit[i], unit[j]);
      gram.at(i, j) = g;
      gram.at(j, i) = g;
    }
  const EigenSys sys = sym_eigen(gram, std::vector<double>(k, 1.0));
  const double lambda_min = sys.values.back();
  return std::sqrt(std::max(lambda_min, 0.0));
}

namespace {

void push_assembled(AssembledBasis& basis, double theta, long d,
                    std::vector<double> v) {
  double top = 0.0;
  double lead = 0.0;
  for (double x : v) {
    if (std::abs(x) > top) top = std::abs(x);
    if (lead == 0.0 && x != 0.0) lead = x;
  }
  if (top > 0.0) {
    const double flip = (lead < 0.0) ? -1.0 : 1.0;
    for (double& x : v) x = flip * x / top;
  }
  basis.vectors.push_back(AssembledVector{theta, d, std::move(v)});
}

}  // namespace

AssembledBasis assemble_basis(const KernelSpec& spec,
                              const ReversibleMeasure& mu) {
  const long N = spec.N;
  AssembledBasis basis{TriIndex(N), {}};
  const TriIndex& idx = basis.index;

  push_assembled(basis, 1.0, 0, std::vector<double>(idx.size(), 1.0));

  // Interior spectrum, spread as functions of the total and zero at the
  // origin (the absorbing row pins the origin coordinate to zero whenever
  // theta differs from 1).
  {
    std::vector<double> w(mu.mu.begin() + 1, mu.mu.begin() + N + 1);
    const EigenSys sys = sym_eigen(interior(spec), w);
    for (long l = 0; l < N; ++l) {
      std::vector<double> v(idx.size(), 0.0);
      for (long flat = 0; flat < idx.size(); ++flat) {
        const auto [i, j] = idx.state(flat);
        if (i + j >= 1) v[flat] = sys.vectors[l][i + j - 1];
      }
      push_assembled(basis, sys.values[l], 0, std::move(v));
    }
  }

  for (long d = 1; d <= N; ++d) {
    const BlockMatrix block = lift_block(spec, d);
    const std::vector<double> full_w = block_measure(mu, d, N);
    const std::vector<double> w(full_w.begin() + d, full_w.begin() + N + 1);
    const EigenSys sys = sym_eigen(block.p, w);
    const BiPoly core =
        (d == 1) ? BiPoly::monomial(1, 0) : nspec::build_P(d).core;
    for (long l = 0; l < N - d + 1; ++l) {
      std::vector<double> v(idx.size(), 0.0);
      for (long flat = 0; flat < idx.size(); ++flat) {
        const auto [i, j] = idx.state(flat);
        if (i + j < d) continue;
        const double profile = to_double(core.eval(Rat(i), Rat(j)));
        if (profile == 0.0) continue;
        v[flat] = profile * sys.vectors[l][i + j - d];
      }
      push_assembled(basis, sys.values[l], d, std::move(v));
    }
  }
  return basis;
}

}  // namespace nspec
