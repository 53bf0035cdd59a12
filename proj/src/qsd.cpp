// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include "nspec/qsd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <utility>

#include "nspec/errors.hpp"
#include "nspec/rng.hpp"
#include "nspec/spectral.hpp"

namespace nspec {

namespace {

constexpr double kRowTol = 1e-10;
// Relative tolerances for comparing the three block eigenvalues. The case
// table is discontinuous in them, so comparisons that land between the two
// thresholds are flagged rather than silently resolved one way.
constexpr double kTieEqual = 1e-9;
constexpr double kTieStrict = 1e-7;

std::string state_name(long i, long j) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "(%ld,%ld)", i, j);
  return buf;
}

enum class Cmp { Less, Equal, Greater, Band };

Cmp compare_theta(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  const double rel = std::abs(a - b) / scale;
  if (rel <= kTieEqual) return Cmp::Equal;
  if (rel >= kTieStrict) return a > b ? Cmp::Greater : Cmp::Less;
  return Cmp::Band;
}

Cmp resolve(Cmp c, bool tie_favoring, double a, double b) {
  if (c != Cmp::Band) return c;
  if (tie_favoring) return Cmp::Equal;
  return a > b ? Cmp::Greater : Cmp::Less;
}

YaglomCase decide(Cmp c12, Cmp c13, Cmp c23, Cmp cm3) {
  if (c12 == Cmp::Greater)
    return c13 == Cmp::Less ? YaglomCase::Coexistence
                            : YaglomCase::StrongType1;
  if (c12 == Cmp::Less)
    return c23 == Cmp::Less ? YaglomCase::Coexistence
                            : YaglomCase::StrongType2;
  if (cm3 == Cmp::Less) return YaglomCase::Coexistence;
  if (cm3 == Cmp::Greater) return YaglomCase::TieAboveQ3;
  return YaglomCase::TieEqualsQ3;
}

YaglomCase classify(double t1, double t2, double t3, bool tie_favoring) {
  const double tm = std::max(t1, t2);
  return decide(resolve(compare_theta(t1, t2), tie_favoring, t1, t2),
                resolve(compare_theta(t1, t3), tie_favoring, t1, t3),
                resolve(compare_theta(t2, t3), tie_favoring, t2, t3),
                resolve(compare_theta(tm, t3), tie_favoring, tm, t3));
}

void require_hypotheses(const A2dMCSpec& s) {
  if (!s.f1.irreducible) throw HypothesisError("axis-1 block is reducible");
  if (!s.f1.aperiodic) throw HypothesisError("axis-1 block is periodic");
  if (!s.f2.irreducible) throw HypothesisError("axis-2 block is reducible");
  if (!s.f2.aperiodic) throw HypothesisError("axis-2 block is periodic");
  if (!s.f3.irreducible) throw HypothesisError("interior block is reducible");
  if (!s.f3.aperiodic) throw HypothesisError("interior block is periodic");
  if (!s.r1_nonzero)
    throw HypothesisError("interior-to-axis-1 coupling block is zero");
  if (!s.r2_nonzero)
    throw HypothesisError("interior-to-axis-2 coupling block is zero");
}

Mat shifted_block(double theta, const Mat& q) {
  Mat m(q.rows, q.cols);
  for (long i = 0; i < q.rows; ++i)
    for (long j = 0; j < q.cols; ++j)
      m.at(i, j) = (i == j ? theta : 0.0) - q.at(i, j);
  return m;
}

// w = v3 r (theta I - q)^{-1}, solved through the transposed system.
std::vector<double> coupling_w(double theta, const Mat& q, const Mat& r,
                               const std::vector<double>& v3) {
  const std::vector<double> t = vec_mat(v3, r);
  return lu_solve(lu_factor(shifted_block(theta, q).transposed()), t);
}

Mat outer(const std::vector<double>& col, const std::vector<double>& row) {
  Mat m(static_cast<long>(col.size()), static_cast<long>(row.size()));
  for (long i = 0; i < m.rows; ++i)
    for (long j = 0; j < m.cols; ++j) m.at(i, j) = col[i] * row[j];
  return m;
}

void normalize(std::vector<double>& d) {
  const double s = std::accumulate(d.begin(), d.end(), 0.0);
  for (double& e : d) e /= s;
}

std::vector<double> axis_distribution(const A2dMCSpec& s,
                                      const std::vector<long>& axis,
                                      const std::vector<double>& v) {
  std::vector<double> d(static_cast<std::size_t>(s.index.size()), 0.0);
  for (std::size_t a = 0; a < axis.size(); ++a)
    d[static_cast<std::size_t>(axis[a])] = v[a];
  normalize(d);
  return d;
}

std::vector<double> mixture_distribution(const A2dMCSpec& s, double p,
                                         const std::vector<double>& v1,
                                         const std::vector<double>& v2) {
  std::vector<double> d(static_cast<std::size_t>(s.index.size()), 0.0);
  for (std::size_t a = 0; a < s.axis1.size(); ++a)
    d[static_cast<std::size_t>(s.axis1[a])] = p * v1[a];
  for (std::size_t a = 0; a < s.axis2.size(); ++a)
    d[static_cast<std::size_t>(s.axis2[a])] = (1.0 - p) * v2[a];
  normalize(d);
  return d;
}

struct CaseData {
  std::vector<double> distribution;
  std::vector<double> w1, w2;
  double mix = 0.0;
  bool has_mix = false;
};

CaseData build_case(const A2dMCSpec& s, YaglomCase c, long init_flat,
                    const PerronPair& p1, const PerronPair& p2,
                    const PerronPair& p3) {
  CaseData out;
  switch (c) {
    case YaglomCase::Axis1Initial:
    case YaglomCase::StrongType1:
      out.distribution = axis_distribution(s, s.axis1, p1.left);
      return out;
    case YaglomCase::Axis2Initial:
    case YaglomCase::StrongType2:
      out.distribution = axis_distribution(s, s.axis2, p2.left);
      return out;
    case YaglomCase::Coexistence: {
      out.w1 = coupling_w(p3.theta, s.q1, s.r1, p3.left);
      out.w2 = coupling_w(p3.theta, s.q2, s.r2, p3.left);
      std::vector<double> d(static_cast<std::size_t>(s.index.size()), 0.0);
      for (std::size_t m = 0; m < s.inter.size(); ++m)
        d[static_cast<std::size_t>(s.inter[m])] = p3.left[m];
      for (std::size_t a = 0; a < s.axis1.size(); ++a)
        d[static_cast<std::size_t>(s.axis1[a])] = out.w1[a];
      for (std::size_t a = 0; a < s.axis2.size(); ++a)
        d[static_cast<std::size_t>(s.axis2[a])] = out.w2[a];
      normalize(d);
      out.distribution = std::move(d);
      return out;
    }
    case YaglomCase::TieAboveQ3: {
      // p = delta (theta1 I - Q3)^{-1} R1 u1, normalized against the same
      // expression with R1 u1 + R2 u2.
      const Lu f = lu_factor(shifted_block(p1.theta, s.q3));
      const std::vector<double> y = lu_solve(f, mat_vec(s.r1, p1.right));
      const std::vector<double> z = lu_solve(f, mat_vec(s.r2, p2.right));
      long pos = -1;
      for (std::size_t m = 0; m < s.inter.size(); ++m)
        if (s.inter[m] == init_flat) pos = static_cast<long>(m);
      const double a = y[static_cast<std::size_t>(pos)];
      const double b = z[static_cast<std::size_t>(pos)];
      out.mix = a / (a + b);
      out.has_mix = true;
      out.distribution = mixture_distribution(s, out.mix, p1.left, p2.left);
      return out;
    }
    case YaglomCase::TieEqualsQ3: {
      const double a = dot(p3.left, mat_vec(s.r1, p1.right));
      const double b = dot(p3.left, mat_vec(s.r2, p2.right));
      out.mix = a / (a + b);
      out.has_mix = true;
      out.distribution = mixture_distribution(s, out.mix, p1.left, p2.left);
      return out;
    }
  }
  throw std::logic_error("unreachable Yaglom case");
}

}  // namespace

const char* case_label(YaglomCase c) {
  switch (c) {
    case YaglomCase::Axis1Initial:
      return "axis-1 initial state";
    case YaglomCase::Axis2Initial:
      return "axis-2 initial state";
    case YaglomCase::StrongType1:
      return "theta1>=theta3 and theta1>theta2";
    case YaglomCase::StrongType2:
      return "theta2>=theta3 and theta2>theta1";
    case YaglomCase::Coexistence:
      return "theta3>theta1,theta2";
    case YaglomCase::TieAboveQ3:
      return "theta1=theta2>theta3";
    case YaglomCase::TieEqualsQ3:
      return "theta1=theta2=theta3";
  }
  return "";
}

A2dMCSpec extract_blocks(const TriIndex& index, const Mat& pi) {
  const long size = index.size();
  const long n = index.N();
  if (pi.rows != size || pi.cols != size) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "matrix is %ldx%ld but the triangle with N=%ld has %ld "
                  "states",
                  pi.rows, pi.cols, n, size);
    throw ValidationError(buf);
  }

  for (long s = 0; s < size; ++s) {
    double sum = 0.0;
    for (long t = 0; t < size; ++t) {
      const double e = pi.at(s, t);
      if (e < 0.0 || e > 1.0) {
        const auto [i, j] = index.state(s);
        char buf[128];
        std::snprintf(buf, sizeof buf, "entry %.17g at row %s out of [0,1]",
                      e, state_name(i, j).c_str());
        throw ValidationError(buf);
      }
      sum += e;
    }
    if (std::abs(sum - 1.0) > kRowTol) {
      const auto [i, j] = index.state(s);
      char buf[96];
      std::snprintf(buf, sizeof buf, "row %s sums to %.17g",
                    state_name(i, j).c_str(), sum);
      throw ValidationError(buf);
    }
  }

  const long origin = index.index(0, 0);
  for (long t = 0; t < size; ++t)
    if (t != origin && pi.at(origin, t) != 0.0) {
      const auto [k, l] = index.state(t);
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "origin is not absorbing: mass %.17g to %s",
                    pi.at(origin, t), state_name(k, l).c_str());
      throw StructureError(buf);
    }

  A2dMCSpec spec{TriIndex(n)};
  spec.pi = pi;
  for (long i = 1; i <= n; ++i) spec.axis1.push_back(index.index(i, 0));
  for (long j = 1; j <= n; ++j) spec.axis2.push_back(index.index(0, j));
  for (long s = 0; s < size; ++s) {
    const auto [i, j] = index.state(s);
    if (i >= 1 && j >= 1) spec.inter.push_back(s);
  }
  const long m = static_cast<long>(spec.inter.size());

  // Axis rows may only move along their own axis or absorb at the origin.
  for (long axis = 1; axis <= 2; ++axis) {
    const auto& states = axis == 1 ? spec.axis1 : spec.axis2;
    for (long s : states)
      for (long t = 0; t < size; ++t) {
        const auto [k, l] = index.state(t);
        const bool forbidden = axis == 1 ? l >= 1 : k >= 1;
        if (forbidden && pi.at(s, t) != 0.0) {
          const auto [i, j] = index.state(s);
          const char* block =
              (axis == 1 ? k == 0 : l == 0) ? "other-axis" : "interior";
          char buf[160];
          std::snprintf(buf, sizeof buf,
                        "axis-%ld state %s has mass %.17g to %s in the %s "
                        "block (axis size %ld, interior size %ld)",
                        axis, state_name(i, j).c_str(), pi.at(s, t),
                        state_name(k, l).c_str(), block, n, m);
          throw StructureError(buf);
        }
      }
  }

  spec.q1 = Mat(n, n);
  spec.q2 = Mat(n, n);
  spec.q3 = Mat(m, m);
  spec.r1 = Mat(m, n);
  spec.r2 = Mat(m, n);
  spec.absorb.assign(static_cast<std::size_t>(size), 0.0);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      spec.q1.at(a, b) = pi.at(spec.axis1[a], spec.axis1[b]);
      spec.q2.at(a, b) = pi.at(spec.axis2[a], spec.axis2[b]);
    }
  for (long x = 0; x < m; ++x) {
    for (long y = 0; y < m; ++y)
      spec.q3.at(x, y) = pi.at(spec.inter[x], spec.inter[y]);
    for (long b = 0; b < n; ++b) {
      spec.r1.at(x, b) = pi.at(spec.inter[x], spec.axis1[b]);
      spec.r2.at(x, b) = pi.at(spec.inter[x], spec.axis2[b]);
    }
  }
  for (long s = 0; s < size; ++s)
    spec.absorb[static_cast<std::size_t>(s)] = pi.at(s, origin);

  const auto flags = [](const Mat& q) {
    BlockFlags f;
    f.irreducible = q.rows > 0 && is_irreducible(q);
    f.aperiodic = f.irreducible && period(q) == 1;
    return f;
  };
  spec.f1 = flags(spec.q1);
  spec.f2 = flags(spec.q2);
  spec.f3 = flags(spec.q3);
  for (double e : spec.r1.a) spec.r1_nonzero |= e > 0.0;
  for (double e : spec.r2.a) spec.r2_nonzero |= e > 0.0;
  return spec;
}

A2dMCSpec extract_blocks(const LiftedChain& chain) {
  return extract_blocks(chain.index, chain.pi);
}

Mat a2dmc_matrix(const TriIndex& index, const Mat& q1, const Mat& q2,
                 const Mat& q3, const Mat& r1, const Mat& r2) {
  const long n = index.N();
  const long size = index.size();
  std::vector<long> axis1, axis2, inter;
  for (long i = 1; i <= n; ++i) axis1.push_back(index.index(i, 0));
  for (long j = 1; j <= n; ++j) axis2.push_back(index.index(0, j));
  for (long s = 0; s < size; ++s) {
    const auto [i, j] = index.state(s);
    if (i >= 1 && j >= 1) inter.push_back(s);
  }
  const long m = static_cast<long>(inter.size());
  if (q1.rows != n || q1.cols != n || q2.rows != n || q2.cols != n ||
      q3.rows != m || q3.cols != m || r1.rows != m || r1.cols != n ||
      r2.rows != m || r2.cols != n)
    throw ValidationError("block dimensions do not match the triangle");

  Mat pi(size, size);
  const long origin = index.index(0, 0);
  pi.at(origin, origin) = 1.0;
  const auto close_row = [&](long s, double used) {
    const double rest = 1.0 - used;
    if (rest < -1e-12) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "row mass %.17g exceeds 1", used);
      throw ValidationError(buf);
    }
    pi.at(s, origin) = std::max(rest, 0.0);
  };
  for (long a = 0; a < n; ++a) {
    double s1 = 0.0, s2 = 0.0;
    for (long b = 0; b < n; ++b) {
      pi.at(axis1[a], axis1[b]) = q1.at(a, b);
      pi.at(axis2[a], axis2[b]) = q2.at(a, b);
      s1 += q1.at(a, b);
      s2 += q2.at(a, b);
    }
    close_row(axis1[a], s1);
    close_row(axis2[a], s2);
  }
  for (long x = 0; x < m; ++x) {
    double s = 0.0;
    for (long y = 0; y < m; ++y) {
      pi.at(inter[x], inter[y]) = q3.at(x, y);
      s += q3.at(x, y);
    }
    for (long b = 0; b < n; ++b) {
      pi.at(inter[x], axis1[b]) = r1.at(x, b);
      pi.at(inter[x], axis2[b]) = r2.at(x, b);
      s += r1.at(x, b) + r2.at(x, b);
    }
    close_row(inter[x], s);
  }
  return pi;
}

YaglomReport yaglom_limit(const A2dMCSpec& spec, long i, long j) {
  if (!spec.index.contains(i, j))
    throw ValidationError("initial state " + state_name(i, j) +
                          " outside the triangle");
  if (i == 0 && j == 0)
    throw ValidationError("initial state must not be the absorbing origin");
  require_hypotheses(spec);

  const PerronPair p1 = perron_pair(spec.q1);
  const PerronPair p2 = perron_pair(spec.q2);
  const PerronPair p3 = perron_pair(spec.q3);

  YaglomReport rep;
  rep.theta1 = p1.theta;
  rep.theta2 = p2.theta;
  rep.theta3 = p3.theta;
  rep.u1 = p1.right;
  rep.v1 = p1.left;
  rep.u2 = p2.right;
  rep.v2 = p2.left;
  rep.u3 = p3.right;
  rep.v3 = p3.left;
  rep.init_i = i;
  rep.init_j = j;

  const long flat = spec.index.index(i, j);
  if (j == 0 || i == 0) {
    rep.primary = j == 0 ? YaglomCase::Axis1Initial : YaglomCase::Axis2Initial;
    rep.paper_case = case_label(rep.primary);
    rep.distribution =
        build_case(spec, rep.primary, flat, p1, p2, p3).distribution;
    return rep;
  }

  const YaglomCase tie = classify(p1.theta, p2.theta, p3.theta, true);
  const YaglomCase raw = classify(p1.theta, p2.theta, p3.theta, false);

  CaseData data = build_case(spec, tie, flat, p1, p2, p3);
  rep.primary = tie;
  rep.paper_case = case_label(tie);
  rep.distribution = std::move(data.distribution);
  rep.w1 = std::move(data.w1);
  rep.w2 = std::move(data.w2);
  rep.mix = data.mix;
  rep.has_mix = data.has_mix;

  if (raw != tie) {
    rep.tie_warning = true;
    rep.alternate = raw;
    rep.alternate_paper_case = case_label(raw);
    try {
      CaseData alt = build_case(spec, raw, flat, p1, p2, p3);
      rep.alternate_distribution = std::move(alt.distribution);
      if (rep.w1.empty()) rep.w1 = std::move(alt.w1);
      if (rep.w2.empty()) rep.w2 = std::move(alt.w2);
    } catch (const SingularMatrixError&) {
      // The alternate branch needs an inverse that is genuinely singular
      // this close to the tie; the classification is still reported.
    }
  }
  return rep;
}

QsdFamily enumerate_qsd(const A2dMCSpec& spec) {
  require_hypotheses(spec);
  const PerronPair p1 = perron_pair(spec.q1);
  const PerronPair p2 = perron_pair(spec.q2);
  const PerronPair p3 = perron_pair(spec.q3);

  QsdFamily fam;
  fam.measures.push_back(
      {"axis-1", p1.theta, axis_distribution(spec, spec.axis1, p1.left)});
  fam.measures.push_back(
      {"axis-2", p2.theta, axis_distribution(spec, spec.axis2, p2.left)});

  const Cmp cm = compare_theta(p3.theta, std::max(p1.theta, p2.theta));
  fam.threshold_band = cm == Cmp::Band;
  if (cm == Cmp::Greater) {
    const CaseData cd =
        build_case(spec, YaglomCase::Coexistence, -1, p1, p2, p3);
    fam.measures.push_back({"interior", p3.theta, cd.distribution});
  }
  fam.family_note = "p * axis-1 + (1 - p) * axis-2, p in [0, 1]";
  fam.mixtures_closed = compare_theta(p1.theta, p2.theta) == Cmp::Equal;
  return fam;
}

ConditionalLaw conditional_law_exact(const A2dMCSpec& spec, long i, long j,
                                     long n) {
  if (n < 0) throw ValidationError("horizon must be nonnegative");
  if (!spec.index.contains(i, j))
    throw ValidationError("initial state " + state_name(i, j) +
                          " outside the triangle");
  if (i == 0 && j == 0)
    throw ValidationError("initial state must not be the absorbing origin");

  const long size = spec.index.size();
  const long origin = spec.index.index(0, 0);
  ConditionalLaw out;
  out.law.assign(static_cast<std::size_t>(size), 0.0);
  out.law[static_cast<std::size_t>(spec.index.index(i, j))] = 1.0;
  for (long step = 1; step <= n; ++step) {
    std::vector<double> next = vec_mat(out.law, spec.pi);
    next[static_cast<std::size_t>(origin)] = 0.0;
    const double mass = std::accumulate(next.begin(), next.end(), 0.0);
    if (mass <= 0.0) {
      char buf[96];
      std::snprintf(buf, sizeof buf,
                    "no surviving mass from %s at step %ld",
                    state_name(i, j).c_str(), step);
      throw DegenerateError(buf);
    }
    for (double& e : next) e /= mass;
    out.log_mass += std::log(mass);
    out.law = std::move(next);
  }
  return out;
}

Mat rn_direct(const A2dMCSpec& spec, long n) {
  const long m = spec.r1.rows;
  const long w = spec.r1.cols;
  if (n <= 0) return Mat(m, w);
  Mat a = spec.r1;
  Mat q1pow = Mat::identity(w);
  for (long k = 2; k <= n; ++k) {
    q1pow = q1pow * spec.q1;
    a = spec.q3 * a + spec.r1 * q1pow;
  }
  return a;
}

RnReport rn_asymptotics_check(const A2dMCSpec& spec,
                              const std::vector<long>& n_grid) {
  require_hypotheses(spec);
  if (n_grid.empty()) throw ValidationError("empty horizon grid");
  for (long n : n_grid)
    if (n < 1) throw ValidationError("horizons must be >= 1");

  const PerronPair p1 = perron_pair(spec.q1);
  const PerronPair p3 = perron_pair(spec.q3);
  const Cmp c = compare_theta(p1.theta, p3.theta);
  if (c == Cmp::Band)
    throw ValidationError(
        "theta1 and theta3 fall in the indeterminate comparison band");

  const double star = std::max(p1.theta, p3.theta);
  const auto scaled = [star](const Mat& m) {
    Mat out = m;
    for (double& e : out.a) e /= star;
    return out;
  };
  const Mat q1h = scaled(spec.q1);
  const Mat q3h = scaled(spec.q3);
  const Mat r1h = scaled(spec.r1);

  // Predicted asymptote, under the same 1/theta* per-step scale so that
  // the comparison never leaves the representable range.
  RnReport rep;
  Mat base;
  bool linear_in_n = false;
  if (c == Cmp::Greater) {
    rep.branch = "theta1>theta3";
    const Mat inv = lu_inverse(lu_factor(shifted_block(p1.theta, spec.q3)));
    base = outer(mat_vec(inv * spec.r1, p1.right), p1.left);
  } else if (c == Cmp::Less) {
    rep.branch = "theta1<theta3";
    const Mat inv = lu_inverse(lu_factor(shifted_block(p3.theta, spec.q1)));
    base = outer(p3.right, vec_mat(vec_mat(p3.left, spec.r1), inv));
  } else {
    rep.branch = "theta1=theta3";
    const double s = dot(p3.left, mat_vec(spec.r1, p1.right));
    base = outer(p3.right, p1.left);
    for (double& e : base.a) e *= s;
    linear_in_n = true;
  }

  std::vector<long> grid = n_grid;
  std::sort(grid.begin(), grid.end());
  const long top = grid.back();

  Mat a = r1h;
  Mat q1pow = Mat::identity(spec.r1.cols);
  std::size_t next = 0;
  for (long n = 1; n <= top; ++n) {
    if (n > 1) {
      q1pow = q1pow * q1h;
      a = q3h * a + r1h * q1pow;
    }
    while (next < grid.size() && grid[next] == n) {
      double worst = 0.0, sum = 0.0;
      for (long x = 0; x < a.rows; ++x)
        for (long y = 0; y < a.cols; ++y) {
          const double pred =
              linear_in_n ? base.at(x, y) * static_cast<double>(n) / star
                          : base.at(x, y);
          const double drift = std::abs(a.at(x, y) / pred - 1.0);
          worst = std::max(worst, drift);
          sum += drift;
        }
      rep.n_grid.push_back(n);
      rep.max_drift.push_back(worst);
      rep.mean_drift.push_back(sum / static_cast<double>(a.rows * a.cols));
      ++next;
    }
  }
  return rep;
}

PerturbVerdict perturb_experiment(const KernelSpec& spec, double eps,
                                  std::uint64_t seed) {
  if (eps < 0.0) throw ValidationError("perturbation size must be >= 0");
  const long n = spec.N;

  // Near-neutrality needs an irreducible one-dimensional interior both on
  // {1..N} and on {2..N}, and genuine absorption.
  const auto tail = [&](long k) {
    const long len = n - k + 1;
    Mat m(len, len);
    for (long a = 0; a < len; ++a)
      for (long b = 0; b < len; ++b) m.at(a, b) = spec.at(k + a, k + b);
    return m;
  };
  if (n < 2 || !is_irreducible(tail(1)))
    throw HypothesisError("kernel interior on {1..N} is reducible");
  if (!is_irreducible(tail(2)))
    throw HypothesisError("kernel interior on {2..N} is reducible");
  bool absorbs = false;
  for (long i = 1; i <= n; ++i) absorbs |= spec.at(i, 0) > 0.0;
  if (!absorbs) throw HypothesisError("kernel never absorbs at 0");

  const LiftedChain chain = lift_full(spec);
  Mat pi = chain.pi;
  const A2dMCSpec base = extract_blocks(chain.index, pi);

  Rng root(seed);
  for (long s : base.inter) {
    Rng row = root.stream(static_cast<std::uint64_t>(s));
    double sum = 0.0;
    for (long t = 0; t < pi.cols; ++t) {
      if (pi.at(s, t) > 0.0)
        pi.at(s, t) *= 1.0 + eps * (2.0 * row.uniform01() - 1.0);
      sum += pi.at(s, t);
    }
    for (long t = 0; t < pi.cols; ++t) pi.at(s, t) /= sum;
  }

  const A2dMCSpec pert = extract_blocks(chain.index, pi);
  require_hypotheses(pert);
  const double t1 = perron_pair(pert.q1).theta;
  const double t2 = perron_pair(pert.q2).theta;
  const double t3 = perron_pair(pert.q3).theta;

  PerturbVerdict v;
  v.theta1 = t1;
  v.theta2 = t2;
  v.theta3 = t3;
  v.margin = std::max(t1, t2) - t3;
  v.classification = classify(t1, t2, t3, true);
  v.paper_case = case_label(v.classification);
  v.no_coexistence = v.classification != YaglomCase::Coexistence;
  return v;
}

}  // namespace nspec
