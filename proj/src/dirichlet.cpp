// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include "nspec/dirichlet.hpp"

#include <cmath>
#include <cstdio>

#include "nspec/spectral.hpp"

namespace nspec {

namespace {

constexpr double kEqualTol = 1e-10;
constexpr double kStrictTol = 1e-8;
constexpr double kMonotoneSlack = 1e-12;

// Restriction of the one-dimensional kernel to the states {k..N}. Its
// irreducibility is the hypothesis that turns the weak diagram
// inequalities at position k into strict ones.
Mat kernel_tail(const KernelSpec& spec, long k) {
  const long n = spec.N - k + 1;
  Mat m(n, n);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) m.at(a, b) = spec.at(k + a, k + b);
  return m;
}

Verdict classify(double margin) {
  if (std::abs(margin) < kEqualTol) return Verdict::Equal;
  if (margin > kStrictTol) return Verdict::Strict;
  return Verdict::Indeterminate;
}

std::string label(const char* fmt, long a, long b = -1) {
  char buf[64];
  if (b >= 0)
    std::snprintf(buf, sizeof buf, fmt, a, b);
  else
    std::snprintf(buf, sizeof buf, fmt, a);
  return buf;
}

void push_relation(OrderingReport& report, std::string name,
                   RelationKind kind, double lhs, double rhs,
                   bool hypothesis) {
  OrderingRelation rel;
  rel.name = std::move(name);
  rel.kind = kind;
  rel.lhs = lhs;
  rel.rhs = rhs;
  rel.margin = lhs - rhs;
  rel.verdict = classify(rel.margin);
  rel.hypothesis = hypothesis;
  if (kind == RelationKind::Equality) {
    rel.ok = rel.verdict == Verdict::Equal;
  } else {
    rel.ok = rel.margin >= -kMonotoneSlack;
    if (hypothesis) rel.ok = rel.ok && rel.verdict == Verdict::Strict;
  }
  report.all_ok = report.all_ok && rel.ok;
  report.relations.push_back(std::move(rel));
}

}  // namespace

double theta_dirichlet(const LiftedChain& chain, long k) {
  const Restriction r = restrict_k(chain, k);
  return spectral_radius(r.m);
}

double theta_block(const KernelSpec& spec, long d) {
  if (d == 0) {
    Mat m(spec.N + 1, spec.N + 1);
    for (long a = 0; a <= spec.N; ++a)
      for (long b = 0; b <= spec.N; ++b) m.at(a, b) = spec.at(a, b);
    return spectral_radius(m);
  }
  return spectral_radius(lift_block(spec, d).p);
}

OrderingReport ordering_report(const KernelSpec& spec) {
  const long n = spec.N;
  OrderingReport report;
  report.N = n;

  const LiftedChain chain = lift_full(spec);
  for (long k = 1; k <= n; ++k)
    report.theta_d.push_back(theta_dirichlet(chain, k));
  for (long d = 0; d <= n; ++d)
    report.theta_b.push_back(theta_block(spec, d));

  std::vector<bool> tail_irreducible(static_cast<std::size_t>(n), false);
  for (long k = 1; k <= n - 1; ++k)
    tail_irreducible[static_cast<std::size_t>(k)] =
        is_irreducible(kernel_tail(spec, k));

  const auto td = [&](long k) {
    return report.theta_d[static_cast<std::size_t>(k - 1)];
  };
  const auto tb = [&](long d) {
    return report.theta_b[static_cast<std::size_t>(d)];
  };

  // The columns where the two sequences meet.
  push_relation(report, "dirichlet[1] == block[1]", RelationKind::Equality,
                td(1), tb(1), false);
  if (n >= 2)
    push_relation(report, "dirichlet[2] == block[2]", RelationKind::Equality,
                  td(2), tb(2), false);
  if (n >= 3)
    push_relation(report, label("dirichlet[%ld] == block[%ld]", n, n),
                  RelationKind::Equality, td(n), tb(n), false);

  // In between, Dirichlet radii dominate block radii, strictly when the
  // tail kernel is irreducible.
  for (long k = 3; k <= n - 1; ++k)
    push_relation(report, label("dirichlet[%ld] >= block[%ld]", k, k),
                  RelationKind::Ordering, td(k), tb(k),
                  tail_irreducible[static_cast<std::size_t>(k)]);

  // Both sequences decrease along the diagram.
  for (long k = 1; k <= n - 1; ++k) {
    const bool hyp = tail_irreducible[static_cast<std::size_t>(k)];
    push_relation(report, label("dirichlet[%ld] >= dirichlet[%ld]", k, k + 1),
                  RelationKind::Ordering, td(k), td(k + 1), hyp);
    push_relation(report, label("block[%ld] >= block[%ld]", k, k + 1),
                  RelationKind::Ordering, tb(k), tb(k + 1), hyp);
  }

  // The leading step 1 >= block[1] is strict as soon as the interior
  // one-dimensional chain is irreducible and loses mass to 0.
  bool absorbs = false;
  for (long i = 1; i <= n; ++i)
    if (spec.at(i, 0) > 0.0) absorbs = true;
  const bool head_hyp =
      absorbs && (n >= 2 ? tail_irreducible[1] : true);
  push_relation(report, "block[0] >= block[1]", RelationKind::Ordering,
                tb(0), tb(1), head_hyp);

  return report;
}

}  // namespace nspec
