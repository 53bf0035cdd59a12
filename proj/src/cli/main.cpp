// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nspec/dirichlet.hpp"
#include "nspec/eigen_poly.hpp"
#include "nspec/errors.hpp"
#include "nspec/io.hpp"
#include "nspec/kernel.hpp"
#include "nspec/lift.hpp"
#include "nspec/moran.hpp"
#include "nspec/qsd.hpp"
#include "nspec/sim.hpp"
#include "nspec/spectral.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string input;
  std::string out_dir;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  long long trials = 100000;
  long horizon = 100;
  std::string initial;
  long d = -1;
  long k = -1;
  long N = 0;
  bool as_json = false;
  bool as_csv = false;
};

std::pair<long, long> parse_initial(const std::string& text) {
  long i = 0, j = 0;
  char tail = '\0';
  if (std::sscanf(text.c_str(), "%ld,%ld%c", &i, &j, &tail) != 2) {
    throw nspec::ValidationError(
        "--initial must be two comma-separated integers, e.g. 2,3");
  }
  return {i, j};
}

void emit(const Options& opt, const std::string& name,
          const std::string& content) {
  if (opt.out_dir.empty()) {
    std::cout << content;
    return;
  }
  std::filesystem::create_directories(opt.out_dir);
  const std::string path = opt.out_dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw nspec::ValidationError("cannot write " + path);
  out << content;
  std::cout << "wrote " << path << "\n";
}

std::string dumped(const Json& doc) { return doc.dump(2) + "\n"; }

nspec::ParsedChain load(const Options& opt) {
  if (opt.input.empty()) {
    throw nspec::ValidationError("this subcommand requires --input");
  }
  return nspec::read_chain_file(opt.input);
}

const nspec::KernelSpec& kernel_of(const nspec::ParsedChain& chain) {
  if (!chain.kernel) {
    throw nspec::ValidationError(
        "this subcommand requires a one-dimensional kernel input "
        "(type general or birth_death)");
  }
  return *chain.kernel;
}

// Two-dimensional absorbed view of the input: a2dmc chains directly,
// one-dimensional kernels through their neutral lift.
nspec::A2dMCSpec a2d_of(const nspec::ParsedChain& chain) {
  if (chain.a2d) return *chain.a2d;
  if (chain.kernel) {
    return nspec::extract_blocks(nspec::lift_full(*chain.kernel));
  }
  throw nspec::ValidationError(
      "the three-colors urn is not absorbed at the origin; "
      "use the moran subcommand instead");
}

Json distribution_json(const nspec::TriIndex& index,
                       const std::vector<double>& v) {
  Json out = Json::array();
  for (long s = 0; s < index.size(); ++s) {
    if (v[s] == 0.0) continue;
    const auto [i, j] = index.state(s);
    out.push_back(Json::array({i, j, v[s]}));
  }
  return out;
}

int run_validate(const Options& opt) {
  const auto chain = load(opt);
  if (chain.kernel) {
    std::cout << "ok: " << chain.type << " kernel, N = " << chain.kernel->N
              << "\n";
  } else if (chain.moran) {
    std::cout << "ok: moran3 chain, N = " << chain.moran->N << ", "
              << chain.moran->index.size() << " states\n";
  } else {
    const auto& spec = *chain.a2d;
    std::cout << "ok: a2dmc chain, N = " << spec.index.N() << ", "
              << spec.inter.size() << " interior states\n";
  }
  return 0;
}

int run_lift(const Options& opt) {
  const auto chain = load(opt);
  const auto& spec = kernel_of(chain);
  const nspec::LiftedChain lifted = nspec::lift_full(spec);
  std::ostringstream csv;
  nspec::write_matrix_csv(csv, lifted.index, lifted.pi);
  emit(opt, "lifted.csv", csv.str());
  return 0;
}

int run_blocks(const Options& opt) {
  const auto chain = load(opt);
  const auto& spec = kernel_of(chain);
  if (opt.d >= 0) {
    if (opt.d > spec.N) {
      throw nspec::ValidationError("--d must be at most N");
    }
    std::ostringstream csv;
    nspec::write_block_csv(csv, nspec::lift_block(spec, opt.d));
    emit(opt, "block_d" + std::to_string(opt.d) + ".csv", csv.str());
    return 0;
  }
  if (opt.out_dir.empty()) {
    throw nspec::ValidationError(
        "emitting every block requires --out; pass --d for a single block");
  }
  for (long d = 0; d <= spec.N; ++d) {
    std::ostringstream csv;
    nspec::write_block_csv(csv, nspec::lift_block(spec, d));
    emit(opt, "block_d" + std::to_string(d) + ".csv", csv.str());
  }
  return 0;
}

int run_spectrum(const Options& opt) {
  const auto chain = load(opt);
  const auto& spec = kernel_of(chain);
  const auto mu = nspec::reversible_measure(spec);
  const auto basis = nspec::assemble_basis(spec, mu);
  if (opt.as_csv) {
    std::ostringstream csv;
    csv << "d,theta\n";
    for (const auto& v : basis.vectors) {
      csv << v.d << ',' << nspec::format_double(v.theta) << '\n';
    }
    emit(opt, "spectrum.csv", csv.str());
    return 0;
  }
  Json doc;
  doc["N"] = spec.N;
  doc["count"] = basis.vectors.size();
  Json list = Json::array();
  for (const auto& v : basis.vectors) {
    list.push_back(Json{{"d", v.d}, {"theta", v.theta}});
  }
  doc["vectors"] = std::move(list);
  emit(opt, "spectrum.json", dumped(doc));
  return 0;
}

const char* verdict_name(nspec::Verdict v) {
  switch (v) {
    case nspec::Verdict::Equal:
      return "equal";
    case nspec::Verdict::Strict:
      return "strict";
    default:
      return "indeterminate";
  }
}

int run_dirichlet(const Options& opt) {
  const auto chain = load(opt);
  const auto& spec = kernel_of(chain);
  if (opt.k >= 0) {
    if (opt.k < 1 || opt.k > spec.N) {
      throw nspec::ValidationError("--k must lie in [1, N]");
    }
    const double value =
        nspec::theta_dirichlet(nspec::lift_full(spec), opt.k);
    std::cout << "theta_D[" << opt.k << "] = " << nspec::format_double(value)
              << "\n";
    return 0;
  }
  const auto report = nspec::ordering_report(spec);
  if (opt.as_csv) {
    std::ostringstream csv;
    csv << "name,lhs,rhs,margin,verdict,hypothesis,ok\n";
    for (const auto& r : report.relations) {
      csv << r.name << ',' << nspec::format_double(r.lhs) << ','
          << nspec::format_double(r.rhs) << ','
          << nspec::format_double(r.margin) << ',' << verdict_name(r.verdict)
          << ',' << (r.hypothesis ? 1 : 0) << ',' << (r.ok ? 1 : 0) << '\n';
    }
    emit(opt, "dirichlet.csv", csv.str());
    return 0;
  }
  Json doc;
  doc["N"] = report.N;
  doc["theta_dirichlet"] = report.theta_d;
  doc["theta_block"] = report.theta_b;
  Json list = Json::array();
  for (const auto& r : report.relations) {
    list.push_back(Json{{"name", r.name},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"margin", r.margin},
                        {"verdict", verdict_name(r.verdict)},
                        {"hypothesis", r.hypothesis},
                        {"ok", r.ok}});
  }
  doc["relations"] = std::move(list);
  doc["all_ok"] = report.all_ok;
  emit(opt, "dirichlet.json", dumped(doc));
  return 0;
}

int run_qsd(const Options& opt) {
  const auto spec = a2d_of(load(opt));
  const auto family = nspec::enumerate_qsd(spec);
  Json doc;
  doc["N"] = spec.index.N();
  Json list = Json::array();
  for (const auto& m : family.measures) {
    list.push_back(Json{{"name", m.name},
                        {"theta", m.theta},
                        {"nu", distribution_json(spec.index, m.nu)}});
  }
  doc["measures"] = std::move(list);
  doc["family_note"] = family.family_note;
  doc["mixtures_closed"] = family.mixtures_closed;
  doc["threshold_band"] = family.threshold_band;
  emit(opt, "qsd.json", dumped(doc));
  if (!opt.out_dir.empty()) {
    for (const auto& m : family.measures) {
      std::ostringstream csv;
      nspec::write_distribution_csv(csv, spec.index, m.nu);
      emit(opt, "qsd_" + m.name + ".csv", csv.str());
    }
  }
  return 0;
}

int run_yaglom(const Options& opt) {
  const auto spec = a2d_of(load(opt));
  if (opt.initial.empty()) {
    throw nspec::ValidationError("yaglom requires --initial i,j");
  }
  const auto [i, j] = parse_initial(opt.initial);
  const auto report = nspec::yaglom_limit(spec, i, j);
  Json doc;
  doc["initial"] = Json::array({report.init_i, report.init_j});
  doc["paper_case"] = report.paper_case;
  doc["theta1"] = report.theta1;
  doc["theta2"] = report.theta2;
  doc["theta3"] = report.theta3;
  if (report.has_mix) doc["mix"] = report.mix;
  if (!report.w1.empty()) doc["w1"] = report.w1;
  if (!report.w2.empty()) doc["w2"] = report.w2;
  doc["tie_warning"] = report.tie_warning;
  if (report.tie_warning) {
    doc["alternate_paper_case"] = report.alternate_paper_case;
    doc["alternate_distribution"] =
        distribution_json(spec.index, report.alternate_distribution);
  }
  doc["distribution"] = distribution_json(spec.index, report.distribution);
  emit(opt, "yaglom.json", dumped(doc));
  if (!opt.out_dir.empty()) {
    std::ostringstream csv;
    nspec::write_distribution_csv(csv, spec.index, report.distribution);
    emit(opt, "yaglom_dist.csv", csv.str());
  }
  return 0;
}

int run_simulate(const Options& opt) {
  const auto chain = load(opt);
  if (opt.initial.empty()) {
    throw nspec::ValidationError("simulate requires --initial i,j");
  }
  const auto [i, j] = parse_initial(opt.initial);
  nspec::SimConfig cfg;
  cfg.seed = opt.seed;
  cfg.trials = opt.trials;
  cfg.horizon = opt.horizon;
  cfg.init_i = i;
  cfg.init_j = j;
  const nspec::ConditionalSample sample =
      chain.kernel ? nspec::sample_conditional(*chain.kernel, cfg)
                   : nspec::sample_conditional(a2d_of(chain), cfg);
  const long N = chain.kernel ? chain.kernel->N : chain.a2d->index.N();
  const nspec::TriIndex index(N);
  Json doc;
  doc["seed"] = cfg.seed;
  doc["trials"] = sample.trials;
  doc["horizon"] = cfg.horizon;
  doc["initial"] = Json::array({i, j});
  doc["survivors"] = sample.survivors;
  doc["no_survivors"] = sample.no_survivors;
  std::ostringstream csv;
  nspec::write_distribution_csv(csv, index, sample.histogram);
  if (opt.out_dir.empty()) {
    if (opt.as_csv) {
      std::cout << csv.str();
    } else {
      std::cout << dumped(doc);
    }
    return 0;
  }
  emit(opt, "simulate.json", dumped(doc));
  emit(opt, "histogram.csv", csv.str());
  return 0;
}

int run_moran(const Options& opt) {
  if (opt.N < 2) {
    throw nspec::ValidationError("moran requires --N at least 2");
  }
  const auto report = nspec::verify_eigen(opt.N);
  if (opt.as_json) {
    Json doc;
    doc["N"] = report.N;
    doc["vectors"] = report.vectors;
    doc["residuals_zero"] = report.residuals_zero;
    doc["full_rank"] = report.full_rank;
    doc["spectrum_matches"] = report.spectrum_matches;
    doc["ok"] = report.ok;
    emit(opt, "moran.json", dumped(doc));
  } else if (report.ok) {
    std::cout << "all eigen-residuals zero; spectrum matches\n";
  } else {
    std::cout << "eigen verification FAILED:"
              << (report.residuals_zero ? "" : " residuals")
              << (report.full_rank ? "" : " rank")
              << (report.spectrum_matches ? "" : " spectrum") << "\n";
  }
  return report.ok ? 0 : 3;
}

int run_truncate_compare(const Options& opt) {
  const auto chain = load(opt);
  const auto& spec = kernel_of(chain);
  if (opt.k < 1 || opt.k >= spec.N) {
    throw nspec::ValidationError("--k must lie in [1, N-1]");
  }
  const auto mu = nspec::reversible_measure(spec);
  const nspec::KernelSpec trunc = nspec::truncate(spec, opt.k);

  std::vector<double> block_norms(spec.N + 1, 0.0);
  for (long d = 1; d <= spec.N; ++d) {
    const nspec::Mat diff =
        nspec::lift_block(spec, d).p - nspec::lift_block(trunc, d).p;
    const auto w_abs = nspec::block_measure(mu, d, spec.N);
    std::vector<double> w(w_abs.begin() + d, w_abs.end());
    block_norms[d] = nspec::weighted_operator_norm(diff, w);
  }

  const nspec::Mat diff0 = nspec::interior(spec) - nspec::interior(trunc);
  const std::vector<double> mu_int(mu.mu.begin() + 1, mu.mu.end());
  const double tilde0 = nspec::weighted_operator_norm(diff0, mu_int);

  const auto full = nspec::restrict_k(nspec::lift_full(spec), 2);
  const auto full_trunc = nspec::restrict_k(nspec::lift_full(trunc), 2);
  const auto nu_full = nspec::interior_measure(mu, nspec::TriIndex(spec.N));
  std::vector<double> nu(full.states.size());
  for (size_t s = 0; s < full.states.size(); ++s) {
    nu[s] = nu_full[full.states[s]];
  }
  const double tilde =
      nspec::weighted_operator_norm(full.m - full_trunc.m, nu);

  double sup = 0.0;
  for (long d = 2; d <= spec.N; ++d) sup = std::max(sup, block_norms[d]);
  bool nonincreasing = true;
  for (long d = 1; d < spec.N; ++d) {
    if (block_norms[d + 1] > block_norms[d] + opt.tol) nonincreasing = false;
  }
  const bool d1_equal = std::abs(block_norms[1] - tilde0) <= opt.tol;
  const bool sup_equal = std::abs(sup - tilde) <= opt.tol;

  if (opt.as_csv) {
    std::ostringstream csv;
    csv << "d,value\n";
    for (long d = 1; d <= spec.N; ++d) {
      csv << d << ',' << nspec::format_double(block_norms[d]) << '\n';
    }
    emit(opt, "truncate_compare.csv", csv.str());
    return 0;
  }
  Json doc;
  doc["N"] = spec.N;
  doc["Nprime"] = opt.k;
  doc["tol"] = opt.tol;
  Json list = Json::array();
  for (long d = 1; d <= spec.N; ++d) {
    list.push_back(Json{{"d", d}, {"value", block_norms[d]}});
  }
  doc["block_norms"] = std::move(list);
  doc["tilde0_norm"] = tilde0;
  doc["tilde_norm"] = tilde;
  doc["sup_d_ge_2"] = sup;
  doc["checks"] = Json{{"d1_equals_tilde0", d1_equal},
                       {"nonincreasing", nonincreasing},
                       {"sup_equals_tilde", sup_equal}};
  doc["all_ok"] = d1_equal && nonincreasing && sup_equal;
  emit(opt, "truncate_compare.json", dumped(doc));
  return 0;
}

std::string rat_string(const nspec::Rat& x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

int run_poly(const Options& opt) {
  if (opt.d < 0) {
    throw nspec::ValidationError("poly requires --d at least 0");
  }
  const nspec::ScaledPoly p = nspec::build_P(static_cast<int>(opt.d));
  // Textual form folds the leading core coefficient into the square-root
  // scale, so the first printed term always has coefficient 1.
  const nspec::Rat lead = p.core.terms().begin()->second;
  const int sign = p.sign * (lead < 0 ? -1 : 1);
  const nspec::Rat scale = p.scale_sq * lead * lead;
  std::ostringstream terms;
  bool first = true;
  for (const auto& [key, coeff] : p.core.terms()) {
    if (!first) terms << " + ";
    first = false;
    terms << '(' << key.first << ',' << key.second << "):"
          << rat_string(coeff / lead);
  }
  if (opt.as_json) {
    Json doc;
    doc["d"] = opt.d;
    doc["sign"] = p.sign;
    doc["scale_sq"] = rat_string(p.scale_sq);
    Json list = Json::array();
    for (const auto& [key, coeff] : p.core.terms()) {
      list.push_back(Json{{"x_power", key.first},
                          {"y_power", key.second},
                          {"coeff", rat_string(coeff)}});
    }
    doc["terms"] = std::move(list);
    emit(opt, "poly.json", dumped(doc));
    return 0;
  }
  std::cout << "P_" << opt.d << " = " << (sign < 0 ? "-" : "");
  if (scale != 1) std::cout << "sqrt(" << rat_string(scale) << ") * ";
  std::cout << terms.str() << "\n";
  return 0;
}

void apply_thread_cap() {
  const char* env = std::getenv("NEUTRAL_SPECTRA_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) {
    throw nspec::ValidationError(
        "NEUTRAL_SPECTRA_THREADS must be a positive integer");
  }
#ifdef _OPENMP
  omp_set_num_threads(static_cast<int>(v));
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral toolkit for neutral two-dimensional Markov chains"};
  app.require_subcommand(1);
  Options opt;

  auto add_io = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", opt.input, "chain spec JSON file");
    if (needs_input) in->required();
    sub->add_option("--out", opt.out_dir, "directory for artifact files");
    sub->add_flag("--json", opt.as_json, "emit a JSON report");
    sub->add_flag("--csv", opt.as_csv, "emit CSV instead of JSON");
  };

  add_io(app.add_subcommand("validate", "parse and check a chain spec"),
         true);
  add_io(app.add_subcommand("lift", "emit the lifted transition matrix"),
         true);
  auto* blocks = app.add_subcommand("blocks", "emit diagonal blocks");
  add_io(blocks, true);
  blocks->add_option("--d", opt.d, "single block index");
  add_io(app.add_subcommand("spectrum", "assembled eigenbasis summary"),
         true);
  auto* dirichlet =
      app.add_subcommand("dirichlet", "eigenvalue ordering report");
  add_io(dirichlet, true);
  dirichlet->add_option("--k", opt.k, "print one Dirichlet radius");
  add_io(app.add_subcommand("qsd", "enumerate quasi-stationary laws"), true);
  auto* yaglom =
      app.add_subcommand("yaglom", "limiting conditional law from a start");
  add_io(yaglom, true);
  yaglom->add_option("--initial", opt.initial, "starting state i,j");
  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo conditional histogram");
  add_io(simulate, true);
  simulate->add_option("--seed", opt.seed, "RNG seed");
  simulate->add_option("--trials", opt.trials, "number of trials");
  simulate->add_option("--horizon", opt.horizon, "steps per trial");
  simulate->add_option("--initial", opt.initial, "starting state i,j");
  auto* moran =
      app.add_subcommand("moran", "verify the three-colors urn eigenbasis");
  moran->add_option("--N", opt.N, "urn size")->required();
  moran->add_option("--out", opt.out_dir, "directory for artifact files");
  moran->add_flag("--json", opt.as_json, "emit a JSON report");
  auto* trunc = app.add_subcommand("truncate-compare",
                                   "block norms against a truncation");
  add_io(trunc, true);
  trunc->add_option("--k", opt.k, "truncation size N'")->required();
  trunc->add_option("--tol", opt.tol, "tolerance for the norm identities");
  auto* poly =
      app.add_subcommand("poly", "print a bivariate eigen-polynomial");
  poly->add_option("--d", opt.d, "polynomial degree")->required();
  poly->add_option("--out", opt.out_dir, "directory for artifact files");
  poly->add_flag("--json", opt.as_json, "emit a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    apply_thread_cap();
    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "validate") return run_validate(opt);
    if (sub == "lift") return run_lift(opt);
    if (sub == "blocks") return run_blocks(opt);
    if (sub == "spectrum") return run_spectrum(opt);
    if (sub == "dirichlet") return run_dirichlet(opt);
    if (sub == "qsd") return run_qsd(opt);
    if (sub == "yaglom") return run_yaglom(opt);
    if (sub == "simulate") return run_simulate(opt);
    if (sub == "moran") return run_moran(opt);
    if (sub == "truncate-compare") return run_truncate_compare(opt);
    if (sub == "poly") return run_poly(opt);
    throw nspec::ValidationError("unknown subcommand " + sub);
  } catch (const nspec::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 3;
  } catch (const nspec::HypothesisError& e) {
    std::cerr << "hypothesis error: " << e.what() << "\n";
    return 2;
  } catch (const nspec::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  }
}
