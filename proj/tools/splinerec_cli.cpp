// Benchmark and inspection CLI for the weighted spline recovery library.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "splinerec/bench.hpp"
#include "splinerec/interp_blend.hpp"
#include "splinerec/spline_space.hpp"

using namespace splinerec;

namespace {

struct CliOptions {
  ExperimentConfig ec;
  std::string p_str = "2", q_str = "2";
};

double parse_norm_index(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return kInf;
  const double v = std::stod(s);
  if (!(v >= 1.0)) throw CLI::ValidationError("norm index must be >= 1 or inf");
  return v;
}

void add_common(CLI::App* cmd, CliOptions& o) {
  cmd->set_config("--config")->configurable(false);
  cmd->add_option("--lambda", o.ec.lambda, "weight exponent lambda > 1");
  cmd->add_option("--a", o.ec.a, "weight coefficient a > 0");
  cmd->add_option("--b", o.ec.b, "weight offset b");
  cmd->add_option("--ell", o.ec.ell, "B-spline order parameter (1 or 2)");
  cmd->add_option("--p", o.p_str, "source norm index (number or inf)");
  cmd->add_option("--q", o.q_str, "target norm index (number or inf)");
  cmd->add_option("--r", o.ec.r, "smoothness order");
  cmd->add_option("--d", o.ec.d, "dimension (1..3)");
  cmd->add_option("--op", o.ec.op, "operator: Q, P, Qbar, Pbar")
      ->check(CLI::IsMember({"Q", "P", "Qbar", "Pbar"}));
  cmd->add_option("--nmin", o.ec.nmin, "smallest sample budget");
  cmd->add_option("--nmax", o.ec.nmax, "largest sample budget");
  cmd->add_option("--seed", o.ec.seed, "RNG seed");
  cmd->add_option("--out", o.ec.out, "output CSV path");
  cmd->add_option("--corpus", o.ec.corpus, "corpus function id");
  cmd->add_option("--rho", o.ec.rho_override,
                  "truncation parameter override (0 = constructive choice)");
}

void finalize(CliOptions& o) {
  o.ec.p = parse_norm_index(o.p_str);
  o.ec.q = parse_norm_index(o.q_str);
}

int run_rates(CliOptions& o, bool quadrature) {
  finalize(o);
  o.ec.quadrature = quadrature;
  if (o.ec.out.empty()) o.ec.out = quadrature ? "integrate.csv" : "recover.csv";
  const RateReport rep = run_convergence(o.ec);
  emit_report(rep, o.ec.out);
  if (rep.exact) {
    std::printf("exact reproduction (all errors vanish)\n");
  } else {
    std::printf("predicted exponent %.4f, fitted slope %.4f, residual %.2e\n",
                rep.predicted, rep.slope, rep.residual);
    std::printf("within tolerance (+-%.2f): %s\n", rep.slope_tol,
                std::abs(rep.slope + rep.predicted) <= rep.slope_tol ? "yes"
                                                                     : "no");
  }
  std::printf("report written to %s\n", o.ec.out.c_str());
  return 0;
}

struct Stats {
  double min, max, median;
};

Stats stats_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  const double med =
      (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  return {v.front(), v.back(), med};
}

std::string norm_name(double p) {
  if (p == kInf) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", p);
  return buf;
}

int run_inequalities(CliOptions& o) {
  finalize(o);
  if (o.ec.out.empty()) o.ec.out = "inequalities.csv";
  const OperatorConfig cfg = make_operator_config(o.ec);
  std::ofstream out(o.ec.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + o.ec.out);
  out << "m,p,q,r,ratio_kind,min,max,median\n";
  std::mt19937_64 rng(o.ec.seed);
  char buf[192];
  for (int m : {16, 32, 64, 128, 256}) {
    std::vector<double> marc_node, marc_coeff, nik, bern;
    int drawn = 0;
    while (drawn < 64) {
      const auto c = random_ensemble_coeffs(m, cfg, rng);
      bool zero = true;
      for (double v : c)
        if (v != 0.0) zero = false;
      if (zero) continue;
      ++drawn;
      const auto mr = marcinkiewicz_ratios(c, m, o.ec.p, cfg);
      marc_node.push_back(mr.node_ratio);
      marc_coeff.push_back(mr.coeff_ratio);
      nik.push_back(nikolskii_ratio(c, m, o.ec.p, o.ec.q, cfg));
      bern.push_back(bernstein_ratio(c, m, o.ec.r, o.ec.p, cfg));
    }
    struct Row {
      const char* kind;
      Stats s;
    };
    const Row rows[] = {{"marcinkiewicz-node", stats_of(marc_node)},
                        {"marcinkiewicz-coeff", stats_of(marc_coeff)},
                        {"nikolskii", stats_of(nik)},
                        {"bernstein", stats_of(bern)}};
    for (const auto& row : rows) {
      std::snprintf(buf, sizeof(buf), "%d,%s,%s,%d,%s,%.17g,%.17g,%.17g\n", m,
                    norm_name(o.ec.p).c_str(), norm_name(o.ec.q).c_str(),
                    o.ec.r, row.kind, row.s.min, row.s.max, row.s.median);
      out << buf;
    }
  }
  std::printf("report written to %s\n", o.ec.out.c_str());
  return 0;
}

int run_fooling(CliOptions& o) {
  finalize(o);
  if (o.ec.out.empty()) o.ec.out = "fooling.csv";
  const OperatorConfig cfg = make_operator_config(o.ec);
  const double rate =
      rate_recovery(o.ec.r, o.ec.lambda, o.ec.p, o.ec.q);
  std::ofstream out(o.ec.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + o.ec.out);
  out << "n,m,max_at_points,q_norm,scaled_ratio\n";
  std::mt19937_64 rng(o.ec.seed);
  char buf[192];
  for (long n = o.ec.nmin; n <= o.ec.nmax; n *= 2) {
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    std::vector<double> pts;
    for (long i = 0; i < n; ++i) pts.push_back(U(rng));
    const bool single = o.ec.p == kInf || o.ec.q == kInf
                            ? false
                            : o.ec.p <= o.ec.q;
    const SplineFunction phi = fooling_spline(pts, static_cast<int>(n),
                                              o.ec.r, o.ec.p, cfg, single);
    double worst = 0.0;
    for (double xi : pts) worst = std::max(worst, std::abs(phi(xi)));
    const double lq = spline_Lp_norm(phi, o.ec.q, cfg.weight);
    const int m = 2 * cfg.coeffs.ell * (static_cast<int>(n) + 1);
    std::snprintf(buf, sizeof(buf), "%ld,%d,%.17g,%.17g,%.17g\n", n, m, worst,
                  lq, lq / std::pow(static_cast<double>(n), -rate));
    out << buf;
  }
  std::printf("report written to %s\n", o.ec.out.c_str());
  return 0;
}

int run_rule_export(CliOptions& o) {
  finalize(o);
  if (o.ec.out.empty()) o.ec.out = "rule.csv";
  const OperatorConfig cfg = make_operator_config(o.ec);
  const int m = n_to_m(o.ec.nmax, cfg.coeffs.ell, cfg.coeffs.j0);
  const RuleKind kind =
      (o.ec.op == "P" || o.ec.op == "Pbar") ? RuleKind::P : RuleKind::Q;
  const auto& rule = get_rule(kind, m, cfg);
  export_rule_csv(rule, o.ec.out);
  std::printf("rule %s with m=%d (%zu nodes) written to %s\n",
              kind == RuleKind::Q ? "Q" : "P", m, rule.nodes.size(),
              o.ec.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted B-spline recovery and quadrature benchmarks"};
  app.require_subcommand(1);

  CliOptions orec, oint, oineq, ofool, orule;
  ofool.ec.nmin = 8;
  ofool.ec.nmax = 32;

  auto* recover =
      app.add_subcommand("recover", "convergence sweep of a recovery operator");
  add_common(recover, orec);
  auto* integ =
      app.add_subcommand("integrate", "convergence sweep of a generated rule");
  add_common(integ, oint);
  auto* ineq = app.add_subcommand(
      "inequalities", "empirical spline-space inequality ratios");
  add_common(ineq, oineq);
  auto* fool =
      app.add_subcommand("fooling", "lower-bound fooling-spline witness");
  add_common(fool, ofool);
  auto* rule = app.add_subcommand("rule", "quadrature rule inspection");
  auto* rexp = rule->add_subcommand("export", "write rule nodes and weights");
  add_common(rexp, orule);
  rule->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (recover->parsed()) return run_rates(orec, false);
    if (integ->parsed()) return run_rates(oint, true);
    if (ineq->parsed()) return run_inequalities(oineq);
    if (fool->parsed()) return run_fooling(ofool);
    if (rule->parsed() && rexp->parsed()) return run_rule_export(orule);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
