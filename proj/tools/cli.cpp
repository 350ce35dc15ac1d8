#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qadio/decision.hpp"
#include "qadio/error.hpp"
#include "qadio/evolution.hpp"
#include "qadio/oracle.hpp"
#include "qadio/polynomial.hpp"
#include "report_io.hpp"

namespace qadio::cli {
namespace {

double parse_real(std::string_view s, const std::string& whole) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("cannot parse complex number '" + whole + "'");
  }
  return v;
}

struct Options {
  std::string equation;
  std::vector<std::string> alpha{"2+0i"};
  double eps_tilde = 1e-3;
  std::vector<std::uint32_t> cutoffs;
  double dt = 0.05;
  std::string gamma = "0";
  std::string growth = "adaptive";
  double eta = 1e-6;
  std::size_t dim_cap = kDefaultDimCap;
  std::string stepper = "split";
  std::size_t record_stride = 1000;
  std::size_t top_k = 5;
  double stability_budget = 1.0;
  bool no_renormalize = false;
  std::string out_trajectory;
  std::string out_report;

  // decide
  double t0 = 1.0;
  double rho = 2.0;
  std::size_t max_probes = 12;
  std::size_t confirmations = 1;
  double epsilon = 0.05;
  double delta = 0.01;
  std::uint64_t seed = 0;
  double tol = 1e-2;
  std::size_t max_halvings = 10;

  // evolve
  double total_time = 0.0;
  bool converge = false;

  // oracle
  std::uint32_t bound = 20;
  std::uint64_t budget = 1'000'000;

  // gap
  std::size_t grid = 101;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--equation", o.equation, "Diophantine equation, e.g. \"x*y + x + 4y - 11\"")
      ->required();
  cmd->add_option("--alpha", o.alpha,
                  "Coherent displacement per mode (comma separated; one value is broadcast)")
      ->delimiter(',');
  cmd->add_option("--eps-tilde", o.eps_tilde, "Initial-state norm tolerance");
  cmd->add_option("--cutoffs", o.cutoffs, "Initial cutoff per mode (overrides --eps-tilde)")
      ->delimiter(',');
  cmd->add_option("--gamma", o.gamma, "Symmetry-breaking strength on mode 1");
}

void add_evolution(CLI::App* cmd, Options& o) {
  cmd->add_option("--dt", o.dt, "Time step");
  cmd->add_option("--growth", o.growth, "Truncation growth: adaptive, literal or fixed")
      ->check(CLI::IsMember({"adaptive", "literal", "fixed"}));
  cmd->add_option("--eta", o.eta, "Adaptive growth threshold on boundary mass");
  cmd->add_option("--dim-cap", o.dim_cap, "Maximum basis dimension");
  cmd->add_option("--stepper", o.stepper, "Stepper: split or taylor")
      ->check(CLI::IsMember({"split", "taylor"}));
  cmd->add_option("--record-stride", o.record_stride, "Steps between trajectory records");
  cmd->add_option("--top-k", o.top_k, "Components kept per record");
  cmd->add_option("--stability-budget", o.stability_budget,
                  "Cap on the accumulated stepper amplification exponent");
  cmd->add_flag("--no-renormalize", o.no_renormalize, "Do not renormalize after each step");
  cmd->add_option("--out-trajectory", o.out_trajectory, "CSV trajectory output path");
}

std::vector<Complex> alphas_for(const Options& o, std::size_t modes) {
  std::vector<Complex> a;
  for (const auto& s : o.alpha) a.push_back(parse_complex(s));
  if (a.size() == 1 && modes > 1) a.assign(modes, a.front());
  if (a.size() != modes) {
    throw DomainError("--alpha lists " + std::to_string(a.size()) + " values for " +
                      std::to_string(modes) + " variables");
  }
  return a;
}

EvolutionConfig evolution_config(const Options& o) {
  EvolutionConfig c;
  c.dt = o.dt;
  c.dim_cap = o.dim_cap;
  c.record_stride = o.record_stride;
  c.top_k = o.top_k;
  c.stability_budget = o.stability_budget;
  c.renormalize_each_step = !o.no_renormalize;
  c.stepper = o.stepper == "taylor" ? StepperKind::taylor2 : StepperKind::split_taylor2;
  if (o.growth == "fixed") {
    c.growth = GrowthPolicy::fixed();
  } else if (o.growth == "literal") {
    c.growth = GrowthPolicy::literal();
  } else {
    c.growth = GrowthPolicy::adaptive(o.eta);
  }
  return c;
}

void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw Error("cannot write '" + path + "'");
}

void emit_trajectory(const std::string& path, std::span<const TrajectoryRecord> records) {
  if (path.empty()) return;
  std::ostringstream os;
  io::write_trajectory_csv(os, records);
  emit(path, os.str(), std::cout);
}

int run_decide(const Options& o, std::ostream& out) {
  const Polynomial poly = parse_polynomial(o.equation);
  DecisionConfig c;
  c.epsilon = o.epsilon;
  c.delta = o.delta;
  c.t0 = o.t0;
  c.rho = o.rho;
  c.max_probes = o.max_probes;
  c.confirmations = o.confirmations;
  c.evolution = evolution_config(o);
  c.convergence.tol = o.tol;
  c.convergence.max_halvings = o.max_halvings;
  c.alphas = alphas_for(o, poly.num_variables());
  c.gamma = parse_complex(o.gamma);
  c.eps_tilde = o.eps_tilde;
  c.initial_cutoffs = o.cutoffs;
  c.seed = o.seed;
  const DecisionReport report = decide(poly, c);

  std::vector<TrajectoryRecord> finals;
  for (const auto& p : report.probes) {
    if (!p.records.empty()) finals.push_back(p.records.back());
  }
  emit_trajectory(o.out_trajectory, finals);
  emit(o.out_report, io::decision_report_json(report), out);
  return report.outcome == Outcome::decided ? kExitDecided : kExitUndecided;
}

int run_evolve(const Options& o, std::ostream& out, std::ostream& err) {
  const Polynomial poly = parse_polynomial(o.equation);
  const HamiltonianSpec spec(poly, CoherentParams(alphas_for(o, poly.num_variables())),
                             parse_complex(o.gamma));
  EvolutionConfig c = evolution_config(o);
  c.total_time = o.total_time;
  const StateVector init = initial_state(spec, o.eps_tilde, o.cutoffs, c.dim_cap);
  std::optional<io::ConvergenceInfo> info;
  EvolutionResult result = [&] {
    if (!o.converge) return evolve(spec, init, c);
    ConvergenceConfig conv;
    conv.tol = o.tol;
    conv.max_halvings = o.max_halvings;
    ConvergedRun run = converge_step_size(spec, init, c, conv);
    info = io::ConvergenceInfo{run.converged, run.err_est, run.dt_used, run.halvings};
    return std::move(run.result);
  }();
  emit_trajectory(o.out_trajectory, result.records);
  emit(o.out_report, io::evolution_report_json(spec, c, result, info), out);
  if (result.unstable) {
    err << "error: stability budget exceeded at t=" << io::format_number(result.reached_time)
        << "; use a smaller --dt or --converge\n";
    return kExitError;
  }
  return info && !info->converged ? kExitUndecided : kExitDecided;
}

int run_oracle(const Options& o, std::ostream& out) {
  const Polynomial poly = parse_polynomial(o.equation);
  const MinimumResult minimum = brute_force_minimum(poly, o.bound);
  const auto zero = semi_decide_search(poly, o.budget);
  emit(o.out_report, io::oracle_report_json(poly, o.bound, minimum, o.budget, zero), out);
  return kExitDecided;
}

int run_gap(const Options& o, std::ostream& out) {
  const Polynomial poly = parse_polynomial(o.equation);
  const HamiltonianSpec spec(poly, CoherentParams(alphas_for(o, poly.num_variables())),
                             parse_complex(o.gamma));
  std::vector<std::uint32_t> cutoffs = o.cutoffs;
  if (cutoffs.empty()) {
    for (const auto& a : spec.params().alphas()) {
      cutoffs.push_back(truncation_for_alpha(a, o.eps_tilde));
    }
  }
  if (cutoffs.size() != poly.num_variables()) {
    throw DomainError("--cutoffs must list one value per variable");
  }
  const Truncation tr(cutoffs);
  const GapProfile profile = gap_profile(spec, tr, o.grid);
  emit(o.out_report, io::gap_report_json(spec, tr, profile), out);
  return kExitDecided;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s;
  std::remove_copy_if(text.begin(), text.end(), std::back_inserter(s),
                      [](unsigned char c) { return std::isspace(c); });
  if (s.empty()) throw DomainError("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') {
    return {parse_real(s, text), 0.0};
  }
  s.pop_back();
  // Split at the last sign that is not part of an exponent or leading.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_of = [&](std::string part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    if (part.front() == '+') part.erase(0, 1);
    return parse_real(part, text);
  };
  if (split == std::string::npos) return {0.0, imag_of(s)};
  std::string re = s.substr(0, split);
  if (!re.empty() && re.front() == '+') re.erase(0, 1);
  return {parse_real(re, text), imag_of(s.substr(split))};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum adiabatic decision procedure for Diophantine equations"};
  app.require_subcommand(1);
  Options o;

  auto* decide_cmd = app.add_subcommand("decide", "Run the full T-schedule decision");
  add_common(decide_cmd, o);
  add_evolution(decide_cmd, o);
  decide_cmd->add_option("--T0", o.t0, "First evolution time of the schedule");
  decide_cmd->add_option("--rho", o.rho, "Geometric growth factor of the schedule");
  decide_cmd->add_option("--max-probes", o.max_probes, "Maximum number of T probes");
  decide_cmd->add_option("--confirmations", o.confirmations,
                         "Consecutive extra probes that must repeat a verdict");
  decide_cmd->add_option("--epsilon", o.epsilon, "Sampling tolerance epsilon");
  decide_cmd->add_option("--delta", o.delta, "Sampling failure probability delta");
  decide_cmd->add_option("--seed", o.seed, "Seed for measurement sampling");
  decide_cmd->add_option("--tol", o.tol, "Step-size convergence tolerance on P");
  decide_cmd->add_option("--max-halvings", o.max_halvings, "Step-size halving limit");
  decide_cmd->add_option("--out-report", o.out_report, "JSON report output path");

  auto* evolve_cmd = app.add_subcommand("evolve", "Run a single evolution");
  add_common(evolve_cmd, o);
  add_evolution(evolve_cmd, o);
  evolve_cmd->add_option("--T", o.total_time, "Total evolution time")->required();
  evolve_cmd->add_flag("--converge", o.converge, "Halve dt until the result is step-size converged");
  evolve_cmd->add_option("--tol", o.tol, "Step-size convergence tolerance on P");
  evolve_cmd->add_option("--max-halvings", o.max_halvings, "Step-size halving limit");
  evolve_cmd->add_option("--out-report", o.out_report, "JSON report output path");

  auto* oracle_cmd = app.add_subcommand("oracle", "Classical box minimum and zero search");
  oracle_cmd->add_option("--equation", o.equation, "Diophantine equation")->required();
  oracle_cmd->add_option("--bound", o.bound, "Box bound B for the exhaustive minimum");
  oracle_cmd->add_option("--budget", o.budget, "Evaluation budget for the zero search");
  oracle_cmd->add_option("--out-report", o.out_report, "JSON report output path");

  auto* gap_cmd = app.add_subcommand("gap", "Dense spectral-gap profile over s");
  add_common(gap_cmd, o);
  gap_cmd->add_option("--grid", o.grid, "Number of s grid points");
  gap_cmd->add_option("--out-report", o.out_report, "JSON report output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (decide_cmd->parsed()) return run_decide(o, out);
    if (evolve_cmd->parsed()) return run_evolve(o, out, err);
    if (oracle_cmd->parsed()) return run_oracle(o, out);
    if (gap_cmd->parsed()) return run_gap(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace qadio::cli
