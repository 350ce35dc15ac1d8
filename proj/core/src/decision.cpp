#include "qadio/decision.hpp"

#include <cmath>
#include <random>

#include "qadio/error.hpp"
#include "qadio/hamiltonian.hpp"
#include "qadio/oracle.hpp"

namespace qadio {

RankedState dominant_component(const StateVector& state) {
  return top_components(state, 1).front();
}

NoDominance no_dominance_check(const CoherentParams& params, const Truncation& truncation) {
  if (params.modes() != truncation.modes()) {
    throw DomainError("coherent parameters and truncation differ in arity");
  }
  std::vector<std::vector<double>> weights(params.modes());
  for (std::size_t k = 0; k < params.modes(); ++k) {
    const auto amps = coherent_amplitudes(params[k], truncation.cutoff(k));
    for (const auto& a : amps) weights[k].push_back(std::norm(a));
  }
  NoDominance out;
  for (std::size_t i = 0; i < truncation.dimension(); ++i) {
    double w = 1.0;
    for (std::size_t k = 0; k < truncation.modes(); ++k) {
      w *= weights[k][truncation.occupation(i, k)];
    }
    const FockIndex idx = truncation.index_at(i);
    if (w > out.max_overlap || (w == out.max_overlap && graded_lex_less(idx, out.argmax))) {
      out.max_overlap = w;
      out.argmax = idx;
    }
  }
  out.holds = out.max_overlap <= 0.5;
  out.k_tuple_bound = std::pow(0.5, static_cast<double>(truncation.modes()));
  out.k_tuple_holds = out.max_overlap < out.k_tuple_bound;
  return out;
}

std::uint64_t required_samples(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw DomainError("epsilon and delta must lie in (0, 1)");
  }
  const double bound = 1.0 / (4.0 * epsilon * epsilon * delta);
  if (!(bound < 1e18)) throw OverflowError("required sample count is too large");
  // Snap values within rounding of an integer so that N > bound is decided on
  // the exact quotient rather than its floating-point neighbour.
  const double nearest = std::round(bound);
  const double base = std::abs(bound - nearest) <= 1e-9 * bound ? nearest : std::floor(bound);
  return static_cast<std::uint64_t>(base) + 1;
}

double sample_frequency(double p, std::uint64_t n, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  if (n == 0) throw DomainError("sample count must be positive");
  std::mt19937_64 gen(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    // 53-bit uniform in [0, 1), reproducible across standard libraries.
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    if (u < p) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

void DecisionConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw DomainError("epsilon and delta must lie in (0, 1)");
  }
  if (!(t0 > 0.0)) throw DomainError("T0 must be positive");
  if (!(rho > 1.0)) throw DomainError("schedule growth factor must exceed 1");
  if (max_probes == 0) throw DomainError("at least one probe is required");
  if (!(eps_tilde > 0.0 && eps_tilde < 1.0)) throw DomainError("eps_tilde must lie in (0, 1)");
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::decided: return "decided";
    case Outcome::undecided_probe_budget: return "undecided_probe_budget";
    case Outcome::undecided_dim_cap: return "undecided_dim_cap";
  }
  return "unknown";
}

DecisionReport decide(const Polynomial& poly, const DecisionConfig& config) {
  config.validate();
  const std::size_t modes = poly.num_variables();
  CoherentParams params = config.alphas.empty()
                              ? CoherentParams::uniform(modes, Complex(2.0, 0.0))
                              : CoherentParams(config.alphas);
  const HamiltonianSpec spec(poly, params, config.gamma);
  const StateVector initial = initial_state(spec, config.eps_tilde, config.initial_cutoffs,
                                            config.evolution.dim_cap);

  DecisionReport report;
  report.equation = poly.to_string();
  report.variables = poly.variable_names();
  report.config = config;

  const NoDominance nd = no_dominance_check(params, initial.truncation());
  report.diagnostics.no_dominance_max = nd.max_overlap;
  if (!nd.holds) {
    throw DomainError("initial state has a dominant Fock component; the identification "
                      "criterion does not apply");
  }
  if (config.gamma == Complex{}) {
    const auto box = brute_force_minimum(poly, initial.truncation().cutoffs());
    report.diagnostics.degeneracy = box.argmins.size() > 1;
  }

  double t = config.t0;
  std::size_t streak = 0;
  FockIndex streak_index;
  for (std::size_t probe = 0; probe < config.max_probes; ++probe, t *= config.rho) {
    EvolutionConfig ev = config.evolution;
    ev.total_time = t;
    if (!(ev.dt < t)) ev.dt = t / 2.0;
    ConvergedRun run = converge_step_size(spec, initial, ev, config.convergence);

    ProbeSummary summary;
    summary.total_time = t;
    summary.probability = run.probability;
    summary.dominant = run.dominant;
    summary.err_est = run.err_est;
    summary.dt_used = run.dt_used;
    summary.converged = run.converged;
    summary.dim_cap_hit = run.result.dim_cap_hit;
    summary.stability_exponent = run.result.stability_exponent;
    if (config.keep_trajectories) {
      summary.records = run.result.records;
    } else if (!run.result.records.empty()) {
      summary.records.push_back(run.result.records.back());
    }
    report.probes.push_back(std::move(summary));

    report.dominant = run.dominant;
    report.probability = run.probability;
    report.t_used = t;
    report.diagnostics.err_est = run.err_est;
    report.diagnostics.norm_defect = run.result.final_state.norm_defect();
    report.diagnostics.dt_used = run.dt_used;
    report.diagnostics.converged = run.converged;

    if (run.result.dim_cap_hit) {
      report.diagnostics.dim_cap_hit = true;
      report.outcome = Outcome::undecided_dim_cap;
      break;
    }
    const bool clears = run.converged && run.probability > 0.5 + config.epsilon;
    if (!clears) {
      streak = 0;
      continue;
    }
    streak = streak > 0 && run.dominant == streak_index ? streak + 1 : 1;
    streak_index = run.dominant;
    if (streak > config.confirmations) {
      report.outcome = Outcome::decided;
      report.ground_energy = hp_eigenvalue(poly, run.dominant);
      report.has_solution = *report.ground_energy == 0;
      if (report.has_solution) report.witness = run.dominant;
      break;
    }
  }

  report.sampling.samples = required_samples(config.epsilon, config.delta);
  report.sampling.frequency =
      sample_frequency(report.probability, report.sampling.samples, config.seed);
  return report;
}

}  // namespace qadio
