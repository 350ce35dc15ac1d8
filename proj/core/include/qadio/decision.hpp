#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qadio/evolution.hpp"
#include "qadio/fock.hpp"
#include "qadio/polynomial.hpp"

namespace qadio {

/// Most probable Fock state of a normalized state (ties: graded_lex_less).
RankedState dominant_component(const StateVector& state);

struct NoDominance {
  bool holds = false;                // max overlap <= 1/2
  double max_overlap = 0.0;
  FockIndex argmax;
  double k_tuple_bound = 0.0;        // (1/2)^K
  bool k_tuple_holds = false;        // max overlap < (1/2)^K
};

/// Exhaustive scan of |<{alpha}|{n}>|^2 = prod_k e^{-|a_k|^2} |a_k|^{2 n_k} / n_k!
/// over every index of `truncation` (exact overlaps, not renormalized).
NoDominance no_dominance_check(const CoherentParams& params, const Truncation& truncation);

/// Smallest integer N with N > 1 / (4 eps^2 delta). eps and delta in (0, 1).
std::uint64_t required_samples(double epsilon, double delta);

/// Fraction of N Bernoulli(p) draws equal to 1, from a generator seeded by seed.
double sample_frequency(double p, std::uint64_t n, std::uint64_t seed);

struct DecisionConfig {
  double epsilon = 0.05;
  double delta = 0.01;
  double t0 = 1.0;
  double rho = 2.0;
  std::size_t max_probes = 12;
  /// Further consecutive probes on which the same state must clear the
  /// threshold before the verdict is accepted.
  std::size_t confirmations = 1;
  /// Template for each probe; total_time is overwritten by the schedule.
  EvolutionConfig evolution;
  ConvergenceConfig convergence;
  /// Empty means 2 + 0i for every mode.
  std::vector<Complex> alphas;
  Complex gamma{};
  double eps_tilde = 1e-3;
  /// Initial cutoffs; empty derives them from eps_tilde.
  std::vector<std::uint32_t> initial_cutoffs;
  std::uint64_t seed = 0;
  /// Keep every record of each probe's accepted run, not only the last one.
  bool keep_trajectories = false;

  void validate() const;
};

enum class Outcome {
  decided,
  undecided_probe_budget,
  undecided_dim_cap,
};

std::string to_string(Outcome outcome);

struct ProbeSummary {
  double total_time = 0.0;
  double probability = 0.0;
  FockIndex dominant;
  double err_est = 0.0;
  double dt_used = 0.0;
  bool converged = false;
  bool dim_cap_hit = false;
  double stability_exponent = 0.0;
  std::vector<TrajectoryRecord> records;
};

struct SamplingRecord {
  std::uint64_t samples = 0;
  double frequency = 0.0;
};

struct DecisionDiagnostics {
  double err_est = 0.0;
  double norm_defect = 0.0;
  bool dim_cap_hit = false;
  bool degeneracy = false;
  bool converged = false;
  double dt_used = 0.0;
  double no_dominance_max = 0.0;
};

struct DecisionReport {
  std::string equation;
  std::vector<std::string> variables;
  Outcome outcome = Outcome::undecided_probe_budget;
  FockIndex dominant;
  double probability = 0.0;
  double t_used = 0.0;
  /// Set only when decided.
  std::optional<std::uint64_t> ground_energy;
  bool has_solution = false;
  std::optional<FockIndex> witness;
  SamplingRecord sampling;
  DecisionDiagnostics diagnostics;
  std::vector<ProbeSummary> probes;
  DecisionConfig config;
};

/// Geometric T schedule t0, rho t0, ... ; each probe is step-size converged
/// and a verdict is accepted once the same state has a converged
/// P > 1/2 + epsilon on 1 + confirmations consecutive probes.
DecisionReport decide(const Polynomial& poly, const DecisionConfig& config);

}  // namespace qadio
