#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "qadio/fock.hpp"
#include "qadio/hamiltonian.hpp"

namespace qadio {

enum class GrowthKind {
  fixed,             // truncation never changes
  literal_plus_two,  // every mode grows by two levels every step
  adaptive,          // a mode grows by two when its top two levels hold > eta
};

struct GrowthPolicy {
  GrowthKind kind = GrowthKind::adaptive;
  double eta = 1e-6;

  static GrowthPolicy fixed() { return {GrowthKind::fixed, 0.0}; }
  static GrowthPolicy literal() { return {GrowthKind::literal_plus_two, 0.0}; }
  static GrowthPolicy adaptive(double eta) { return {GrowthKind::adaptive, eta}; }
};

enum class StepperKind {
  /// psi <- (1 - i h dt - h^2 dt^2 / 2) psi with the full interpolated h.
  taylor2,
  /// The diagonal s*H_P part is applied as exact phases in two half steps
  /// around the same second-order expansion of the remainder.
  split_taylor2,
};

struct EvolutionConfig {
  double total_time = 0.0;
  double dt = 0.05;
  GrowthPolicy growth;
  std::size_t dim_cap = kDefaultDimCap;
  bool renormalize_each_step = true;
  std::size_t record_stride = 1000;
  std::size_t top_k = 5;
  StepperKind stepper = StepperKind::split_taylor2;
  /// Bound on sum over steps of (rho dt)^4 / 8, where rho bounds the spectral
  /// radius of the expanded operator. The per-step amplification of the
  /// expansion is sqrt(1 + (lambda dt)^4 / 4), so this caps the log-growth of
  /// the fastest spurious component. Infinity disables the guard.
  double stability_budget = 1.0;

  /// Throws DomainError on an invalid configuration.
  void validate() const;
};

struct TrajectoryRecord {
  double time = 0.0;
  std::vector<std::uint32_t> cutoffs;
  std::size_t dimension = 0;
  std::vector<RankedState> top;
  double norm_defect = 0.0;
};

/// Reusable second-order stepper that owns its scratch buffers.
class Stepper {
 public:
  explicit Stepper(StepperKind kind = StepperKind::taylor2) : kind_(kind) {}

  /// Advances `state` by dt with the Hamiltonian frozen at s. Renormalizes
  /// when asked, recording the deficit. Throws NumericalError on non-finite
  /// amplitudes.
  void step(const HamiltonianOperator& op, StateVector& state, double s, double dt,
            bool renormalize);

  /// Spectral-radius bound of the operator this stepper expands at s.
  double expansion_radius(const HamiltonianOperator& op, double s) const;

 private:
  void apply_phases(const HamiltonianOperator& op, std::span<Complex> psi, double s,
                    double dt);

  StepperKind kind_;
  std::vector<Complex> h1_;
  std::vector<Complex> h2_;
};

StateVector step_second_order(const HamiltonianSpec& spec, const StateVector& state,
                              double s, double dt, bool renormalize = true,
                              StepperKind kind = StepperKind::taylor2);

struct GrowthResult {
  StateVector state;
  bool grew = false;
  bool cap_hit = false;
};

/// Applies one growth decision. When the grown basis would exceed dim_cap the
/// state is returned unchanged with cap_hit set.
GrowthResult grow_truncation(const StateVector& state, const GrowthPolicy& policy,
                             std::size_t dim_cap = kDefaultDimCap);

/// Initial product coherent state for a specification.
StateVector initial_state(const HamiltonianSpec& spec, double eps_tilde,
                          std::span<const std::uint32_t> cutoffs = {},
                          std::size_t dim_cap = kDefaultDimCap);

struct EvolutionResult {
  StateVector final_state;
  std::vector<TrajectoryRecord> records;
  std::size_t steps = 0;
  double reached_time = 0.0;
  bool dim_cap_hit = false;
  /// The run was abandoned because stability_budget was exceeded.
  bool unstable = false;
  double stability_exponent = 0.0;
};

/// Integrates from `initial` over [0, T]. ceil(T/dt) steps, the last one
/// shortened to land on T; growth is applied before each step and h(s) is
/// frozen at the step midpoint.
EvolutionResult evolve(const HamiltonianSpec& spec, StateVector initial,
                       const EvolutionConfig& config);

struct ConvergenceConfig {
  double tol = 1e-2;
  std::size_t max_halvings = 10;
  /// Shrink the starting dt until the predicted stability exponent on the
  /// initial truncation is within budget, before any comparison run.
  bool prefit_dt = true;
  /// Extra refits allowed when the first run aborts as unstable.
  std::size_t max_refits = 6;
};

struct ConvergedRun {
  double probability = 0.0;
  FockIndex dominant;
  double err_est = 0.0;
  double dt_used = 0.0;
  bool converged = false;
  std::size_t halvings = 0;
  EvolutionResult result;
};

/// Predicted stability exponent for a run on the truncation of `op`.
double predicted_stability_exponent(const HamiltonianOperator& op, StepperKind kind,
                                    double total_time, double dt);

/// Runs evolve at dt and dt/2, halving until the dominant index agrees and
/// |P(dt) - P(dt/2)| < tol. The finer run is returned; runs that exceed the
/// stability budget or go non-finite count as disagreement.
ConvergedRun converge_step_size(const HamiltonianSpec& spec, const StateVector& initial,
                                const EvolutionConfig& config,
                                const ConvergenceConfig& convergence = {});

}  // namespace qadio
