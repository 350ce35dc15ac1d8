#include "qadio/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "qadio/error.hpp"

namespace qadio {

void EvolutionConfig::validate() const {
  if (!(total_time >= 0.0) || !std::isfinite(total_time)) {
    throw DomainError("total time must be finite and non-negative");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (total_time > 0.0 && !(dt < total_time)) {
    throw DomainError("dt must be smaller than the total time");
  }
  if (growth.kind == GrowthKind::adaptive && !(growth.eta > 0.0 && growth.eta <= 1e-3)) {
    throw DomainError("adaptive growth threshold eta must lie in (0, 1e-3]");
  }
  if (record_stride == 0) throw DomainError("record stride must be positive");
  if (top_k == 0) throw DomainError("top_k must be positive");
  if (!(stability_budget > 0.0)) throw DomainError("stability budget must be positive");
}

double Stepper::expansion_radius(const HamiltonianOperator& op, double s) const {
  const double rest = kind_ == StepperKind::taylor2 ? op.problem_bound()
                                                    : op.symmetry_breaking_bound();
  return (1.0 - s) * op.initial_bound() + s * rest;
}

void Stepper::apply_phases(const HamiltonianOperator& op, std::span<Complex> psi,
                           double s, double dt) {
  const auto diag = op.problem_diagonal();
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double phase = -s * diag[i] * dt;
    psi[i] *= Complex(std::cos(phase), std::sin(phase));
  }
}

void Stepper::step(const HamiltonianOperator& op, StateVector& state, double s,
                   double dt, bool renormalize) {
  const std::size_t dim = state.dimension();
  h1_.resize(dim);
  h2_.resize(dim);
  auto psi = state.amplitudes();
  const bool split = kind_ == StepperKind::split_taylor2;
  if (split) {
    apply_phases(op, psi, s, 0.5 * dt);
    op.apply_without_problem_diagonal(s, psi, h1_);
    op.apply_without_problem_diagonal(s, h1_, h2_);
  } else {
    op.apply(s, psi, h1_);
    op.apply(s, h1_, h2_);
  }
  const Complex first(0.0, -dt);
  const double second = -0.5 * dt * dt;
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    psi[i] += first * h1_[i] + second * h2_[i];
    norm_sq += std::norm(psi[i]);
  }
  if (split) apply_phases(op, psi, s, 0.5 * dt);
  if (!std::isfinite(norm_sq)) {
    throw NumericalError("non-finite amplitudes after a step of dt = " +
                         std::to_string(dt) + "; the step is too large");
  }
  if (renormalize) state.normalize();
}

StateVector step_second_order(const HamiltonianSpec& spec, const StateVector& state,
                              double s, double dt, bool renormalize, StepperKind kind) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("s must lie in [0, 1]");
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  HamiltonianOperator op(spec, state.truncation());
  StateVector out = state;
  Stepper stepper(kind);
  stepper.step(op, out, s, dt, renormalize);
  return out;
}

namespace {

// Probability mass in the top two levels of every mode.
std::vector<double> boundary_mass(const StateVector& state) {
  const Truncation& tr = state.truncation();
  const double total = state.norm_squared();
  std::vector<double> mass(tr.modes(), 0.0);
  for (std::size_t k = 0; k < tr.modes(); ++k) {
    const std::size_t stride = tr.stride(k);
    const std::size_t levels = std::size_t{tr.cutoff(k)} + 1;
    const std::size_t block = stride * levels;
    const std::size_t first = levels >= 2 ? levels - 2 : 0;
    double acc = 0.0;
    for (std::size_t base = 0; base < tr.dimension(); base += block) {
      for (std::size_t n = first; n < levels; ++n) {
        for (std::size_t j = 0; j < stride; ++j) acc += std::norm(state[base + n * stride + j]);
      }
    }
    mass[k] = total > 0.0 ? acc / total : 0.0;
  }
  return mass;
}

}  // namespace

GrowthResult grow_truncation(const StateVector& state, const GrowthPolicy& policy,
                             std::size_t dim_cap) {
  const Truncation& tr = state.truncation();
  std::vector<std::uint32_t> cutoffs = tr.cutoffs();
  bool wanted = false;
  switch (policy.kind) {
    case GrowthKind::fixed:
      break;
    case GrowthKind::literal_plus_two:
      for (auto& m : cutoffs) m += 2;
      wanted = true;
      break;
    case GrowthKind::adaptive: {
      const auto mass = boundary_mass(state);
      for (std::size_t k = 0; k < cutoffs.size(); ++k) {
        if (mass[k] > policy.eta) {
          cutoffs[k] += 2;
          wanted = true;
        }
      }
      break;
    }
  }
  if (!wanted) return {state, false, false};
  std::optional<Truncation> larger;
  try {
    larger.emplace(cutoffs, dim_cap);
  } catch (const CapacityError&) {
    return {state, false, true};
  }
  return {state.embedded(*larger), true, false};
}

StateVector initial_state(const HamiltonianSpec& spec, double eps_tilde,
                          std::span<const std::uint32_t> cutoffs, std::size_t dim_cap) {
  return product_coherent_state(spec.params(), eps_tilde, cutoffs, dim_cap);
}

namespace {

TrajectoryRecord make_record(double time, const StateVector& state, std::size_t top_k) {
  return {time, state.truncation().cutoffs(), state.dimension(),
          top_components(state, top_k), state.norm_defect()};
}

}  // namespace

EvolutionResult evolve(const HamiltonianSpec& spec, StateVector initial,
                       const EvolutionConfig& config) {
  config.validate();
  if (initial.dimension() > config.dim_cap) {
    throw CapacityError("initial dimension exceeds the dimension cap");
  }
  if (initial.truncation().modes() != spec.modes()) {
    throw DomainError("initial state arity does not match the Hamiltonian");
  }
  EvolutionResult result{std::move(initial), {}, 0, 0.0, false, false, 0.0};
  StateVector& state = result.final_state;
  result.records.push_back(make_record(0.0, state, config.top_k));
  const double total = config.total_time;
  if (total == 0.0) return result;

  const auto steps = static_cast<std::size_t>(
      std::max(1.0, std::ceil(total / config.dt * (1.0 - 1e-12))));
  std::optional<HamiltonianOperator> op;
  op.emplace(spec, state.truncation());
  Stepper stepper(config.stepper);
  bool growth_open = config.growth.kind != GrowthKind::fixed;

  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * config.dt;
    const double h = i + 1 == steps ? total - t : config.dt;
    if (growth_open) {
      GrowthResult g = grow_truncation(state, config.growth, config.dim_cap);
      if (g.cap_hit) {
        result.dim_cap_hit = true;
        growth_open = false;
      } else if (g.grew) {
        state = std::move(g.state);
        op.emplace(spec, state.truncation());
      }
    }
    const double s = std::min(1.0, (t + 0.5 * h) / total);
    const double rh = stepper.expansion_radius(*op, s) * h;
    result.stability_exponent += rh * rh * rh * rh / 8.0;
    if (result.stability_exponent > config.stability_budget) {
      result.unstable = true;
      break;
    }
    stepper.step(*op, state, s, h, config.renormalize_each_step);
    ++result.steps;
    result.reached_time = i + 1 == steps ? total : t + h;
    if ((i + 1) % config.record_stride == 0 || i + 1 == steps) {
      result.records.push_back(make_record(result.reached_time, state, config.top_k));
    }
  }
  return result;
}

double predicted_stability_exponent(const HamiltonianOperator& op, StepperKind kind,
                                    double total_time, double dt) {
  const double a = op.initial_bound();
  const double b = kind == StepperKind::taylor2 ? op.problem_bound()
                                                : op.symmetry_breaking_bound();
  // Integral over s in [0, 1] of ((1 - s) a + s b)^4.
  const double mean4 = std::abs(b - a) < 1e-12 * std::max(a, b)
                           ? a * a * a * a
                           : (std::pow(b, 5) - std::pow(a, 5)) / (5.0 * (b - a));
  return dt * dt * dt / 8.0 * total_time * mean4;
}

namespace {

struct Attempt {
  EvolutionResult result;
  RankedState top;
  bool usable = false;
};

Attempt attempt(const HamiltonianSpec& spec, const StateVector& initial,
                EvolutionConfig config, double dt) {
  config.dt = dt;
  try {
    Attempt a{evolve(spec, initial, config), {}, false};
    if (!a.result.unstable) {
      a.top = top_components(a.result.final_state, 1).front();
      a.usable = true;
    }
    return a;
  } catch (const NumericalError&) {
    return {EvolutionResult{initial, {}, 0, 0.0, false, true, 0.0}, {}, false};
  }
}

double fit_dt(const HamiltonianSpec& spec, const Truncation& truncation,
              const EvolutionConfig& config, double dt) {
  HamiltonianOperator op(spec, truncation);
  for (int i = 0; i < 64; ++i) {
    if (predicted_stability_exponent(op, config.stepper, config.total_time, dt) <=
        config.stability_budget) {
      break;
    }
    dt *= 0.5;
  }
  return dt;
}

}  // namespace

ConvergedRun converge_step_size(const HamiltonianSpec& spec, const StateVector& initial,
                                const EvolutionConfig& config,
                                const ConvergenceConfig& convergence) {
  if (!(convergence.tol > 0.0)) throw DomainError("convergence tolerance must be positive");
  config.validate();
  double dt = config.dt;
  if (config.total_time == 0.0) {
    EvolutionResult r = evolve(spec, initial, config);
    const RankedState top = top_components(r.final_state, 1).front();
    return {top.probability, top.index, 0.0, dt, true, 0, std::move(r)};
  }
  const bool fit = convergence.prefit_dt && std::isfinite(config.stability_budget);
  if (fit) dt = fit_dt(spec, initial.truncation(), config, dt);

  Attempt coarse = attempt(spec, initial, config, dt);
  // A run that grew its truncation can outrun the prefit; refit on the
  // truncation it had reached when it aborted.
  for (std::size_t refit = 0; fit && !coarse.usable && refit < convergence.max_refits;
       ++refit) {
    const double next = fit_dt(spec, coarse.result.final_state.truncation(), config, dt);
    dt = next < dt ? next : 0.5 * dt;
    coarse = attempt(spec, initial, config, dt);
  }
  std::size_t halvings = 0;
  double err = std::numeric_limits<double>::infinity();
  bool converged = false;
  while (halvings < convergence.max_halvings) {
    Attempt fine = attempt(spec, initial, config, 0.5 * dt);
    dt *= 0.5;
    ++halvings;
    err = coarse.usable && fine.usable
              ? std::abs(coarse.top.probability - fine.top.probability)
              : std::numeric_limits<double>::infinity();
    converged = coarse.usable && fine.usable && coarse.top.index == fine.top.index &&
                err < convergence.tol;
    coarse = std::move(fine);
    if (converged) break;
  }
  return {coarse.top.probability, coarse.top.index, err, dt, converged && coarse.usable,
          halvings, std::move(coarse.result)};
}

}  // namespace qadio
