#include "qadio/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "qadio/error.hpp"

namespace qadio {

HamiltonianSpec::HamiltonianSpec(Polynomial polynomial, CoherentParams params,
                                 Complex gamma)
    : poly_(std::move(polynomial)), params_(std::move(params)), gamma_(gamma) {
  if (poly_.num_variables() != params_.modes()) {
    throw DomainError("polynomial has " + std::to_string(poly_.num_variables()) +
                      " variables but " + std::to_string(params_.modes()) +
                      " coherent parameters were given");
  }
  if (!(std::abs(gamma_) <= kMaxGamma)) {
    throw DomainError("|gamma| must not exceed 1");
  }
}

std::uint64_t hp_eigenvalue(const Polynomial& poly, const FockIndex& index) {
  return poly.squared(index.occupations);
}

HamiltonianOperator::HamiltonianOperator(const HamiltonianSpec& spec,
                                         Truncation truncation)
    : truncation_(std::move(truncation)),
      alphas_(spec.params().alphas()),
      gamma_(spec.gamma()) {
  if (truncation_.modes() != spec.modes()) {
    throw DomainError("truncation arity does not match the Hamiltonian");
  }
  const std::size_t dim = truncation_.dimension();
  const std::size_t modes = truncation_.modes();
  diag_.resize(dim);
  initial_diag_.resize(dim);
  std::vector<std::uint32_t> occ(modes);
  double alpha_sq = 0.0;
  for (const auto& a : alphas_) alpha_sq += std::norm(a);
  std::uint64_t max_diag = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    double n_total = 0.0;
    for (std::size_t k = 0; k < modes; ++k) {
      occ[k] = truncation_.occupation(i, k);
      n_total += occ[k];
    }
    const std::uint64_t e = spec.polynomial().squared(occ);
    max_diag = std::max(max_diag, e);
    diag_[i] = static_cast<double>(e);
    initial_diag_[i] = n_total + alpha_sq;
  }
  std::uint32_t max_cutoff = 0;
  for (std::size_t k = 0; k < modes; ++k) {
    max_cutoff = std::max(max_cutoff, truncation_.cutoff(k));
  }
  sqrt_table_.resize(std::size_t{max_cutoff} + 2);
  for (std::size_t n = 0; n < sqrt_table_.size(); ++n) {
    sqrt_table_[n] = std::sqrt(static_cast<double>(n));
  }
  for (std::size_t k = 0; k < modes; ++k) {
    const double m = truncation_.cutoff(k);
    const double a = std::abs(alphas_[k]);
    initial_bound_ += m + a * a + 2.0 * a * std::sqrt(m);
  }
  gamma_bound_ =
      2.0 * std::abs(gamma_) *
      std::sqrt(static_cast<double>(truncation_.cutoff(HamiltonianSpec::kSymmetryMode)));
  problem_bound_ = static_cast<double>(max_diag) + gamma_bound_;
}

void HamiltonianOperator::check(std::span<const Complex> in,
                                std::span<Complex> out) const {
  if (in.size() != dimension() || out.size() != dimension()) {
    throw DomainError("state dimension does not match the operator");
  }
}

void HamiltonianOperator::apply_initial(std::span<const Complex> in,
                                        std::span<Complex> out) const {
  check(in, out);
  const std::size_t dim = dimension();
  for (std::size_t i = 0; i < dim; ++i) out[i] = initial_diag_[i] * in[i];
  // Off-diagonal part of sum_k (a_k^dagger - conj(alpha_k))(a_k - alpha_k):
  // -alpha_k a_k^dagger - conj(alpha_k) a_k.
  for (std::size_t k = 0; k < truncation_.modes(); ++k) {
    const Complex alpha = alphas_[k];
    for_each_raising_pair(k, [&](std::size_t lo, std::size_t hi, double r) {
      // <n+1| a^dagger |n> = <n| a |n+1> = sqrt(n+1).
      out[hi] -= alpha * r * in[lo];
      out[lo] -= std::conj(alpha) * r * in[hi];
    });
  }
}

void HamiltonianOperator::add_symmetry_breaking(double scale,
                                                std::span<const Complex> in,
                                                std::span<Complex> out) const {
  if (gamma_ == Complex{} || scale == 0.0) return;
  const Complex g = scale * gamma_;
  for_each_raising_pair(HamiltonianSpec::kSymmetryMode,
                        [&](std::size_t lo, std::size_t hi, double r) {
                          out[hi] += g * r * in[lo];
                          out[lo] += std::conj(g) * r * in[hi];
                        });
}

void HamiltonianOperator::apply_problem(std::span<const Complex> in,
                                        std::span<Complex> out) const {
  check(in, out);
  for (std::size_t i = 0; i < dimension(); ++i) out[i] = diag_[i] * in[i];
  add_symmetry_breaking(1.0, in, out);
}

void HamiltonianOperator::apply(double s, std::span<const Complex> in,
                                std::span<Complex> out) const {
  apply_without_problem_diagonal(s, in, out);
  for (std::size_t i = 0; i < dimension(); ++i) out[i] += s * diag_[i] * in[i];
}

void HamiltonianOperator::apply_without_problem_diagonal(
    double s, std::span<const Complex> in, std::span<Complex> out) const {
  apply_initial(in, out);
  const double w = 1.0 - s;
  for (auto& x : out) x *= w;
  add_symmetry_breaking(s, in, out);
}

namespace {

void require_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("interpolation parameter s must lie in [0, 1]");
  }
}

template <typename Fn>
StateVector apply_to(const HamiltonianSpec& spec, const StateVector& state, Fn fn) {
  HamiltonianOperator op(spec, state.truncation());
  StateVector out(state.truncation(), std::vector<Complex>(state.dimension()),
                  state.norm_defect());
  fn(op, state.amplitudes(), out.amplitudes());
  return out;
}

}  // namespace

StateVector apply_hp(const HamiltonianSpec& spec, const StateVector& state) {
  return apply_to(spec, state, [](const HamiltonianOperator& op, auto in, auto out) {
    op.apply_problem(in, out);
  });
}

StateVector apply_hi(const HamiltonianSpec& spec, const StateVector& state) {
  return apply_to(spec, state, [](const HamiltonianOperator& op, auto in, auto out) {
    op.apply_initial(in, out);
  });
}

StateVector apply_interpolated(const HamiltonianSpec& spec, double s,
                               const StateVector& state) {
  require_s(s);
  return apply_to(spec, state, [s](const HamiltonianOperator& op, auto in, auto out) {
    op.apply(s, in, out);
  });
}

double noncommutation_witness(const HamiltonianSpec& spec, const Truncation& truncation,
                              std::size_t dim_cap) {
  const std::size_t dim = truncation.dimension();
  if (dim > dim_cap) {
    throw CapacityError("commutator scan limited to dimension " +
                        std::to_string(dim_cap));
  }
  HamiltonianOperator op(spec, truncation);
  std::vector<Complex> e(dim), hi_e(dim), hp_e(dim), a(dim), b(dim);
  double worst = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    std::fill(e.begin(), e.end(), Complex{});
    e[j] = 1.0;
    op.apply_initial(e, hi_e);
    op.apply_problem(e, hp_e);
    op.apply_problem(hi_e, a);  // H_P H_I e_j
    op.apply_initial(hp_e, b);  // H_I H_P e_j
    for (std::size_t i = 0; i < dim; ++i) worst = std::max(worst, std::abs(b[i] - a[i]));
  }
  return worst;
}

}  // namespace qadio
