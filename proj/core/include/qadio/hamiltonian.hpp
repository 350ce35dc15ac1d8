#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qadio/fock.hpp"
#include "qadio/polynomial.hpp"

namespace qadio {

/// Problem polynomial, coherent displacements and the optional
/// symmetry-breaking strength gamma, which acts on mode 1 as
/// gamma a^dagger + conj(gamma) a.
class HamiltonianSpec {
 public:
  static constexpr std::size_t kSymmetryMode = 0;
  static constexpr double kMaxGamma = 1.0;

  HamiltonianSpec(Polynomial polynomial, CoherentParams params,
                  Complex gamma = {});

  const Polynomial& polynomial() const { return poly_; }
  const CoherentParams& params() const { return params_; }
  Complex gamma() const { return gamma_; }
  std::size_t modes() const { return params_.modes(); }

 private:
  Polynomial poly_;
  CoherentParams params_;
  Complex gamma_;
};

/// (D(n))^2, exact.
std::uint64_t hp_eigenvalue(const Polynomial& poly, const FockIndex& index);

/// Matrix-free H_I, H_P and their interpolation on one fixed truncation.
/// The H_P diagonal is evaluated in exact integers once, at construction.
/// All apply_* calls overwrite `out`, which must not alias `in`.
class HamiltonianOperator {
 public:
  HamiltonianOperator(const HamiltonianSpec& spec, Truncation truncation);

  const Truncation& truncation() const { return truncation_; }
  std::size_t dimension() const { return truncation_.dimension(); }
  std::span<const double> problem_diagonal() const { return diag_; }

  void apply_initial(std::span<const Complex> in, std::span<Complex> out) const;
  void apply_problem(std::span<const Complex> in, std::span<Complex> out) const;
  /// (1 - s) H_I + s H_P.
  void apply(double s, std::span<const Complex> in, std::span<Complex> out) const;
  /// Interpolated Hamiltonian minus its diagonal H_P part:
  /// (1 - s) H_I + s (gamma a^dagger + conj(gamma) a).
  void apply_without_problem_diagonal(double s, std::span<const Complex> in,
                                      std::span<Complex> out) const;

  /// Gershgorin bounds on the spectral radius of H_I and of H_P.
  double initial_bound() const { return initial_bound_; }
  double problem_bound() const { return problem_bound_; }
  double symmetry_breaking_bound() const { return gamma_bound_; }

 private:
  // out += scale * (gamma a^dagger + conj(gamma) a) in, on kSymmetryMode.
  void add_symmetry_breaking(double scale, std::span<const Complex> in,
                             std::span<Complex> out) const;
  void check(std::span<const Complex> in, std::span<Complex> out) const;

  // Calls fn(lo, hi, sqrt(n+1)) for every flat pair (|..n..>, |..n+1..>) of
  // mode k, walking the row-major blocks without per-element division.
  template <typename Fn>
  void for_each_raising_pair(std::size_t k, Fn&& fn) const {
    const std::size_t stride = truncation_.stride(k);
    const std::size_t levels = std::size_t{truncation_.cutoff(k)} + 1;
    const std::size_t block = stride * levels;
    const std::size_t dim = truncation_.dimension();
    for (std::size_t base = 0; base < dim; base += block) {
      for (std::size_t n = 0; n + 1 < levels; ++n) {
        const double r = sqrt_table_[n + 1];
        const std::size_t lo0 = base + n * stride;
        for (std::size_t j = 0; j < stride; ++j) fn(lo0 + j, lo0 + j + stride, r);
      }
    }
  }

  Truncation truncation_;
  std::vector<Complex> alphas_;
  Complex gamma_;
  std::vector<double> diag_;
  std::vector<double> initial_diag_;
  std::vector<double> sqrt_table_;
  double initial_bound_ = 0.0;
  double problem_bound_ = 0.0;
  double gamma_bound_ = 0.0;
};

StateVector apply_hp(const HamiltonianSpec& spec, const StateVector& state);
StateVector apply_hi(const HamiltonianSpec& spec, const StateVector& state);
/// (1 - s) H_I + s H_P with s in [0, 1].
StateVector apply_interpolated(const HamiltonianSpec& spec, double s,
                               const StateVector& state);

/// Largest |entry| of H_I H_P - H_P H_I on `truncation`. Zero iff the two
/// commute there. Dimension is limited to `dim_cap`.
double noncommutation_witness(const HamiltonianSpec& spec, const Truncation& truncation,
                              std::size_t dim_cap = 2000);

}  // namespace qadio
