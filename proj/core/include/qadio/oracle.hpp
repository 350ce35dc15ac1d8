#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qadio/fock.hpp"
#include "qadio/hamiltonian.hpp"
#include "qadio/polynomial.hpp"

namespace qadio {

/// Classical ground truth: exhaustive minimization of D^2, a semi-decision
/// zero search, and dense spectra of the interpolated Hamiltonian on small
/// truncations. Independent of the matrix-free path.

struct MinimumResult {
  std::uint64_t min_value = 0;
  /// All minimizers in graded_lex_less order.
  std::vector<FockIndex> argmins;
};

inline constexpr std::uint64_t kDefaultScanBudget = 50'000'000;

/// Minimum of D(n)^2 over the box [0, bound]^K.
MinimumResult brute_force_minimum(const Polynomial& poly, std::uint32_t bound,
                                  std::uint64_t budget = kDefaultScanBudget);
/// Same over the box prod_k [0, bounds[k]].
MinimumResult brute_force_minimum(const Polynomial& poly,
                                  std::span<const std::uint32_t> bounds,
                                  std::uint64_t budget = kDefaultScanBudget);

/// First zero in graded order (total occupation 0, 1, 2, ..., lexicographic
/// within a shell), or nothing within `budget` evaluations.
std::optional<FockIndex> semi_decide_search(const Polynomial& poly, std::uint64_t budget);

inline constexpr std::size_t kDenseDimCap = 2000;

/// Row-major dense Hermitian matrix.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<Complex> data;

  Complex operator()(std::size_t i, std::size_t j) const { return data[i * dim + j]; }
  Complex& operator()(std::size_t i, std::size_t j) { return data[i * dim + j]; }
  std::vector<Complex> multiply(std::span<const Complex> v) const;
};

/// Matrix of (1 - s) H_I + s H_P (including the symmetry-breaking term) built
/// entry by entry from the ladder matrix elements.
DenseMatrix assemble_interpolated(const HamiltonianSpec& spec, double s,
                                  const Truncation& truncation);

/// Lowest k eigenvalues of the assembled matrix, ascending.
std::vector<double> dense_spectrum(const HamiltonianSpec& spec, double s,
                                   const Truncation& truncation, std::size_t k);

/// exp(-i h(s) dt) psi through a dense eigendecomposition.
StateVector exact_step(const HamiltonianSpec& spec, const StateVector& state, double s,
                       double dt);

struct GapProfile {
  double min_gap = 0.0;
  double s_at_min = 0.0;
  std::vector<double> s;
  std::vector<double> gaps;
};

/// eps_1(s) - eps_0(s) on `grid_points` equally spaced s in [0, 1].
GapProfile gap_profile(const HamiltonianSpec& spec, const Truncation& truncation,
                       std::size_t grid_points);

}  // namespace qadio
