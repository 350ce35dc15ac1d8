#include "qadio/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qadio/error.hpp"

namespace qadio {

MinimumResult brute_force_minimum(const Polynomial& poly, std::uint32_t bound,
                                  std::uint64_t budget) {
  const std::vector<std::uint32_t> bounds(poly.num_variables(), bound);
  return brute_force_minimum(poly, bounds, budget);
}

MinimumResult brute_force_minimum(const Polynomial& poly,
                                  std::span<const std::uint32_t> bounds,
                                  std::uint64_t budget) {
  const std::size_t k = poly.num_variables();
  if (bounds.size() != k) throw DomainError("box arity does not match the polynomial");
  std::uint64_t count = 1;
  for (auto b : bounds) {
    const std::uint64_t levels = std::uint64_t{b} + 1;
    if (count > budget / levels) {
      throw CapacityError("box scan exceeds the budget of " + std::to_string(budget));
    }
    count *= levels;
  }
  MinimumResult best{std::numeric_limits<std::uint64_t>::max(), {}};
  std::vector<std::uint32_t> point(k, 0);
  for (std::uint64_t visited = 0; visited < count; ++visited) {
    const std::uint64_t v = poly.squared(point);
    if (v < best.min_value) {
      best.min_value = v;
      best.argmins.clear();
    }
    if (v == best.min_value) best.argmins.push_back(FockIndex{point});
    // Odometer with the last variable fastest.
    for (std::size_t d = k; d-- > 0;) {
      if (point[d] < bounds[d]) {
        ++point[d];
        break;
      }
      point[d] = 0;
    }
  }
  std::sort(best.argmins.begin(), best.argmins.end(), graded_lex_less);
  return best;
}

namespace {

// Advances to the next tuple with the same sum in lexicographic order.
bool next_in_shell(std::vector<std::uint32_t>& p) {
  const std::size_t k = p.size();
  if (k < 2) return false;
  // Find the rightmost position i < k-1 such that some mass lies to its right.
  std::uint64_t tail = p[k - 1];
  for (std::size_t i = k - 1; i-- > 0;) {
    if (tail > 0) {
      ++p[i];
      for (std::size_t j = i + 1; j < k; ++j) p[j] = 0;
      p[k - 1] = static_cast<std::uint32_t>(tail - 1);
      return true;
    }
    tail += p[i];
  }
  return false;
}

}  // namespace

std::optional<FockIndex> semi_decide_search(const Polynomial& poly, std::uint64_t budget) {
  const std::size_t k = poly.num_variables();
  std::uint64_t evaluations = 0;
  for (std::uint32_t shell = 0;; ++shell) {
    std::vector<std::uint32_t> p(k, 0);
    p[k - 1] = shell;
    do {
      if (evaluations++ >= budget) return std::nullopt;
      if (poly.evaluate(p) == 0) return FockIndex{p};
    } while (next_in_shell(p));
    if (shell == std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
  }
}

std::vector<Complex> DenseMatrix::multiply(std::span<const Complex> v) const {
  if (v.size() != dim) throw DomainError("vector size does not match the matrix");
  std::vector<Complex> out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < dim; ++j) acc += data[i * dim + j] * v[j];
    out[i] = acc;
  }
  return out;
}

DenseMatrix assemble_interpolated(const HamiltonianSpec& spec, double s,
                                  const Truncation& truncation) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("s must lie in [0, 1]");
  if (truncation.modes() != spec.modes()) {
    throw DomainError("truncation arity does not match the Hamiltonian");
  }
  const std::size_t dim = truncation.dimension();
  if (dim > kDenseDimCap) {
    throw CapacityError("dense assembly limited to dimension " +
                        std::to_string(kDenseDimCap));
  }
  DenseMatrix h{dim, std::vector<Complex>(dim * dim)};
  const auto& alphas = spec.params().alphas();
  for (std::size_t col = 0; col < dim; ++col) {
    const FockIndex n = truncation.index_at(col);
    double number = 0.0;
    double shift = 0.0;
    for (std::size_t k = 0; k < n.modes(); ++k) {
      number += n[k];
      shift += std::norm(alphas[k]);
    }
    const double problem = static_cast<double>(hp_eigenvalue(spec.polynomial(), n));
    h(col, col) += (1.0 - s) * (number + shift) + s * problem;
    for (std::size_t k = 0; k < n.modes(); ++k) {
      if (n[k] < truncation.cutoff(k)) {
        FockIndex up = n;
        ++up.occupations[k];
        const std::size_t row = truncation.flat(up);
        const double amp = std::sqrt(static_cast<double>(n[k]) + 1.0);
        // <n+1| -alpha a^dagger |n> and its Hermitian partner.
        h(row, col) += (1.0 - s) * (-alphas[k] * amp);
        h(col, row) += (1.0 - s) * (-std::conj(alphas[k]) * amp);
        if (k == HamiltonianSpec::kSymmetryMode) {
          h(row, col) += s * spec.gamma() * amp;
          h(col, row) += s * std::conj(spec.gamma()) * amp;
        }
      }
    }
  }
  return h;
}

namespace {

bool is_diagonal(const DenseMatrix& h) {
  for (std::size_t i = 0; i < h.dim; ++i) {
    if (h(i, i).imag() != 0.0) return false;
    for (std::size_t j = 0; j < h.dim; ++j) {
      if (i != j && h(i, j) != Complex{}) return false;
    }
  }
  return true;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solve(const DenseMatrix& h,
                                                      bool vectors) {
  Eigen::MatrixXcd m(h.dim, h.dim);
  for (std::size_t i = 0; i < h.dim; ++i) {
    for (std::size_t j = 0; j < h.dim; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = h(i, j);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("dense Hermitian eigensolve did not converge");
  }
  return solver;
}

}  // namespace

std::vector<double> dense_spectrum(const HamiltonianSpec& spec, double s,
                                   const Truncation& truncation, std::size_t k) {
  const DenseMatrix h = assemble_interpolated(spec, s, truncation);
  // The solver rescales by the largest entry, which can cost an ulp on an
  // integer diagonal; a diagonal matrix is read off directly instead.
  if (is_diagonal(h)) {
    std::vector<double> diag(h.dim);
    for (std::size_t i = 0; i < h.dim; ++i) diag[i] = h(i, i).real();
    std::sort(diag.begin(), diag.end());
    diag.resize(std::min(k, diag.size()));
    return diag;
  }
  const auto solver = solve(h, false);
  const auto& ev = solver.eigenvalues();
  const std::size_t n = std::min<std::size_t>(k, static_cast<std::size_t>(ev.size()));
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = ev(static_cast<Eigen::Index>(i));
  return out;
}

StateVector exact_step(const HamiltonianSpec& spec, const StateVector& state, double s,
                       double dt) {
  const auto solver = solve(assemble_interpolated(spec, s, state.truncation()), true);
  const auto& v = solver.eigenvectors();
  const auto& w = solver.eigenvalues();
  const auto dim = static_cast<Eigen::Index>(state.dimension());
  Eigen::VectorXcd psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) psi(i) = state[static_cast<std::size_t>(i)];
  Eigen::VectorXcd coeff = v.adjoint() * psi;
  for (Eigen::Index i = 0; i < dim; ++i) {
    coeff(i) *= std::exp(Complex(0.0, -w(i) * dt));
  }
  const Eigen::VectorXcd next = v * coeff;
  std::vector<Complex> amps(state.dimension());
  for (Eigen::Index i = 0; i < dim; ++i) amps[static_cast<std::size_t>(i)] = next(i);
  return StateVector(state.truncation(), std::move(amps), state.norm_defect());
}

GapProfile gap_profile(const HamiltonianSpec& spec, const Truncation& truncation,
                       std::size_t grid_points) {
  if (grid_points < 2) throw DomainError("gap profile needs at least two grid points");
  if (truncation.dimension() < 2) throw DomainError("gap needs at least two levels");
  GapProfile out;
  out.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(grid_points - 1);
    const auto ev = dense_spectrum(spec, s, truncation, 2);
    const double gap = ev[1] - ev[0];
    out.s.push_back(s);
    out.gaps.push_back(gap);
    if (gap < out.min_gap) {
      out.min_gap = gap;
      out.s_at_min = s;
    }
  }
  return out;
}

}  // namespace qadio
