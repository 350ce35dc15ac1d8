#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qadio/error.hpp"
#include "qadio/hamiltonian.hpp"
#include "qadio/oracle.hpp"
#include "qadio/polynomial.hpp"

using namespace qadio;

namespace {

StateVector random_state(const Truncation& t, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n;
  StateVector s(t);
  for (auto& a : s.amplitudes()) a = {n(gen), n(gen)};
  return s;
}

double max_diff(const StateVector& a, const StateVector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

HamiltonianSpec spec_for(const char* text, Complex alpha = 2.0, Complex gamma = {}) {
  const Polynomial p = parse_polynomial(text);
  return HamiltonianSpec(p, CoherentParams::uniform(p.num_variables(), alpha), gamma);
}

}  // namespace

TEST(Spec, Validation) {
  const Polynomial p = parse_polynomial("x*y");
  EXPECT_THROW(HamiltonianSpec(p, CoherentParams::uniform(1, 2.0)), DomainError);
  EXPECT_THROW(HamiltonianSpec(parse_polynomial("x"), CoherentParams::uniform(1, 2.0), 2.0),
               DomainError);
}

TEST(ProblemHamiltonian, Eigenvalues) {
  EXPECT_EQ(hp_eigenvalue(parse_polynomial("x + 20"), FockIndex{{0}}), 400u);
  EXPECT_EQ(hp_eigenvalue(parse_polynomial("x - 20"), FockIndex{{20}}), 0u);
  EXPECT_EQ(hp_eigenvalue(parse_polynomial("x*y + x + 4*y - 11"), FockIndex{{3, 1}}), 1u);
}

TEST(ProblemHamiltonian, ActsDiagonally) {
  const HamiltonianSpec minus = spec_for("x - 20");
  const Truncation t({24});
  EXPECT_EQ(apply_hp(minus, StateVector::basis(t, FockIndex{{20}})).norm_squared(), 0.0);

  const HamiltonianSpec plus = spec_for("x + 20");
  const StateVector h0 = apply_hp(plus, StateVector::basis(Truncation({8}), FockIndex{{0}}));
  EXPECT_EQ(h0[0], Complex(400.0));
  EXPECT_NEAR(h0.norm_squared(), 160000.0, 1e-9);

  const StateVector psi = random_state(t, 3);
  const StateVector out = apply_hp(minus, psi);
  for (std::size_t n = 0; n < t.dimension(); ++n) {
    const double d = static_cast<double>(n) - 20.0;
    EXPECT_EQ(out[n], d * d * psi[n]);
  }
  EXPECT_EQ(out[19], psi[19]);
  EXPECT_EQ(out[20], Complex(0.0));
}

TEST(InitialHamiltonian, HandExpansionOnVacuum) {
  const HamiltonianSpec spec = spec_for("x - 20");
  const StateVector out = apply_hi(spec, StateVector::basis(Truncation({5}), FockIndex{{0}}));
  EXPECT_NEAR(std::abs(out[0] - 4.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(out[1] + 2.0), 0.0, 1e-14);
  for (std::size_t n = 2; n < out.dimension(); ++n) EXPECT_EQ(out[n], Complex(0.0));
}

TEST(InitialHamiltonian, CoherentStateResidualShrinksWithCutoff) {
  const HamiltonianSpec spec = spec_for("x - 20");
  double prev = 1e9;
  for (std::uint32_t m : {8u, 12u, 16u, 20u, 28u}) {
    const std::vector<std::uint32_t> cut{m};
    const StateVector psi = product_coherent_state(spec.params(), 1e-3, cut);
    const double r = apply_hi(spec, psi).norm();
    // (a - alpha) leaves -alpha c_m |m>, and (a^dagger - conj(alpha)) maps that
    // to |alpha|^2 c_m |m> once the creation out of the top level is dropped.
    EXPECT_NEAR(r, 4.0 * std::abs(psi[m]), 1e-12);
    EXPECT_LT(r, prev);
    prev = r;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(Interpolated, Endpoints) {
  const HamiltonianSpec spec = spec_for("x*y + x + 4*y - 11");
  const Truncation t({5, 4});
  const StateVector psi = random_state(t, 9);
  EXPECT_EQ(max_diff(apply_interpolated(spec, 0.0, psi), apply_hi(spec, psi)), 0.0);
  EXPECT_EQ(max_diff(apply_interpolated(spec, 1.0, psi), apply_hp(spec, psi)), 0.0);
  const StateVector hi = apply_hi(spec, psi);
  const StateVector hp = apply_hp(spec, psi);
  const StateVector mid = apply_interpolated(spec, 0.5, psi);
  for (std::size_t i = 0; i < t.dimension(); ++i) {
    const Complex avg = 0.5 * (hi[i] + hp[i]);
    EXPECT_LE(std::abs(mid[i] - avg), 1e-12 * std::max(1.0, std::abs(avg)));
  }
  EXPECT_THROW(apply_interpolated(spec, 1.5, psi), DomainError);
}

TEST(Interpolated, MatrixFreeMatchesAssembled) {
  const Complex gammas[] = {Complex{}, Complex(1e-2, 3e-3)};
  for (const Complex gamma : gammas) {
    const HamiltonianSpec spec = spec_for("x*y + x + 4*y - 11", Complex(2.0, 0.5), gamma);
    const Truncation t({6, 7});
    const StateVector psi = random_state(t, 5);
    for (double s : {0.0, 0.3, 0.7, 1.0}) {
      const DenseMatrix m = assemble_interpolated(spec, s, t);
      const std::vector<Complex> dense = m.multiply(psi.amplitudes());
      const StateVector free = apply_interpolated(spec, s, psi);
      for (std::size_t i = 0; i < t.dimension(); ++i) {
        EXPECT_LE(std::abs(free[i] - dense[i]), 1e-10 * std::max(1.0, std::abs(dense[i])));
      }
    }
  }
}

TEST(Interpolated, HermitianAndPositive) {
  const HamiltonianSpec spec = spec_for("x^2 - 3*y + 1", Complex(1.5, -0.7), Complex(0.01));
  const Truncation t({5, 5});
  for (double s : {0.0, 0.25, 0.5, 0.9, 1.0}) {
    const DenseMatrix m = assemble_interpolated(spec, s, t);
    for (std::size_t i = 0; i < m.dim; ++i) {
      for (std::size_t j = 0; j < m.dim; ++j) {
        EXPECT_LE(std::abs(m(i, j) - std::conj(m(j, i))), 1e-10);
      }
    }
  }
  // Without the symmetry-breaking term both parts are positive semidefinite.
  const HamiltonianSpec plain = spec_for("x^2 - 3*y + 1", Complex(1.5, -0.7));
  for (double s : {0.0, 0.5, 1.0}) {
    const StateVector psi = random_state(t, 17);
    const StateVector h = apply_interpolated(plain, s, psi);
    const Complex e = inner_product(psi, h);
    EXPECT_GE(e.real(), -1e-10);
    EXPECT_NEAR(e.imag(), 0.0, 1e-9 * std::abs(e));
    EXPECT_GE(dense_spectrum(plain, s, t, 1).front(), -1e-10);
  }
}

TEST(Interpolated, ExpectationIsRealForRandomStates) {
  const HamiltonianSpec spec = spec_for("x*y + x + 4*y - 11", Complex(2.0), Complex(0.0, 0.3));
  const Truncation t({9, 9});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const StateVector psi = random_state(t, seed);
    const Complex e = inner_product(psi, apply_interpolated(spec, 0.37, psi));
    EXPECT_LE(std::abs(e.imag()), 1e-10 * std::abs(e));
  }
}

TEST(Operator, GershgorinBoundsDominateSpectrum) {
  const HamiltonianSpec spec = spec_for("x*y + x + 4*y - 11", Complex(2.0), Complex(0.1));
  const Truncation t({5, 5});
  const HamiltonianOperator op(spec, t);
  const double top_initial = dense_spectrum(spec, 0.0, t, t.dimension()).back();
  EXPECT_LE(top_initial, op.initial_bound());
  const double top_problem = dense_spectrum(spec, 1.0, t, t.dimension()).back();
  EXPECT_LE(top_problem, op.problem_bound());
  EXPECT_GT(op.symmetry_breaking_bound(), 0.0);
}

TEST(Commutation, Witness) {
  EXPECT_GT(noncommutation_witness(spec_for("x - 20"), Truncation({25})), 0.0);
  EXPECT_EQ(noncommutation_witness(spec_for("0*x + 5"), Truncation({10})), 0.0);
  EXPECT_GT(noncommutation_witness(spec_for("x - 20", 2.0, 1e-3), Truncation({25})), 0.0);
}
