#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qadio/error.hpp"
#include "qadio/hamiltonian.hpp"
#include "qadio/oracle.hpp"
#include "qadio/polynomial.hpp"

using namespace qadio;

namespace {

HamiltonianSpec spec_for(const char* text, Complex gamma = {}) {
  const Polynomial p = parse_polynomial(text);
  return HamiltonianSpec(p, CoherentParams::uniform(p.num_variables(), 2.0), gamma);
}

}  // namespace

TEST(BruteForce, Examples) {
  const MinimumResult minus = brute_force_minimum(parse_polynomial("x - 20"), 30);
  EXPECT_EQ(minus.min_value, 0u);
  EXPECT_EQ(minus.argmins, std::vector<FockIndex>{FockIndex{{20}}});

  const MinimumResult plus = brute_force_minimum(parse_polynomial("x + 20"), 30);
  EXPECT_EQ(plus.min_value, 400u);
  EXPECT_EQ(plus.argmins, std::vector<FockIndex>{FockIndex{{0}}});

  const MinimumResult xy = brute_force_minimum(parse_polynomial("x*y + x + 4*y - 11"), 9);
  EXPECT_EQ(xy.min_value, 0u);
  EXPECT_EQ(xy.argmins, std::vector<FockIndex>{(FockIndex{{1, 2}})});
}

TEST(BruteForce, AllMinimizersInGradedOrder) {
  const MinimumResult r = brute_force_minimum(parse_polynomial("x*y - 4"), 10);
  EXPECT_EQ(r.min_value, 0u);
  const std::vector<FockIndex> want{FockIndex{{2, 2}}, FockIndex{{1, 4}}, FockIndex{{4, 1}}};
  EXPECT_EQ(r.argmins, want);
  const std::vector<std::uint32_t> bounds{3, 10};
  EXPECT_EQ(brute_force_minimum(parse_polynomial("x*y - 4"), bounds).argmins.size(), 2u);
}

TEST(BruteForce, Budget) {
  EXPECT_THROW(brute_force_minimum(parse_polynomial("x*y*z"), 100, 1000), CapacityError);
}

TEST(SemiDecide, Examples) {
  EXPECT_EQ(semi_decide_search(parse_polynomial("x - 20"), 100), FockIndex{{20}});
  EXPECT_FALSE(semi_decide_search(parse_polynomial("x + 20"), 10000).has_value());
  const Polynomial xy = parse_polynomial("x*y + x + 4*y - 11");
  const auto zero = semi_decide_search(xy, 100000);
  ASSERT_TRUE(zero.has_value());
  EXPECT_EQ(xy.evaluate(zero->occupations), 0);
  EXPECT_FALSE(semi_decide_search(parse_polynomial("x - 20"), 20).has_value());
}

TEST(SemiDecide, EnumeratesShellsInOrder) {
  // x + y - 3 has zeros (0,3),(1,2),(2,1),(3,0); the first is lex-smallest.
  EXPECT_EQ(semi_decide_search(parse_polynomial("x + y - 3"), 1000), (FockIndex{{0, 3}}));
  EXPECT_EQ(semi_decide_search(parse_polynomial("x*y - 1"), 1000), (FockIndex{{1, 1}}));
}

TEST(Dense, ProblemSpectrumIsSortedSquares) {
  const HamiltonianSpec spec = spec_for("x*y + x + 4*y - 11");
  const Truncation t({5, 6});
  std::vector<double> want;
  for (std::size_t i = 0; i < t.dimension(); ++i) {
    want.push_back(static_cast<double>(hp_eigenvalue(spec.polynomial(), t.index_at(i))));
  }
  std::sort(want.begin(), want.end());
  const std::vector<double> got = dense_spectrum(spec, 1.0, t, t.dimension());
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-9 * (1 + want[i]));
}

TEST(Dense, RandomPolynomialsAgreeWithBruteForce) {
  std::mt19937_64 gen(21);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<std::uint32_t> expo(0, 2);
  const Truncation t({6, 6});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Monomial> terms;
    for (int i = 0; i < 4; ++i) terms.push_back({coeff(gen), {expo(gen), expo(gen)}});
    const Polynomial p({"x", "y"}, terms);
    if (p.is_zero()) continue;
    const HamiltonianSpec spec(p, CoherentParams::uniform(2, 2.0));
    const double lowest = dense_spectrum(spec, 1.0, t, 1).front();
    EXPECT_EQ(lowest, static_cast<double>(brute_force_minimum(p, 6).min_value));
  }
}

TEST(Dense, Caps) {
  const HamiltonianSpec spec = spec_for("x*y");
  EXPECT_THROW(assemble_interpolated(spec, 0.5, Truncation({50, 50})), CapacityError);
  EXPECT_TRUE(dense_spectrum(spec, 0.5, Truncation({3, 3}), 0).empty());
  EXPECT_EQ(dense_spectrum(spec, 0.5, Truncation({3, 3}), 100).size(), 16u);
}

TEST(Dense, ExactStepIsUnitary) {
  const HamiltonianSpec spec = spec_for("x - 20");
  const StateVector psi = product_coherent_state(spec.params(), 1e-3);
  const StateVector out = exact_step(spec, psi, 0.3, 0.7);
  EXPECT_NEAR(out.norm(), 1.0, 1e-12);
  const StateVector back = exact_step(spec, out, 0.3, -0.7);
  for (std::size_t i = 0; i < psi.dimension(); ++i) EXPECT_NEAR(std::abs(back[i] - psi[i]), 0.0, 1e-12);
}

TEST(Gap, MinusTwentyMidpoint) {
  const HamiltonianSpec spec = spec_for("x - 20");
  const std::vector<double> low = dense_spectrum(spec, 0.5, Truncation({30}), 2);
  EXPECT_GT(low[1] - low[0], 0.1);
}

TEST(Gap, MinusTwentyProfileStaysOpen) {
  const GapProfile g = gap_profile(spec_for("x - 20"), Truncation({30}), 101);
  ASSERT_EQ(g.s.size(), 101u);
  ASSERT_EQ(g.gaps.size(), 101u);
  EXPECT_EQ(g.s.front(), 0.0);
  EXPECT_EQ(g.s.back(), 1.0);
  EXPECT_GT(g.min_gap, 0.5);
  EXPECT_EQ(g.min_gap, *std::min_element(g.gaps.begin(), g.gaps.end()));
}

TEST(Gap, SymmetryBreakingLiftsDegeneracy) {
  // Constant D = 5: H_P = 25 I is fully degenerate.
  const Truncation t({10});
  const GapProfile plain = gap_profile(spec_for("0*x + 5"), t, 21);
  EXPECT_NEAR(plain.gaps.back(), 0.0, 1e-9);
  EXPECT_LT(plain.gaps[19], plain.gaps[10]);
  const GapProfile broken = gap_profile(spec_for("0*x + 5", Complex(1e-2)), t, 21);
  EXPECT_GT(broken.gaps.back(), 1e-4);
}
