// Acceptance gate: one PASS/FAIL line per criterion. Exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qadio/decision.hpp"
#include "qadio/evolution.hpp"
#include "qadio/hamiltonian.hpp"
#include "qadio/oracle.hpp"
#include "qadio/polynomial.hpp"

using namespace qadio;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string describe(const DecisionReport& r, double elapsed) {
  std::ostringstream os;
  os << "outcome=" << to_string(r.outcome) << " dominant=" << r.dominant.to_string()
     << " P=" << fmt(r.probability) << " time=" << fmt(elapsed) << "s probes:";
  for (const auto& p : r.probes) {
    os << " " << fmt(p.total_time) << "->" << p.dominant.to_string() << "@" << fmt(p.probability)
       << (p.converged ? "" : "(unconverged)");
  }
  return os.str();
}

// Reports of criteria 1-3, kept whole for the exclusivity check.
std::deque<DecisionReport> g_reports;

const DecisionReport& run_decide(const char* equation, DecisionConfig c) {
  c.keep_trajectories = true;
  g_reports.push_back(decide(parse_polynomial(equation), c));
  return g_reports.back();
}

bool converged_above_half(const ProbeSummary& p, const FockIndex& index) {
  return p.converged && p.dominant == index && p.probability > 0.5;
}

Verdict minus_twenty() {
  const auto start = Clock::now();
  DecisionConfig c;
  c.eps_tilde = 1e-3;
  c.initial_cutoffs = {14};
  c.evolution.growth = GrowthPolicy::adaptive(1e-6);
  const DecisionReport& r = run_decide("x - 20", c);
  const double elapsed = seconds_since(start);
  const FockIndex twenty{{20}};
  const bool ok = r.outcome == Outcome::decided && r.dominant == twenty &&
                  r.diagnostics.converged && r.probability > 0.5 && r.has_solution &&
                  r.witness == twenty && elapsed < 60.0;
  return {ok, describe(r, elapsed)};
}

Verdict xy_equation() {
  const auto start = Clock::now();
  DecisionConfig c;
  c.eps_tilde = 1e-2;
  c.initial_cutoffs = {9, 9};
  c.evolution.growth = GrowthPolicy::fixed();
  c.t0 = 100.0;
  c.rho = 4.0;
  const DecisionReport& r = run_decide("x*y + x + 4*y - 11", c);
  const double elapsed = seconds_since(start);
  const FockIndex ground{{1, 2}};
  const FockIndex a{{4, 1}};
  const FockIndex b{{3, 1}};
  std::size_t first_cross = r.probes.size();
  for (std::size_t i = 0; i < r.probes.size(); ++i) {
    if (converged_above_half(r.probes[i], ground)) {
      first_cross = i;
      break;
    }
  }
  bool earlier_ok = first_cross > 0 && first_cross < r.probes.size();
  for (std::size_t i = 0; i < first_cross && i < r.probes.size(); ++i) {
    earlier_ok = earlier_ok && (r.probes[i].dominant == a || r.probes[i].dominant == b);
  }
  const bool ok = earlier_ok && r.outcome == Outcome::decided && r.has_solution &&
                  r.witness == ground && elapsed < 600.0;
  return {ok, describe(r, elapsed)};
}

Verdict plus_twenty() {
  const auto start = Clock::now();
  DecisionConfig c;
  c.eps_tilde = 1e-2;
  c.initial_cutoffs = {8};
  c.evolution.growth = GrowthPolicy::adaptive(1e-6);
  const DecisionReport& r = run_decide("x + 20", c);
  const double elapsed = seconds_since(start);
  const FockIndex zero{{0}};
  const FockIndex one{{1}};
  std::size_t first_one = r.probes.size();
  std::size_t first_cross = r.probes.size();
  for (std::size_t i = 0; i < r.probes.size(); ++i) {
    if (first_one == r.probes.size() && r.probes[i].converged && r.probes[i].dominant == one) {
      first_one = i;
    }
    if (first_cross == r.probes.size() && converged_above_half(r.probes[i], zero)) {
      first_cross = i;
    }
  }
  const bool ok = first_one < first_cross && first_cross < r.probes.size() &&
                  r.outcome == Outcome::decided && r.dominant == zero && !r.has_solution &&
                  r.ground_energy == std::uint64_t{400} && elapsed < 60.0;
  return {ok, describe(r, elapsed)};
}

Verdict oracle_equivalence() {
  std::mt19937_64 gen(20240601);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> modes(1, 2);
  std::uniform_int_distribution<int> count(1, 6);
  std::uniform_int_distribution<std::uint32_t> expo(0, 2);
  int tested = 0, agreed = 0;
  while (tested < 200) {
    const std::size_t k = static_cast<std::size_t>(modes(gen));
    std::vector<Monomial> terms;
    for (int i = count(gen); i > 0; --i) {
      Monomial m{coeff(gen), std::vector<std::uint32_t>(k)};
      std::uint32_t left = 2;
      for (auto& e : m.exponents) {
        e = std::min(expo(gen), left);
        left -= e;
      }
      terms.push_back(m);
    }
    const std::vector<std::string> names = k == 1 ? std::vector<std::string>{"x"}
                                                  : std::vector<std::string>{"x", "y"};
    const Polynomial p(names, terms);
    if (p.is_zero()) continue;
    ++tested;
    const std::vector<std::uint32_t> box(k, 12);
    const HamiltonianSpec spec(p, CoherentParams::uniform(k, 2.0));
    const double lowest = dense_spectrum(spec, 1.0, Truncation(box), 1).front();
    const MinimumResult truth = brute_force_minimum(p, box);
    if (lowest == static_cast<double>(truth.min_value)) ++agreed;
  }
  return {agreed == tested, std::to_string(agreed) + "/" + std::to_string(tested) + " exact"};
}

Verdict stepper_order() {
  // Fixed truncation, so every dt sees the same operator.
  const Polynomial p = parse_polynomial("x - 2");
  const HamiltonianSpec spec(p, CoherentParams::uniform(1, 2.0));
  const std::vector<std::uint32_t> cut{6};
  const StateVector psi = initial_state(spec, 1e-3, cut);
  const FockIndex target{{2}};
  std::ostringstream os;
  bool ok = true;
  for (const StepperKind kind : {StepperKind::taylor2, StepperKind::split_taylor2}) {
    std::vector<double> probs;
    for (double dt = 0.005; probs.size() < 5; dt /= 2.0) {
      EvolutionConfig c;
      c.total_time = 3.0;
      c.dt = dt;
      c.growth = GrowthPolicy::fixed();
      c.stepper = kind;
      c.stability_budget = std::numeric_limits<double>::infinity();
      probs.push_back(fock_probability(evolve(spec, psi, c).final_state, target));
    }
    os << (kind == StepperKind::taylor2 ? " taylor" : " split") << " ratios";
    for (std::size_t i = 0; i + 2 < probs.size(); ++i) {
      const double ratio = std::abs(probs[i] - probs[i + 1]) / std::abs(probs[i + 1] - probs[i + 2]);
      os << " " << fmt(ratio);
      ok = ok && ratio >= 3.0 && ratio <= 5.0;
    }
  }
  return {ok, os.str()};
}

Verdict no_dominance() {
  constexpr double kTol = 1e-6;
  const double exact_single = std::exp(-4.0) * 256.0 / 24.0;
  const NoDominance one = no_dominance_check(CoherentParams::uniform(1, 2.0), Truncation({40}));
  const NoDominance two =
      no_dominance_check(CoherentParams::uniform(2, 2.0), Truncation({30, 30}));
  const bool ok = one.holds && std::abs(one.max_overlap - 0.1954) < 1e-4 &&
                  std::abs(one.max_overlap - exact_single) < kTol && one.max_overlap < 0.5 &&
                  two.holds && two.max_overlap < 0.25 &&
                  std::abs(two.max_overlap - exact_single * exact_single) < kTol;
  return {ok, "K=1 max=" + fmt(one.max_overlap) + " at " + one.argmax.to_string() +
                  "; K=2 max=" + fmt(two.max_overlap) + " at " + two.argmax.to_string()};
}

Verdict weak_law() {
  const auto start = Clock::now();
  const std::uint64_t n = required_samples(0.05, 0.01);
  int misses = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    if (std::abs(sample_frequency(0.7, n, seed) - 0.7) > 0.05) ++misses;
  }
  const double elapsed = seconds_since(start);
  const double fraction = misses / 1000.0;
  return {n == 10001 && fraction <= 0.01 && elapsed < 10.0,
          "N=" + std::to_string(n) + " fraction=" + fmt(fraction) + " time=" + fmt(elapsed) + "s"};
}

Verdict gap_positivity() {
  const Polynomial p = parse_polynomial("x - 20");
  const HamiltonianSpec spec(p, CoherentParams::uniform(1, 2.0));
  const GapProfile g = gap_profile(spec, Truncation({30}), 101);
  return {g.min_gap > 0.0 && g.gaps.size() == 101,
          "min_gap=" + fmt(g.min_gap) + " at s=" + fmt(g.s_at_min)};
}

Verdict exclusivity() {
  std::size_t rows = 0, violations = 0;
  for (const auto& r : g_reports) {
    for (const auto& probe : r.probes) {
      for (const auto& rec : probe.records) {
        ++rows;
        int above = 0;
        for (const auto& s : rec.top) above += s.probability > 0.5;
        if (above > 1) ++violations;
      }
    }
  }
  return {g_reports.size() == 3 && rows > 0 && violations == 0,
          std::to_string(rows) + " records, " + std::to_string(violations) + " violations"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"x-20 decided with witness 20", minus_twenty},
      {"xy+x+4y-11 crosses at (1,2) after (4,1)/(3,1)", xy_equation},
      {"x+20 |1> then |0>, no solution, E_g=400", plus_twenty},
      {"dense H_P minimum equals brute force", oracle_equivalence},
      {"second-order step-size convergence", stepper_order},
      {"coherent no-dominance bounds", no_dominance},
      {"weak-law sampling emulator", weak_law},
      {"x-20 spectral gap stays open", gap_positivity},
      {"at most one state above 1/2 per record", exclusivity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("criterion %zu: %s  %s | %s\n", i + 1, v.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
