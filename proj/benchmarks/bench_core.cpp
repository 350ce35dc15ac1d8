#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "qadio/evolution.hpp"
#include "qadio/hamiltonian.hpp"
#include "qadio/oracle.hpp"
#include "qadio/polynomial.hpp"

using namespace qadio;

namespace {

HamiltonianSpec two_mode_spec() {
  return HamiltonianSpec(parse_polynomial("x*y + x + 4*y - 11"), CoherentParams::uniform(2, 2.0));
}

Truncation square(std::int64_t cutoff) {
  const auto m = static_cast<std::uint32_t>(cutoff);
  return Truncation({m, m});
}

}  // namespace

static void BM_Apply(benchmark::State& state) {
  const HamiltonianSpec spec = two_mode_spec();
  const HamiltonianOperator op(spec, square(state.range(0)));
  std::vector<Complex> in(op.dimension(), Complex(1.0)), out(op.dimension());
  for (auto _ : state) {
    op.apply(0.5, in, out);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(op.dimension()));
}
BENCHMARK(BM_Apply)->Arg(9)->Arg(20)->Arg(40)->Arg(80);

static void BM_Step(benchmark::State& state) {
  const HamiltonianSpec spec = two_mode_spec();
  const HamiltonianOperator op(spec, square(state.range(0)));
  const auto kind = state.range(1) == 0 ? StepperKind::taylor2 : StepperKind::split_taylor2;
  Stepper stepper(kind);
  StateVector psi = StateVector::basis(op.truncation(), FockIndex{{1, 2}});
  for (auto _ : state) {
    stepper.step(op, psi, 0.5, 1e-4, true);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(op.dimension()));
}
BENCHMARK(BM_Step)->ArgsProduct({{9, 20, 40}, {0, 1}});

static void BM_Evaluate(benchmark::State& state) {
  const Polynomial p = parse_polynomial("x^3*y - 7*x*y^2 + 2*y - 13");
  const std::vector<std::uint32_t> point{11, 17};
  for (auto _ : state) benchmark::DoNotOptimize(p.evaluate(point));
}
BENCHMARK(BM_Evaluate);

static void BM_BruteForce(benchmark::State& state) {
  const Polynomial p = parse_polynomial("x*y + x + 4*y - 11");
  const auto bound = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_minimum(p, bound).min_value);
}
BENCHMARK(BM_BruteForce)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
