#include "report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>

#include "json.hpp"

namespace qadio::io {
namespace {

using nlohmann::json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json occupations(const FockIndex& idx) { return json(idx.occupations); }

json complex_json(Complex c) { return json::array({number(c.real()), number(c.imag())}); }

json record_json(const TrajectoryRecord& r) {
  json top = json::array();
  for (const auto& t : r.top) {
    top.push_back({{"index", occupations(t.index)}, {"probability", number(t.probability)}});
  }
  return {{"time", number(r.time)},
          {"cutoffs", r.cutoffs},
          {"dimension", r.dimension},
          {"norm_defect", number(r.norm_defect)},
          {"top", top}};
}

std::string growth_name(GrowthKind k) {
  switch (k) {
    case GrowthKind::fixed: return "fixed";
    case GrowthKind::literal_plus_two: return "literal";
    case GrowthKind::adaptive: return "adaptive";
  }
  return "unknown";
}

std::string stepper_name(StepperKind k) {
  return k == StepperKind::taylor2 ? "taylor" : "split";
}

json evolution_config_json(const EvolutionConfig& c) {
  return {{"T", number(c.total_time)},
          {"dt", number(c.dt)},
          {"growth", growth_name(c.growth.kind)},
          {"eta", number(c.growth.eta)},
          {"dim_cap", c.dim_cap},
          {"renormalize_each_step", c.renormalize_each_step},
          {"record_stride", c.record_stride},
          {"top_k", c.top_k},
          {"stepper", stepper_name(c.stepper)},
          {"stability_budget", number(c.stability_budget)}};
}

json alphas_json(const std::vector<Complex>& alphas) {
  json a = json::array();
  for (const auto& x : alphas) a.push_back(complex_json(x));
  return a;
}

json optional_index(const std::optional<FockIndex>& idx) {
  return idx ? occupations(*idx) : json(nullptr);
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRecord> records) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].time < records[b].time;
  });
  out << kTrajectoryHeader << '\n';
  for (std::size_t i : order) {
    const auto& r = records[i];
    for (std::size_t rank = 0; rank < r.top.size(); ++rank) {
      out << format_number(r.time) << ',' << rank + 1 << ',' << r.top[rank].index.to_string()
          << ',' << format_number(r.top[rank].probability) << ','
          << format_number(r.norm_defect) << ',' << r.dimension << '\n';
    }
  }
}

std::string decision_report_json(const DecisionReport& r) {
  json probes = json::array();
  for (const auto& p : r.probes) {
    probes.push_back({{"T", number(p.total_time)},
                      {"probability", number(p.probability)},
                      {"dominant", occupations(p.dominant)},
                      {"err_est", number(p.err_est)},
                      {"dt_used", number(p.dt_used)},
                      {"converged", p.converged},
                      {"dim_cap_hit", p.dim_cap_hit},
                      {"stability_exponent", number(p.stability_exponent)},
                      {"final", p.records.empty() ? json(nullptr) : record_json(p.records.back())}});
  }
  const auto& c = r.config;
  json doc = {
      {"command", "decide"},
      {"equation", r.equation},
      {"variables", r.variables},
      {"outcome", to_string(r.outcome)},
      {"has_solution", r.has_solution},
      {"dominant", occupations(r.dominant)},
      {"probability", number(r.probability)},
      {"T_used", number(r.t_used)},
      {"ground_energy", r.ground_energy ? json(*r.ground_energy) : json(nullptr)},
      {"witness", optional_index(r.witness)},
      {"sampling",
       {{"samples", r.sampling.samples},
        {"frequency", number(r.sampling.frequency)},
        {"epsilon", number(c.epsilon)},
        {"delta", number(c.delta)},
        {"seed", c.seed}}},
      {"diagnostics",
       {{"err_est", number(r.diagnostics.err_est)},
        {"norm_defect", number(r.diagnostics.norm_defect)},
        {"dim_cap_hit", r.diagnostics.dim_cap_hit},
        {"degeneracy", r.diagnostics.degeneracy},
        {"converged", r.diagnostics.converged},
        {"dt_used", number(r.diagnostics.dt_used)},
        {"no_dominance_max", number(r.diagnostics.no_dominance_max)}}},
      {"probes", probes},
      {"config",
       {{"T0", number(c.t0)},
        {"rho", number(c.rho)},
        {"max_probes", c.max_probes},
        {"confirmations", c.confirmations},
        {"alphas", alphas_json(c.alphas)},
        {"gamma", complex_json(c.gamma)},
        {"eps_tilde", number(c.eps_tilde)},
        {"initial_cutoffs", c.initial_cutoffs},
        {"tol", number(c.convergence.tol)},
        {"max_halvings", c.convergence.max_halvings},
        {"evolution", evolution_config_json(c.evolution)}}},
  };
  return doc.dump(2) + "\n";
}

std::string evolution_report_json(const HamiltonianSpec& spec, const EvolutionConfig& config,
                                  const EvolutionResult& result,
                                  const std::optional<ConvergenceInfo>& convergence) {
  const RankedState top = top_components(result.final_state, 1).front();
  json doc = {{"command", "evolve"},
              {"equation", spec.polynomial().to_string()},
              {"variables", spec.polynomial().variable_names()},
              {"alphas", alphas_json(spec.params().alphas())},
              {"gamma", complex_json(spec.gamma())},
              {"dominant", occupations(top.index)},
              {"probability", number(top.probability)},
              {"steps", result.steps},
              {"reached_time", number(result.reached_time)},
              {"dim_cap_hit", result.dim_cap_hit},
              {"unstable", result.unstable},
              {"stability_exponent", number(result.stability_exponent)},
              {"norm_defect", number(result.final_state.norm_defect())},
              {"final_cutoffs", result.final_state.truncation().cutoffs()},
              {"config", evolution_config_json(config)}};
  if (convergence) {
    doc["convergence"] = {{"converged", convergence->converged},
                          {"err_est", number(convergence->err_est)},
                          {"dt_used", number(convergence->dt_used)},
                          {"halvings", convergence->halvings}};
  }
  return doc.dump(2) + "\n";
}

std::string oracle_report_json(const Polynomial& poly, std::uint32_t bound,
                               const MinimumResult& minimum, std::uint64_t search_budget,
                               const std::optional<FockIndex>& zero) {
  json argmins = json::array();
  for (const auto& a : minimum.argmins) argmins.push_back(occupations(a));
  json doc = {{"command", "oracle"},
              {"equation", poly.to_string()},
              {"variables", poly.variable_names()},
              {"bound", bound},
              {"min_value", minimum.min_value},
              {"argmins", argmins},
              {"has_zero_in_box", minimum.min_value == 0},
              {"search_budget", search_budget},
              {"semi_decision_zero", optional_index(zero)}};
  return doc.dump(2) + "\n";
}

std::string gap_report_json(const HamiltonianSpec& spec, const Truncation& truncation,
                            const GapProfile& profile) {
  json grid = json::array();
  for (std::size_t i = 0; i < profile.s.size(); ++i) {
    grid.push_back({{"s", number(profile.s[i])}, {"gap", number(profile.gaps[i])}});
  }
  json doc = {{"command", "gap"},
              {"equation", spec.polynomial().to_string()},
              {"variables", spec.polynomial().variable_names()},
              {"alphas", alphas_json(spec.params().alphas())},
              {"gamma", complex_json(spec.gamma())},
              {"cutoffs", truncation.cutoffs()},
              {"min_gap", number(profile.min_gap)},
              {"s_at_min", number(profile.s_at_min)},
              {"grid", grid}};
  return doc.dump(2) + "\n";
}

}  // namespace qadio::io
