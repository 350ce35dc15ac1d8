#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "qadio/decision.hpp"
#include "qadio/evolution.hpp"
#include "qadio/oracle.hpp"

namespace qadio::io {

/// Locale-independent, 12 significant digits, shortest of fixed/scientific.
std::string format_number(double value);

inline constexpr const char* kTrajectoryHeader =
    "time,rank,index,probability,norm_defect,dimension";

/// One row per (record, rank); rank starts at 1. Rows are sorted by time, then
/// rank. Records with equal times keep their input order.
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRecord> records);

/// Key-sorted JSON documents. Non-finite numbers are written as null.
std::string decision_report_json(const DecisionReport& report);
/// Step-size convergence details of an evolve run, when one was requested.
struct ConvergenceInfo {
  bool converged = false;
  double err_est = 0.0;
  double dt_used = 0.0;
  std::size_t halvings = 0;
};

std::string evolution_report_json(const HamiltonianSpec& spec, const EvolutionConfig& config,
                                  const EvolutionResult& result,
                                  const std::optional<ConvergenceInfo>& convergence = {});
std::string oracle_report_json(const Polynomial& poly, std::uint32_t bound,
                               const MinimumResult& minimum, std::uint64_t search_budget,
                               const std::optional<FockIndex>& zero);
std::string gap_report_json(const HamiltonianSpec& spec, const Truncation& truncation,
                            const GapProfile& profile);

}  // namespace qadio::io
