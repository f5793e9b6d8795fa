#pragma once

#include <optional>
#include <vector>

#include "csrap/solvers.hpp"

namespace csrap::detail {

/// Indices into scenario.cameras ordered by camera id.
std::vector<std::size_t> cameras_by_id(const Scenario& scenario);

struct RelocationOutcome {
  std::vector<CandidateAllocation> fixed;  // in fixing order
  std::vector<TraceEntry> trace;
  std::optional<int> failed_camera;
};

/// RB relocation over tentative allocations that may overlap. Each round fixes
/// the unadjusted camera with the smallest run (moving it too if it collides
/// with an already fixed run), then moves every unadjusted camera overlapping
/// it to its cheapest candidate that fits around the fixed runs.
RelocationOutcome relocate(std::span<const CandidateAllocation> tentative,
                           const Scenario& scenario, const CandidateTable& table);

GreedyResult greedy(const Scenario& scenario, const CandidateTable& table);
SolverResult relocate_greedy(const GreedyResult& greedy, const Scenario& scenario,
                             const CandidateTable& table);

}  // namespace csrap::detail
