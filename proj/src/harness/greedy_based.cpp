#include <set>

#include "csrap/harness.hpp"
#include "csrap/occupancy.hpp"

namespace csrap {

namespace {

// First-fit placement in RB scan order, as the baseline allocator does.
std::optional<CandidateAllocation> first_fit(const CameraNode& cam, const RbOccupancy& occ) {
  const FrameGrid& grid = occ.grid();
  for (int t = 1; t <= grid.num_slots; ++t) {
    for (int m = 1; m <= grid.num_subchannels; ++m) {
      if (!occ.is_free(t, m) || occ.load(t) >= grid.capacity(t) || cam.rate(t, m) <= 0.0)
        continue;
      if (auto run = allocate_contiguous(cam, occ, t, m)) return run;
    }
  }
  return std::nullopt;
}

}  // namespace

SolverResult greedy_based_reference(const Scenario& scenario) {
  const auto table = CandidateTable::build(scenario);
  RbOccupancy occ(scenario.grid);
  CoverageState coverage(scenario.target_ids());
  std::set<int> done;  // scheduled or unplaceable
  std::vector<CandidateAllocation> assignments;
  std::vector<TraceEntry> trace;

  while (!coverage.uncovered.empty()) {
    std::optional<std::size_t> pick;
    double best_rate = 0.0;
    for (std::size_t idx = 0; idx < scenario.cameras.size(); ++idx) {
      const auto& cam = scenario.cameras[idx];
      if (done.contains(cam.id) || coverage.newly_covered(cam) == 0) continue;
      double rate = 0.0;
      for (const auto& a : table.by_camera[idx]) rate = std::max(rate, a.robust_rate);
      if (rate <= 0.0) continue;
      if (!pick || rate > best_rate ||
          (rate == best_rate && cam.id < scenario.cameras[*pick].id)) {
        pick = idx;
        best_rate = rate;
      }
    }
    if (!pick) break;
    const auto& cam = scenario.cameras[*pick];
    done.insert(cam.id);
    if (auto run = first_fit(cam, occ)) {
      occ.place(*run);
      coverage.add(cam);
      assignments.push_back(*run);
      trace.push_back({"greedy_based", cam.id, *run, best_rate});
    }
  }

  SolverResult result;
  result.status = coverage.uncovered.empty() ? SolverStatus::feasible
                                             : SolverStatus::infeasible_coverage;
  result.schedule = Schedule::from_assignments(std::move(assignments), scenario);
  result.diagnostics = std::move(trace);
  return result;
}

}  // namespace csrap
