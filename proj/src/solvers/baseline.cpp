#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "csrap/solvers.hpp"
#include "solver_internal.hpp"

namespace csrap {

std::optional<CandidateAllocation> allocate_contiguous(const CameraNode& camera,
                                                       const RbOccupancy& occupancy,
                                                       int slot, int start) {
  const FrameGrid& grid = occupancy.grid();
  for (int t = slot; t <= grid.num_slots; ++t) {
    int first = t == slot ? start : 1;
    while (first <= grid.num_subchannels && !occupancy.is_free(t, first)) ++first;
    if (first > grid.num_subchannels) continue;

    double run_min = std::numeric_limits<double>::infinity();
    int length = 0;
    for (int m = first; m <= grid.num_subchannels; ++m) {
      if (!occupancy.is_free(t, m)) break;
      if (occupancy.load(t) + length + 1 > grid.capacity(t)) break;
      const double r = camera.rate(t, m);
      if (r <= 0.0) break;
      run_min = std::min(run_min, r);
      ++length;
      if (run_min * length >= camera.rate_requirement)
        return CandidateAllocation{camera.id, t, first, length, run_min};
    }
  }
  return std::nullopt;
}

SolverResult baseline_schedule(const Scenario& scenario) {
  const FrameGrid& grid = scenario.grid;
  const auto order = detail::cameras_by_id(scenario);
  RbOccupancy occ(grid);
  CoverageState coverage(scenario.target_ids());
  std::vector<bool> scheduled(scenario.cameras.size(), false);
  std::vector<CandidateAllocation> assignments;
  std::vector<TraceEntry> trace;

  int slot = 1;
  int sub = 1;
  auto advance = [&] {
    if (++sub > grid.num_subchannels) {
      sub = 1;
      ++slot;
    }
  };
  // Cameras that already failed to complete a run from the current RB.
  std::set<std::size_t> failed_here;

  while (!coverage.uncovered.empty()) {
    while (slot <= grid.num_slots &&
           (!occ.is_free(slot, sub) || occ.load(slot) >= grid.capacity(slot))) {
      advance();
      failed_here.clear();
    }
    if (slot > grid.num_slots) break;

    std::optional<std::size_t> pick;
    double best_rate = 0.0;
    for (std::size_t idx : order) {
      if (scheduled[idx] || failed_here.contains(idx)) continue;
      const auto& cam = scenario.cameras[idx];
      if (coverage.newly_covered(cam) == 0) continue;
      const double r = cam.rate(slot, sub);
      if (r > best_rate) {
        best_rate = r;
        pick = idx;
      }
    }
    if (!pick) {
      advance();
      failed_here.clear();
      continue;
    }

    const auto& cam = scenario.cameras[*pick];
    auto run = allocate_contiguous(cam, occ, slot, sub);
    if (!run) {
      failed_here.insert(*pick);
      continue;
    }
    occ.place(*run);
    coverage.add(cam);
    scheduled[*pick] = true;
    assignments.push_back(*run);
    trace.push_back({"baseline", cam.id, *run, best_rate});
  }

  SolverResult result;
  result.status = coverage.uncovered.empty() ? SolverStatus::feasible
                                             : SolverStatus::infeasible_coverage;
  result.schedule = Schedule::from_assignments(std::move(assignments), scenario);
  result.diagnostics = std::move(trace);
  return result;
}

}  // namespace csrap
