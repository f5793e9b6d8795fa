#include <algorithm>
#include <numeric>

#include "csrap/solvers.hpp"
#include "solver_internal.hpp"

namespace csrap {

namespace detail {

std::vector<std::size_t> cameras_by_id(const Scenario& scenario) {
  std::vector<std::size_t> order(scenario.cameras.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scenario.cameras[a].id < scenario.cameras[b].id;
  });
  return order;
}

namespace {

std::size_t index_of(const Scenario& scenario, int camera_id) {
  for (std::size_t i = 0; i < scenario.cameras.size(); ++i) {
    if (scenario.cameras[i].id == camera_id) return i;
  }
  throw std::invalid_argument("unknown camera id " + std::to_string(camera_id));
}

bool smaller_run(const CandidateAllocation& a, const CandidateAllocation& b) {
  if (a.length != b.length) return a.length < b.length;
  if (a.camera_id != b.camera_id) return a.camera_id < b.camera_id;
  if (a.slot != b.slot) return a.slot < b.slot;
  return a.start < b.start;
}

}  // namespace

RelocationOutcome relocate(std::span<const CandidateAllocation> tentative,
                           const Scenario& scenario, const CandidateTable& table) {
  RelocationOutcome out;
  RbOccupancy occ(scenario.grid);
  std::vector<bool> adjusted(tentative.size(), false);

  // Cheapest candidate of the camera that fits around every fixed run.
  auto move = [&](const CandidateAllocation& current) -> std::optional<CandidateAllocation> {
    for (const auto& a : table.by_camera[index_of(scenario, current.camera_id)]) {
      if (occ.fits(a)) return a;
    }
    return std::nullopt;
  };
  auto fix = [&](std::size_t i, const CandidateAllocation& a, const char* phase) {
    occ.place(a);
    adjusted[i] = true;
    out.fixed.push_back(a);
    out.trace.push_back({phase, a.camera_id, a, static_cast<double>(a.length)});
  };

  for (;;) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < tentative.size(); ++i) {
      if (adjusted[i]) continue;
      if (!pivot || smaller_run(tentative[i], tentative[*pivot])) pivot = i;
    }
    if (!pivot) break;

    CandidateAllocation kept = tentative[*pivot];
    if (occ.fits(kept)) {
      fix(*pivot, kept, "keep");
    } else {
      // The pivot collides with a run moved earlier; it is relocated as well.
      auto moved = move(kept);
      if (!moved) {
        out.failed_camera = kept.camera_id;
        return out;
      }
      kept = *moved;
      fix(*pivot, kept, "relocate");
    }

    std::vector<std::size_t> overlapping;
    for (std::size_t j = 0; j < tentative.size(); ++j) {
      if (!adjusted[j] && tentative[j].overlaps(kept)) overlapping.push_back(j);
    }
    std::sort(overlapping.begin(), overlapping.end(), [&](std::size_t a, std::size_t b) {
      return tentative[a].camera_id < tentative[b].camera_id;
    });
    for (std::size_t j : overlapping) {
      auto moved = move(tentative[j]);
      if (!moved) {
        out.failed_camera = tentative[j].camera_id;
        return out;
      }
      fix(j, *moved, "relocate");
    }
  }
  return out;
}

}  // namespace detail

int GreedyResult::total_rbs() const {
  int sum = 0;
  for (const auto& a : tentative) sum += a.length;
  return sum;
}

std::vector<int> GreedyResult::camera_sequence() const {
  std::vector<int> seq;
  for (const auto& a : tentative) seq.push_back(a.camera_id);
  return seq;
}

GreedyResult detail::greedy(const Scenario& scenario, const CandidateTable& table) {
  const auto order = detail::cameras_by_id(scenario);
  GreedyResult g;
  g.coverage = CoverageState(scenario.target_ids());
  std::vector<bool> remaining(scenario.cameras.size(), true);

  while (!g.coverage.uncovered.empty()) {
    std::optional<std::size_t> best;
    int best_len = 0;
    int best_gain = 1;
    for (std::size_t idx : order) {
      if (!remaining[idx]) continue;
      const int gain = g.coverage.newly_covered(scenario.cameras[idx]);
      if (gain == 0) continue;
      const auto* cand = table.cheapest(idx);
      if (!cand) continue;
      // phi / gain < best_len / best_gain, compared exactly.
      if (!best || cand->length * best_gain < best_len * gain) {
        best = idx;
        best_len = cand->length;
        best_gain = gain;
      }
    }
    if (!best) {
      g.status = SolverStatus::infeasible_coverage;
      break;
    }
    const auto& cam = scenario.cameras[*best];
    const auto& alloc = *table.cheapest(*best);
    remaining[*best] = false;
    g.coverage.add(cam);
    g.tentative.push_back(alloc);
    g.trace.push_back({"greedy", cam.id, alloc, static_cast<double>(best_len) / best_gain});
  }
  return g;
}

SolverResult detail::relocate_greedy(const GreedyResult& greedy, const Scenario& scenario,
                                     const CandidateTable& table) {
  SolverResult result;
  result.diagnostics = greedy.trace;
  if (greedy.status != SolverStatus::feasible) {
    result.status = greedy.status;
    result.schedule = Schedule::from_assignments(greedy.tentative, scenario);
    return result;
  }
  auto outcome = detail::relocate(greedy.tentative, scenario, table);
  result.diagnostics.insert(result.diagnostics.end(), outcome.trace.begin(), outcome.trace.end());
  result.status = outcome.failed_camera ? SolverStatus::infeasible_relocation
                                        : SolverStatus::feasible;
  result.schedule = Schedule::from_assignments(std::move(outcome.fixed), scenario);
  return result;
}

GreedyResult mramc_greedy(const Scenario& scenario) {
  return detail::greedy(scenario, CandidateTable::build(scenario));
}

SolverResult mramc_relocate(const GreedyResult& greedy, const Scenario& scenario) {
  return detail::relocate_greedy(greedy, scenario, CandidateTable::build(scenario));
}

SolverResult mramc(const Scenario& scenario) {
  const auto table = CandidateTable::build(scenario);
  return detail::relocate_greedy(detail::greedy(scenario, table), scenario, table);
}

}  // namespace csrap
