#include <algorithm>

#include "csrap/solvers.hpp"
#include "solver_internal.hpp"

namespace csrap {

MultiAngleResult m_mramc(const Scenario& scenario, const std::map<int, int>& multiplicity) {
  for (const auto& [id, want] : multiplicity) {
    if (want < 1) throw std::invalid_argument("multiplicity of target " + std::to_string(id) + " must be >= 1");
  }
  auto wanted = [&](int target) {
    auto it = multiplicity.find(target);
    return it == multiplicity.end() ? 1 : it->second;
  };

  MultiAngleResult out;
  const auto table = CandidateTable::build(scenario);
  out.result = detail::relocate_greedy(detail::greedy(scenario, table), scenario, table);
  out.rounds.push_back(out.result.schedule.assignments);

  const auto ids = scenario.target_ids();
  std::map<int, int> coverers;
  for (const auto& cam : scenario.cameras) {
    for (int y : cam.coverage) ++coverers[y];
  }
  int max_wanted = 1;
  for (int y : ids) {
    max_wanted = std::max(max_wanted, wanted(y));
    if (wanted(y) > coverers[y]) out.undercoverable_targets.push_back(y);
  }

  if (out.result.feasible()) {
    const auto order = detail::cameras_by_id(scenario);
    RbOccupancy occ(scenario.grid);
    std::vector<bool> scheduled(scenario.cameras.size(), false);
    std::map<int, int> count;
    for (const auto& a : out.result.schedule.assignments) {
      occ.place(a);
      for (std::size_t idx : order) {
        if (scenario.cameras[idx].id == a.camera_id) scheduled[idx] = true;
      }
      for (int y : scenario.camera(a.camera_id).coverage) ++count[y];
    }
    auto assignments = out.result.schedule.assignments;

    for (int round = 2; round <= max_wanted; ++round) {
      std::vector<CandidateAllocation> added;
      bool room_left = false;
      for (int y : ids) {
        if (wanted(y) < round || count[y] >= round) continue;
        // Cheapest run of any unscheduled camera covering y that still fits.
        std::optional<std::size_t> pick;
        std::optional<CandidateAllocation> run;
        for (std::size_t idx : order) {
          const auto& cam = scenario.cameras[idx];
          if (scheduled[idx] || !cam.covers(y)) continue;
          for (const auto& a : table.by_camera[idx]) {
            if (!occ.fits(a)) continue;
            if (!run || a.length < run->length) {
              run = a;
              pick = idx;
            }
            break;
          }
        }
        if (!run) continue;
        room_left = true;
        occ.place(*run);
        scheduled[*pick] = true;
        for (int t : scenario.cameras[*pick].coverage) ++count[t];
        added.push_back(*run);
        out.result.diagnostics.push_back({"round " + std::to_string(round), run->camera_id, *run,
                                          static_cast<double>(run->length)});
      }
      assignments.insert(assignments.end(), added.begin(), added.end());
      out.rounds.push_back(std::move(added));
      if (!room_left) {
        // Nothing fit for any target this round. A later round only adds
        // targets, so stop once every unscheduled camera is shut out.
        bool any_fits = false;
        for (std::size_t idx = 0; idx < scenario.cameras.size() && !any_fits; ++idx) {
          if (scheduled[idx]) continue;
          for (const auto& a : table.by_camera[idx]) {
            if (occ.fits(a)) {
              any_fits = true;
              break;
            }
          }
        }
        if (!any_fits) break;
      }
    }
    out.result.schedule = Schedule::from_assignments(std::move(assignments), scenario);
    for (int y : ids) {
      if (count[y] < wanted(y)) out.unmet_targets.push_back(y);
    }
  } else {
    for (int y : ids) out.unmet_targets.push_back(y);
  }
  return out;
}

}  // namespace csrap
