#include <algorithm>
#include <stdexcept>

#include "csrap/solvers.hpp"

namespace csrap {

std::string to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::feasible: return "feasible";
    case SolverStatus::infeasible_coverage: return "infeasible_coverage";
    case SolverStatus::infeasible_relocation: return "infeasible_relocation";
    case SolverStatus::infeasible_capacity: return "infeasible_capacity";
  }
  return "unknown";
}

SolverStatus status_from_string(const std::string& name) {
  for (auto s : {SolverStatus::feasible, SolverStatus::infeasible_coverage,
                 SolverStatus::infeasible_relocation, SolverStatus::infeasible_capacity}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown solver status '" + name + "'");
}

CoverageState::CoverageState(std::span<const int> target_ids) {
  for (int id : target_ids) {
    uncovered.insert(id);
    coverage_count[id] = 0;
  }
}

int CoverageState::newly_covered(const CameraNode& camera) const {
  int n = 0;
  for (int id : camera.coverage) n += uncovered.contains(id) ? 1 : 0;
  return n;
}

void CoverageState::add(const CameraNode& camera) {
  for (int id : camera.coverage) {
    uncovered.erase(id);
    auto it = coverage_count.find(id);
    if (it != coverage_count.end()) ++it->second;
  }
}

CandidateTable CandidateTable::build(const Scenario& scenario) {
  CandidateTable table;
  table.by_camera.reserve(scenario.cameras.size());
  for (const auto& cam : scenario.cameras) {
    auto all = enumerate_candidates(cam, scenario.grid);
    std::erase_if(all, [&](const CandidateAllocation& a) {
      return a.length > scenario.grid.capacity(a.slot);
    });
    std::stable_sort(all.begin(), all.end(),
                     [](const CandidateAllocation& a, const CandidateAllocation& b) {
                       if (a.length != b.length) return a.length < b.length;
                       if (a.slot != b.slot) return a.slot < b.slot;
                       return a.start < b.start;
                     });
    table.by_camera.push_back(std::move(all));
  }
  return table;
}

const CandidateAllocation* CandidateTable::cheapest(std::size_t camera_index) const {
  const auto& list = by_camera.at(camera_index);
  return list.empty() ? nullptr : &list.front();
}

}  // namespace csrap
