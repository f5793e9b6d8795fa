#include <algorithm>
#include <limits>
#include <set>

#include "csrap/solvers.hpp"
#include "solver_internal.hpp"

namespace csrap {

JointResult joint_schedule(std::span<const TrafficItem> traffic, const FrameGrid& grid,
                           std::span<const TargetObject> targets) {
  JointResult out;
  Scenario& sc = out.combined;
  sc.grid = grid;
  sc.targets.assign(targets.begin(), targets.end());
  std::set<int> ids;
  std::vector<double> alpha;
  std::vector<TrafficKind> kind;
  for (const auto& item : traffic) {
    if (!(item.alpha > 0.0)) throw std::invalid_argument("traffic alpha must be > 0");
    if (!ids.insert(item.node.id).second)
      throw std::invalid_argument("duplicate traffic id " + std::to_string(item.node.id));
    CameraNode node = item.node;
    if (item.kind == TrafficKind::traditional) node.coverage.clear();
    sc.cameras.push_back(std::move(node));
    alpha.push_back(item.alpha);
    kind.push_back(item.kind);
  }
  sc.refresh_uncovered();

  const auto table = CandidateTable::build(sc);
  const auto order = detail::cameras_by_id(sc);
  CoverageState coverage(sc.target_ids());
  std::vector<bool> selected(sc.cameras.size(), false);
  GreedyResult greedy;

  for (;;) {
    std::optional<std::size_t> best;
    double best_key = std::numeric_limits<double>::infinity();
    for (std::size_t idx : order) {
      if (selected[idx]) continue;
      const auto* cand = table.cheapest(idx);
      if (!cand) continue;
      double key = cand->length / alpha[idx];
      if (kind[idx] == TrafficKind::surveillance) {
        const int gain = coverage.newly_covered(sc.cameras[idx]);
        if (gain == 0) continue;
        key = cand->length / (alpha[idx] * gain);
      }
      if (!best || key < best_key) {
        best = idx;
        best_key = key;
      }
    }
    if (!best) break;
    const auto& alloc = *table.cheapest(*best);
    selected[*best] = true;
    coverage.add(sc.cameras[*best]);
    greedy.tentative.push_back(alloc);
    greedy.trace.push_back({"greedy", alloc.camera_id, alloc, best_key});
    out.selection_order.push_back(alloc.camera_id);
  }

  bool traditional_left = false;
  for (std::size_t idx = 0; idx < sc.cameras.size(); ++idx) {
    if (kind[idx] == TrafficKind::traditional && !selected[idx]) traditional_left = true;
  }

  SolverResult& result = out.result;
  result.diagnostics = greedy.trace;
  if (!coverage.uncovered.empty()) {
    result.status = SolverStatus::infeasible_coverage;
    result.schedule = Schedule::from_assignments(greedy.tentative, sc);
    return out;
  }
  auto outcome = detail::relocate(greedy.tentative, sc, table);
  result.diagnostics.insert(result.diagnostics.end(), outcome.trace.begin(), outcome.trace.end());
  result.schedule = Schedule::from_assignments(std::move(outcome.fixed), sc);
  if (outcome.failed_camera) {
    const bool failed_traditional = std::any_of(traffic.begin(), traffic.end(), [&](const TrafficItem& t) {
      return t.node.id == *outcome.failed_camera && t.kind == TrafficKind::traditional;
    });
    result.status = failed_traditional ? SolverStatus::infeasible_capacity
                                       : SolverStatus::infeasible_relocation;
  } else {
    result.status = traditional_left ? SolverStatus::infeasible_capacity : SolverStatus::feasible;
  }
  return out;
}

}  // namespace csrap
