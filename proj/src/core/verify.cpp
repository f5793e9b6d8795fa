#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "csrap/model.hpp"

namespace csrap {

namespace {

bool is_member_of_candidates(const CandidateAllocation& a, const CameraNode& cam) {
  std::vector<double> run;
  for (int m = a.start; m <= a.last(); ++m) run.push_back(cam.rate(a.slot, m));
  const double rr = robust_rate(run);
  return rr > 0.0 && rr == a.robust_rate && just_achieves(rr, a.length, cam.rate_requirement);
}

}  // namespace

ConstraintReport verify_schedule(const Schedule& schedule, const Scenario& scenario) {
  const FrameGrid& grid = scenario.grid;
  for (const auto& a : schedule.assignments) {
    scenario.camera(a.camera_id);  // unknown ids throw
    if (a.slot < 1 || a.slot > grid.num_slots || a.length < 1 || a.start < 1 ||
        a.last() > grid.num_subchannels) {
      throw std::invalid_argument("allocation of camera " + std::to_string(a.camera_id) +
                                  " lies outside the frame");
    }
  }

  ConstraintReport report;
  report.claimed_total_rbs = schedule.total_rbs;

  std::set<int> covered;
  std::map<int, int> per_camera;
  std::vector<int> load(grid.num_slots, 0);
  std::map<std::pair<int, int>, std::vector<int>> owners;

  for (const auto& a : schedule.assignments) {
    const auto& cam = scenario.camera(a.camera_id);
    covered.insert(cam.coverage.begin(), cam.coverage.end());
    ++per_camera[a.camera_id];
    load[a.slot - 1] += a.length;
    report.recomputed_total_rbs += a.length;
    for (int m = a.start; m <= a.last(); ++m) owners[{a.slot, m}].push_back(a.camera_id);
    if (!is_member_of_candidates(a, cam)) report.invalid_allocations.push_back(a);
  }

  for (int id : scenario.target_ids()) {
    if (!covered.contains(id)) report.uncovered_targets.push_back(id);
  }
  for (int t = 1; t <= grid.num_slots; ++t) {
    if (load[t - 1] > grid.capacity(t))
      report.overloaded_slots.push_back({t, load[t - 1], grid.capacity(t)});
  }
  for (auto& [rb, ids] : owners) {
    if (ids.size() > 1) {
      std::sort(ids.begin(), ids.end());
      report.rb_conflicts.push_back({rb.first, rb.second, ids});
    }
  }
  for (const auto& [id, count] : per_camera) {
    if (count > 1) report.multi_allocated_cameras.push_back(id);
  }
  return report;
}

std::string ConstraintReport::describe() const {
  std::ostringstream os;
  auto verdict = [](bool ok) { return ok ? "pass" : "FAIL"; };
  os << "coverage            " << verdict(coverage_ok());
  if (!coverage_ok()) {
    os << "  uncovered targets:";
    for (int id : uncovered_targets) os << ' ' << id;
  }
  os << "\nslot capacity       " << verdict(capacity_ok());
  for (const auto& o : overloaded_slots)
    os << "  slot " << o.slot << " load " << o.load << " > " << o.capacity;
  os << "\nRB exclusivity      " << verdict(exclusivity_ok());
  for (const auto& c : rb_conflicts) {
    os << "  (slot " << c.slot << ", subchannel " << c.subchannel << ") cameras";
    for (int id : c.camera_ids) os << ' ' << id;
  }
  os << "\none per camera      " << verdict(single_allocation_ok());
  for (int id : multi_allocated_cameras) os << ' ' << id;
  os << "\nallocation validity " << verdict(allocations_ok());
  for (const auto& a : invalid_allocations)
    os << "  camera " << a.camera_id << " slot " << a.slot << " start " << a.start << " len "
       << a.length;
  os << "\ntotal RBs           " << verdict(total_ok()) << "  recomputed "
     << recomputed_total_rbs << ", claimed " << claimed_total_rbs << '\n';
  return os.str();
}

}  // namespace csrap
