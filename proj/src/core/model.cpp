#include "csrap/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace csrap {

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

FrameGrid FrameGrid::uniform(int num_subchannels, int num_slots, double frame_duration_ms) {
  FrameGrid grid;
  grid.num_subchannels = num_subchannels;
  grid.num_slots = num_slots;
  grid.slot_capacity.assign(num_slots > 0 ? num_slots : 0, num_subchannels);
  grid.frame_duration_ms = frame_duration_ms;
  grid.validate();
  return grid;
}

void FrameGrid::validate() const {
  if (num_subchannels < 1) throw std::invalid_argument("frame: M must be >= 1");
  if (num_slots < 1) throw std::invalid_argument("frame: T must be >= 1");
  if (!(frame_duration_ms > 0.0)) throw std::invalid_argument("frame: rho must be > 0");
  if (static_cast<int>(slot_capacity.size()) != num_slots)
    throw std::invalid_argument("frame: slot_capacity must have T entries");
  for (int c : slot_capacity) {
    if (c < 0 || c > num_subchannels)
      throw std::invalid_argument("frame: slot capacity must lie in [0, M]");
  }
}

CameraGeometry CameraGeometry::omnidirectional(double view_distance) {
  return {GeometryKind::omnidirectional, view_distance, 0.0, 360.0};
}

CameraGeometry CameraGeometry::directional(double view_distance, double orientation_deg,
                                           double fov_deg) {
  return {GeometryKind::directional, view_distance, orientation_deg, fov_deg};
}

double CameraNode::rate(int slot, int subchannel) const {
  if (!slot_rates.empty()) return slot_rates.at(slot - 1).at(subchannel - 1);
  return subchannel_rates.at(subchannel - 1);
}

bool CameraNode::covers(int target_id) const {
  return std::binary_search(coverage.begin(), coverage.end(), target_id);
}

bool CandidateAllocation::overlaps(const CandidateAllocation& other) const {
  return slot == other.slot && start <= other.last() && other.start <= last();
}

void ChannelParams::validate() const {
  if (!(rb_bandwidth_hz > 0.0)) throw std::invalid_argument("channel: rb_bandwidth must be > 0");
  if (shadowing_sigma_db < 0.0) throw std::invalid_argument("channel: shadowing_sigma must be >= 0");
  if (mcs_table.empty()) throw std::invalid_argument("channel: mcs_table must not be empty");
  for (std::size_t i = 1; i < mcs_table.size(); ++i) {
    if (!(mcs_table[i].snr_threshold_db > mcs_table[i - 1].snr_threshold_db))
      throw std::invalid_argument("channel: mcs_table thresholds must be strictly increasing");
    if (mcs_table[i].rate < mcs_table[i - 1].rate)
      throw std::invalid_argument("channel: mcs_table rates must be non-decreasing");
  }
  for (const auto& level : mcs_table) {
    if (level.rate < 0.0) throw std::invalid_argument("channel: mcs_table rates must be >= 0");
  }
}

const CameraNode* Scenario::find_camera(int id) const {
  auto it = std::find_if(cameras.begin(), cameras.end(),
                         [id](const CameraNode& c) { return c.id == id; });
  return it == cameras.end() ? nullptr : &*it;
}

const CameraNode& Scenario::camera(int id) const {
  if (const auto* cam = find_camera(id)) return *cam;
  throw std::invalid_argument("unknown camera id " + std::to_string(id));
}

bool Scenario::has_target(int id) const {
  return std::any_of(targets.begin(), targets.end(),
                     [id](const TargetObject& t) { return t.id == id; });
}

std::vector<int> Scenario::target_ids() const {
  std::vector<int> ids;
  ids.reserve(targets.size());
  for (const auto& t : targets) ids.push_back(t.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void Scenario::refresh_uncovered() {
  std::set<int> covered;
  for (const auto& cam : cameras) covered.insert(cam.coverage.begin(), cam.coverage.end());
  uncovered_targets.clear();
  for (int id : target_ids()) {
    if (!covered.contains(id)) uncovered_targets.push_back(id);
  }
}

Schedule Schedule::from_assignments(std::vector<CandidateAllocation> assignments,
                                    const Scenario& scenario) {
  Schedule s;
  std::set<int> covered;
  for (const auto& a : assignments) {
    s.total_rbs += a.length;
    const auto& cam = scenario.camera(a.camera_id);
    covered.insert(cam.coverage.begin(), cam.coverage.end());
  }
  s.assignments = std::move(assignments);
  s.covered_targets.assign(covered.begin(), covered.end());
  return s;
}

double robust_rate(std::span<const double> rates) {
  if (rates.empty()) throw std::invalid_argument("robust_rate: empty rate list");
  return *std::min_element(rates.begin(), rates.end());
}

bool just_achieves(double rate, int length, double requirement) {
  return rate * (length - 1) < requirement && rate * length >= requirement;
}

std::vector<CandidateAllocation> enumerate_candidates(const CameraNode& camera,
                                                      const FrameGrid& grid) {
  const int m_count = grid.num_subchannels;
  if (static_cast<int>(camera.subchannel_rates.size()) != m_count)
    throw std::invalid_argument("enumerate_candidates: camera " + std::to_string(camera.id) +
                                " has " + std::to_string(camera.subchannel_rates.size()) +
                                " rates, frame has M = " + std::to_string(m_count));
  if (!camera.slot_rates.empty() &&
      static_cast<int>(camera.slot_rates.size()) != grid.num_slots)
    throw std::invalid_argument("enumerate_candidates: slot rate override needs T rows");

  std::vector<CandidateAllocation> out;
  std::vector<double> row(static_cast<std::size_t>(m_count));
  for (int t = 1; t <= grid.num_slots; ++t) {
    double floor_rate = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= m_count; ++m) {
      row[m - 1] = camera.rate(t, m);
      if (row[m - 1] > 0.0) floor_rate = std::min(floor_rate, row[m - 1]);
    }
    for (int i = 1; i <= m_count; ++i) {
      double run_min = row[i - 1];
      for (int len = 1; i + len - 1 <= m_count; ++len) {
        run_min = std::min(run_min, row[i + len - 2]);
        // Once a zero-rate RB joins the run no extension can succeed.
        if (run_min <= 0.0) break;
        if (just_achieves(run_min, len, camera.rate_requirement))
          out.push_back({camera.id, t, i, len, run_min});
        // Longer runs keep a robust rate of at least floor_rate, so they
        // overshoot the requirement by a full RB from here on.
        if (floor_rate * len >= camera.rate_requirement) break;
      }
    }
  }
  return out;
}

}  // namespace csrap
