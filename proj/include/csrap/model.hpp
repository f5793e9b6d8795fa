#pragma once

// Core domain types for coverage-aware uplink scheduling.
//
// Slot and subchannel indices are 1-based everywhere: slot t is in [1, T] and
// subchannel m is in [1, M], matching the external document formats.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace csrap {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

/// The scheduling canvas: M subchannels by T slots of resource blocks.
struct FrameGrid {
  int num_subchannels = 1;         // M
  int num_slots = 1;               // T
  std::vector<int> slot_capacity;  // M_t per slot, length T
  double frame_duration_ms = 10.0;

  /// Grid where every slot may use all M subchannels.
  static FrameGrid uniform(int num_subchannels, int num_slots,
                           double frame_duration_ms = 10.0);

  int capacity(int slot) const { return slot_capacity.at(slot - 1); }
  int total_rbs() const { return num_subchannels * num_slots; }

  /// Throws std::invalid_argument when an invariant does not hold.
  void validate() const;

  friend bool operator==(const FrameGrid&, const FrameGrid&) = default;
};

struct TargetObject {
  int id = 0;
  Point position;

  friend bool operator==(const TargetObject&, const TargetObject&) = default;
};

enum class GeometryKind { omnidirectional, directional };

struct CameraGeometry {
  GeometryKind kind = GeometryKind::omnidirectional;
  double view_distance = 30.0;    // meters
  double orientation_deg = 0.0;   // directional only, 0 = +x axis, CCW
  double fov_deg = 360.0;         // directional only, in (0, 360]

  static CameraGeometry omnidirectional(double view_distance);
  static CameraGeometry directional(double view_distance, double orientation_deg,
                                    double fov_deg);

  friend bool operator==(const CameraGeometry&, const CameraGeometry&) = default;
};

struct CameraNode {
  int id = 0;
  Point position;
  CameraGeometry geometry;
  double rate_requirement = 1.0;          // R_k
  std::vector<double> subchannel_rates;   // length M, rate units per RB
  // Optional per-slot override, T rows of M rates. Empty means the
  // subchannel rates hold for every slot of the frame.
  std::vector<std::vector<double>> slot_rates;
  std::vector<int> coverage;              // S_k, sorted target ids

  double rate(int slot, int subchannel) const;
  bool covers(int target_id) const;

  friend bool operator==(const CameraNode&, const CameraNode&) = default;
};

/// One contiguous run of RBs in one slot that just achieves a camera's rate.
struct CandidateAllocation {
  int camera_id = 0;
  int slot = 1;
  int start = 1;
  int length = 1;            // phi
  double robust_rate = 0.0;  // min rate over the run

  int last() const { return start + length - 1; }
  bool overlaps(const CandidateAllocation& other) const;

  friend bool operator==(const CandidateAllocation&,
                         const CandidateAllocation&) = default;
};

/// Parameters of the path-loss, shadowing and MCS channel abstraction.
struct McsLevel {
  double snr_threshold_db = 0.0;
  double rate = 0.0;

  friend bool operator==(const McsLevel&, const McsLevel&) = default;
};

struct ChannelParams {
  double tx_power_dbm = 24.0;
  double pathloss_intercept_db = 128.1;
  double pathloss_slope_db = 37.6;  // per decade of distance in km
  double shadowing_sigma_db = 8.0;
  double noise_figure_db = 5.0;
  double rb_bandwidth_hz = 180'000.0;
  std::vector<McsLevel> mcs_table = {{-1.0, 2.0}, {5.0, 4.0}, {11.0, 6.0}, {15.0, 8.0}};

  void validate() const;

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

/// A complete problem instance.
struct Scenario {
  double area_side = 500.0;
  FrameGrid grid;
  std::vector<TargetObject> targets;
  std::vector<CameraNode> cameras;
  std::optional<ChannelParams> channel;
  std::uint64_t seed = 0;
  // Targets that no camera covers. Solvers report infeasibility for these.
  std::vector<int> uncovered_targets;

  const CameraNode* find_camera(int id) const;
  const CameraNode& camera(int id) const;  // throws std::invalid_argument
  bool has_target(int id) const;
  std::vector<int> target_ids() const;
  /// Recomputes `uncovered_targets` from the cameras' coverage sets.
  void refresh_uncovered();

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Schedule {
  std::vector<CandidateAllocation> assignments;
  int total_rbs = 0;
  std::vector<int> covered_targets;  // sorted

  /// Builds a schedule, deriving total_rbs and covered_targets.
  static Schedule from_assignments(std::vector<CandidateAllocation> assignments,
                                   const Scenario& scenario);

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Minimum per-RB rate over a run. Throws std::invalid_argument on empty input.
double robust_rate(std::span<const double> rates);

/// True when a run of `length` RBs at `rate` just achieves `requirement`:
/// rate * (length - 1) < requirement <= rate * length.
bool just_achieves(double rate, int length, double requirement);

/// All contiguous runs that just achieve the camera's rate requirement, over
/// every slot, ordered by slot, then start, then length. Runs containing a
/// zero-rate RB are excluded.
std::vector<CandidateAllocation> enumerate_candidates(const CameraNode& camera,
                                                      const FrameGrid& grid);

struct SlotOverload {
  int slot = 0;
  int load = 0;
  int capacity = 0;
  friend bool operator==(const SlotOverload&, const SlotOverload&) = default;
};

struct RbConflict {
  int slot = 0;
  int subchannel = 0;
  std::vector<int> camera_ids;
  friend bool operator==(const RbConflict&, const RbConflict&) = default;
};

/// Per-constraint outcome of checking a schedule against the ILP.
struct ConstraintReport {
  std::vector<int> uncovered_targets;                    // coverage
  std::vector<SlotOverload> overloaded_slots;            // per-slot capacity
  std::vector<RbConflict> rb_conflicts;                  // RB exclusivity
  std::vector<int> multi_allocated_cameras;              // one allocation per camera
  std::vector<CandidateAllocation> invalid_allocations;  // not a member of A_k*
  int recomputed_total_rbs = 0;
  int claimed_total_rbs = 0;

  bool coverage_ok() const { return uncovered_targets.empty(); }
  bool capacity_ok() const { return overloaded_slots.empty(); }
  bool exclusivity_ok() const { return rb_conflicts.empty(); }
  bool single_allocation_ok() const { return multi_allocated_cameras.empty(); }
  bool allocations_ok() const { return invalid_allocations.empty(); }
  bool total_ok() const { return recomputed_total_rbs == claimed_total_rbs; }
  bool feasible() const {
    return coverage_ok() && capacity_ok() && exclusivity_ok() &&
           single_allocation_ok() && allocations_ok() && total_ok();
  }

  std::string describe() const;
};

/// Checks a schedule against the coverage, capacity, exclusivity and
/// single-allocation constraints. Unknown camera ids or out-of-frame runs
/// throw std::invalid_argument.
ConstraintReport verify_schedule(const Schedule& schedule, const Scenario& scenario);

}  // namespace csrap
