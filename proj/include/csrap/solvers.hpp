#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "csrap/model.hpp"
#include "csrap/occupancy.hpp"

namespace csrap {

enum class SolverStatus {
  feasible,
  infeasible_coverage,
  infeasible_relocation,
  infeasible_capacity,
};

std::string to_string(SolverStatus status);
SolverStatus status_from_string(const std::string& name);

/// One step of a solver, kept for reproducible debugging.
struct TraceEntry {
  std::string phase;
  int camera_id = 0;
  CandidateAllocation allocation;
  double average_cost = 0.0;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// A solver's output. When the status is not feasible, `schedule` holds the
/// partial assignment reached before the solver gave up.
struct SolverResult {
  Schedule schedule;
  SolverStatus status = SolverStatus::feasible;
  std::vector<TraceEntry> diagnostics;

  bool feasible() const { return status == SolverStatus::feasible; }

  friend bool operator==(const SolverResult&, const SolverResult&) = default;
};

/// Uncovered targets and per-target camera counts during greedy scheduling.
struct CoverageState {
  std::set<int> uncovered;
  std::map<int, int> coverage_count;

  explicit CoverageState(std::span<const int> target_ids);
  CoverageState() = default;

  int newly_covered(const CameraNode& camera) const;
  void add(const CameraNode& camera);

  friend bool operator==(const CoverageState&, const CoverageState&) = default;
};

/// Per camera, the candidates that fit their slot's capacity, sorted by
/// length, then slot, then start. Index-parallel to Scenario::cameras.
struct CandidateTable {
  std::vector<std::vector<CandidateAllocation>> by_camera;

  static CandidateTable build(const Scenario& scenario);
  const CandidateAllocation* cheapest(std::size_t camera_index) const;
};

// ---------------------------------------------------------------------------
// Baseline SNR-greedy scheduler.
//
// Scans RBs slot by slot, subchannel by subchannel. At each free RB the
// unscheduled camera with the best rate on that RB (among cameras that still
// cover an uncovered target) takes it and grows a contiguous run until the
// robust rate times the run length meets its requirement. A run that hits the
// end of the slot, an occupied RB, the slot capacity or a zero-rate RB is
// abandoned and restarted at the first free RB of the next slot.
SolverResult baseline_schedule(const Scenario& scenario);

/// Shared first-fit allocator: grows a run for `camera` from (slot, start)
/// with restarts in later slots. Returns nullopt when no slot can finish it.
std::optional<CandidateAllocation> allocate_contiguous(const CameraNode& camera,
                                                       const RbOccupancy& occupancy,
                                                       int slot, int start);

// ---------------------------------------------------------------------------
// MRAMC: greedy scheduling on average cost, then RB relocation.

struct GreedyResult {
  std::vector<CandidateAllocation> tentative;  // selection order, may overlap
  CoverageState coverage;
  SolverStatus status = SolverStatus::feasible;
  std::vector<TraceEntry> trace;

  int total_rbs() const;
  std::vector<int> camera_sequence() const;
};

GreedyResult mramc_greedy(const Scenario& scenario);
SolverResult mramc_relocate(const GreedyResult& greedy, const Scenario& scenario);
SolverResult mramc(const Scenario& scenario);

// ---------------------------------------------------------------------------
// Exact branch and bound.

enum class ExactMode { with_exclusivity, without_exclusivity };

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

struct ExactStats {
  std::uint64_t nodes = 0;
};

/// Provably minimum total RBs. without_exclusivity drops RB exclusivity and
/// the per-slot capacity interaction between cameras; its schedule may then
/// fail the exclusivity check even though its status is feasible.
/// Throws ResourceLimitError when more than `node_budget` nodes are expanded.
SolverResult exact_solve(const Scenario& scenario, ExactMode mode,
                         std::uint64_t node_budget = kDefaultNodeBudget,
                         ExactStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Extensions.

struct MultiAngleResult {
  SolverResult result;
  // Assignments fixed in each round; round 0 is the plain MRAMC schedule.
  std::vector<std::vector<CandidateAllocation>> rounds;
  // Targets whose requested multiplicity exceeds their covering cameras.
  std::vector<int> undercoverable_targets;
  // Targets still below their multiplicity when the solver stopped.
  std::vector<int> unmet_targets;
};

/// m-MRAMC. `multiplicity` maps target id to the desired number of cameras;
/// missing targets default to 1.
MultiAngleResult m_mramc(const Scenario& scenario, const std::map<int, int>& multiplicity);

enum class TrafficKind { surveillance, traditional };

/// A unit of uplink demand. Traditional traffic is a node with an empty
/// coverage set; its id shares the camera id space.
struct TrafficItem {
  TrafficKind kind = TrafficKind::surveillance;
  double alpha = 1.0;
  CameraNode node;
};

struct JointResult {
  SolverResult result;
  std::vector<int> selection_order;  // item ids in greedy order
  Scenario combined;                 // scenario with every item as a camera
};

/// Greedy over all traffic with key phi / (alpha * |S ∩ Z|) for surveillance
/// and phi / alpha for traditional items, then relocation.
JointResult joint_schedule(std::span<const TrafficItem> traffic, const FrameGrid& grid,
                           std::span<const TargetObject> targets);

}  // namespace csrap
