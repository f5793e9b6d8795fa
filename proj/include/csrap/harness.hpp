#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "csrap/scenario.hpp"
#include "csrap/solvers.hpp"

namespace csrap {

/// Channel-quality-only comparator. Repeatedly takes the unscheduled camera
/// (covering at least one uncovered target) whose best candidate has the
/// highest robust rate and places it with the baseline's first-fit allocator.
SolverResult greedy_based_reference(const Scenario& scenario);

enum class Algorithm { baseline, mramc, m_mramc, exact, greedy_based };

std::string to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);

enum class SweepAxis { num_targets, view_distance, fov, deployment };

std::string to_string(SweepAxis axis);
SweepAxis axis_from_string(const std::string& name);

struct AxisValue {
  std::string label;  // as printed in the CSV
  double number = 0.0;
  std::optional<Deployment> deployment;
};

struct SweepSpec {
  ScenarioConfig base;
  SweepAxis axis = SweepAxis::num_targets;
  std::vector<AxisValue> values;
  int trials = 200;
  std::vector<Algorithm> algorithms = {Algorithm::baseline, Algorithm::mramc,
                                       Algorithm::greedy_based};
  std::uint64_t base_seed = 1;
  // Keep placement fixed at the base seed so trials only vary shadowing.
  bool freeze_placement = false;
  int multiplicity = 2;  // per-target camera count requested from m_mramc
  std::uint64_t exact_node_budget = kDefaultNodeBudget;
  unsigned threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct SweepCell {
  std::string value;
  Algorithm algorithm = Algorithm::mramc;
  // Total RBs per trial; nullopt when infeasible or skipped.
  std::vector<std::optional<int>> rbs;
  int infeasible = 0;
  int skipped = 0;  // exact solver out of budget
  double mean_rbs = 0.0;
  double std_rbs = 0.0;
  double total_seconds = 0.0;

  int trials() const { return static_cast<int>(rbs.size()); }
  int feasible() const { return trials() - infeasible - skipped; }
  double standard_error() const;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::num_targets;
  std::vector<SweepCell> cells;  // value-major, algorithms in spec order

  const SweepCell& cell(const std::string& value, Algorithm algorithm) const;
};

/// Thrown when a solver reports a feasible schedule that fails verification.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Applies an axis value to a configuration.
ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, const AxisValue& value);

SweepResult run_sweep(const SweepSpec& spec);

inline constexpr const char* kCsvHeader = "axis,value,algorithm,mean_rbs,std_rbs,infeasible,trials";

std::string to_csv(const SweepResult& result);

SweepSpec sweep_from_json(const nlohmann::json& doc);
nlohmann::json sweep_to_json(const SweepSpec& spec);

/// Schedule document: {assignments: [{camera_id, slot, start, length,
/// robust_rate}], total_rbs, status}.
nlohmann::json schedule_to_json(const SolverResult& result);

struct ScheduleDocument {
  Schedule schedule;
  SolverStatus status = SolverStatus::feasible;
};

ScheduleDocument schedule_from_json(const nlohmann::json& doc);

}  // namespace csrap
