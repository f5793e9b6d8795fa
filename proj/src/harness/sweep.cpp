#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "csrap/errors.hpp"
#include "csrap/harness.hpp"
#include "csrap/scenario_io.hpp"

namespace csrap {

using nlohmann::json;

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::baseline: return "baseline";
    case Algorithm::mramc: return "mramc";
    case Algorithm::m_mramc: return "m_mramc";
    case Algorithm::exact: return "exact";
    case Algorithm::greedy_based: return "greedy_based";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
  for (auto a : {Algorithm::baseline, Algorithm::mramc, Algorithm::m_mramc, Algorithm::exact,
                 Algorithm::greedy_based}) {
    if (to_string(a) == name) return a;
  }
  if (name == "g-b" || name == "gb") return Algorithm::greedy_based;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::num_targets: return "num_targets";
    case SweepAxis::view_distance: return "view_distance";
    case SweepAxis::fov: return "fov";
    case SweepAxis::deployment: return "deployment";
  }
  return "unknown";
}

SweepAxis axis_from_string(const std::string& name) {
  for (auto a : {SweepAxis::num_targets, SweepAxis::view_distance, SweepAxis::fov,
                 SweepAxis::deployment}) {
    if (to_string(a) == name) return a;
  }
  throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

void SweepSpec::validate() const {
  if (trials < 1) throw ConfigError("sweep: trials must be >= 1");
  if (values.empty()) throw ConfigError("sweep: axis values must not be empty");
  if (algorithms.empty()) throw ConfigError("sweep: no algorithms selected");
  if (multiplicity < 1) throw ConfigError("sweep: multiplicity must be >= 1");
  for (const auto& v : values) apply_axis(base, axis, v).validate();
}

double SweepCell::standard_error() const {
  const int n = feasible();
  return n > 0 ? std_rbs / std::sqrt(static_cast<double>(n)) : 0.0;
}

const SweepCell& SweepResult::cell(const std::string& value, Algorithm algorithm) const {
  for (const auto& c : cells) {
    if (c.value == value && c.algorithm == algorithm) return c;
  }
  throw std::out_of_range("no sweep cell for " + value + "/" + to_string(algorithm));
}

ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, const AxisValue& value) {
  ScenarioConfig cfg = base;
  switch (axis) {
    case SweepAxis::num_targets:
      cfg.num_targets = static_cast<int>(value.number);
      break;
    case SweepAxis::view_distance:
      cfg.camera.view_distance_min = value.number;
      cfg.camera.view_distance_max = value.number;
      break;
    case SweepAxis::fov:
      cfg.camera.fov_deg = value.number;
      break;
    case SweepAxis::deployment:
      if (!value.deployment) throw ConfigError("sweep: deployment axis needs deployment names");
      cfg.deployment = *value.deployment;
      break;
  }
  return cfg;
}

namespace {

struct Outcome {
  std::optional<int> rbs;
  bool skipped = false;
  double seconds = 0.0;
};

Outcome run_one(Algorithm algorithm, const Scenario& sc, const SweepSpec& spec,
                std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();
  SolverResult result;
  Outcome out;
  switch (algorithm) {
    case Algorithm::baseline: result = baseline_schedule(sc); break;
    case Algorithm::mramc: result = mramc(sc); break;
    case Algorithm::greedy_based: result = greedy_based_reference(sc); break;
    case Algorithm::m_mramc: {
      std::map<int, int> want;
      for (const auto& t : sc.targets) want[t.id] = spec.multiplicity;
      result = m_mramc(sc, want).result;
      break;
    }
    case Algorithm::exact:
      try {
        result = exact_solve(sc, ExactMode::with_exclusivity, spec.exact_node_budget);
      } catch (const ResourceLimitError&) {
        out.skipped = true;
      }
      break;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (out.skipped || !result.feasible()) return out;

  const auto report = verify_schedule(result.schedule, sc);
  if (!report.feasible())
    throw VerificationError("seed " + std::to_string(seed) + ", algorithm " +
                            to_string(algorithm) + ": feasible schedule failed verification\n" +
                            report.describe());
  out.rbs = result.schedule.total_rbs;
  return out;
}

template <typename Fn>
void parallel_for(int count, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  result.axis = spec.axis;
  const std::size_t n_alg = spec.algorithms.size();

  for (const auto& value : spec.values) {
    const ScenarioConfig cfg = apply_axis(spec.base, spec.axis, value);
    // outcomes[trial][algorithm]
    std::vector<std::vector<Outcome>> outcomes(spec.trials, std::vector<Outcome>(n_alg));
    parallel_for(spec.trials, spec.threads, [&](int trial) {
      ScenarioConfig trial_cfg = cfg;
      trial_cfg.seed = spec.base_seed + static_cast<std::uint64_t>(trial);
      if (spec.freeze_placement) trial_cfg.placement_seed = spec.base_seed;
      const Scenario sc = generate_scenario(trial_cfg);
      for (std::size_t a = 0; a < n_alg; ++a)
        outcomes[trial][a] = run_one(spec.algorithms[a], sc, spec, trial_cfg.seed);
    });

    for (std::size_t a = 0; a < n_alg; ++a) {
      SweepCell cell;
      cell.value = value.label;
      cell.algorithm = spec.algorithms[a];
      double sum = 0.0;
      for (int trial = 0; trial < spec.trials; ++trial) {
        const auto& o = outcomes[trial][a];
        cell.rbs.push_back(o.rbs);
        cell.total_seconds += o.seconds;
        if (o.skipped) ++cell.skipped;
        else if (!o.rbs) ++cell.infeasible;
        else sum += *o.rbs;
      }
      const int n = cell.feasible();
      cell.mean_rbs = n > 0 ? sum / n : std::nan("");
      double sq = 0.0;
      for (const auto& r : cell.rbs) {
        if (r) sq += (*r - cell.mean_rbs) * (*r - cell.mean_rbs);
      }
      cell.std_rbs = n > 1 ? std::sqrt(sq / (n - 1)) : 0.0;
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  char buf[64];
  for (const auto& c : result.cells) {
    os << to_string(result.axis) << ',' << c.value << ',' << to_string(c.algorithm) << ',';
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", c.mean_rbs, c.std_rbs);
    os << buf << ',' << c.infeasible << ',' << c.trials() << '\n';
  }
  return os.str();
}

namespace {

AxisValue axis_value_from_json(const json& j, SweepAxis axis, std::size_t i) {
  const std::string path = "values[" + std::to_string(i) + "]";
  AxisValue v;
  if (axis == SweepAxis::deployment) {
    if (!j.is_string()) throw ParseError(path, "expected a deployment name");
    v.label = j.get<std::string>();
    v.deployment = deployment_from_string(v.label);
    return v;
  }
  if (!j.is_number()) throw ParseError(path, "expected a number");
  v.number = j.get<double>();
  v.label = j.dump();
  return v;
}

}  // namespace

SweepSpec sweep_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("<document>", "expected an object");
  SweepSpec spec;
  if (auto it = doc.find("base"); it != doc.end()) spec.base = config_from_json(*it);
  auto axis_it = doc.find("axis");
  if (axis_it == doc.end() || !axis_it->is_string()) throw ParseError("axis", "missing or not a string");
  try {
    spec.axis = axis_from_string(axis_it->get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError("axis", e.what());
  }
  auto values_it = doc.find("values");
  if (values_it == doc.end() || !values_it->is_array() || values_it->empty())
    throw ParseError("values", "expected a non-empty array");
  for (std::size_t i = 0; i < values_it->size(); ++i)
    spec.values.push_back(axis_value_from_json((*values_it)[i], spec.axis, i));
  auto integer = [&](const char* key, auto& target) {
    if (auto it = doc.find(key); it != doc.end()) {
      if (!it->is_number_integer()) throw ParseError(key, "expected an integer");
      target = it->get<std::remove_reference_t<decltype(target)>>();
    }
  };
  integer("trials", spec.trials);
  integer("seed", spec.base_seed);
  integer("multiplicity", spec.multiplicity);
  integer("exact_node_budget", spec.exact_node_budget);
  integer("threads", spec.threads);
  if (auto it = doc.find("freeze_placement"); it != doc.end()) {
    if (!it->is_boolean()) throw ParseError("freeze_placement", "expected a boolean");
    spec.freeze_placement = it->get<bool>();
  }
  if (auto it = doc.find("algorithms"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("algorithms", "expected an array");
    spec.algorithms.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto path = "algorithms[" + std::to_string(i) + "]";
      if (!(*it)[i].is_string()) throw ParseError(path, "expected a string");
      try {
        spec.algorithms.push_back(algorithm_from_string((*it)[i].get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ParseError(path, e.what());
      }
    }
  }
  return spec;
}

json sweep_to_json(const SweepSpec& spec) {
  json values = json::array();
  for (const auto& v : spec.values) {
    if (v.deployment) values.push_back(v.label);
    else values.push_back(v.number);
  }
  json algorithms = json::array();
  for (auto a : spec.algorithms) algorithms.push_back(to_string(a));
  return {{"base", config_to_json(spec.base)},
          {"axis", to_string(spec.axis)},
          {"values", values},
          {"trials", spec.trials},
          {"algorithms", algorithms},
          {"seed", spec.base_seed},
          {"freeze_placement", spec.freeze_placement},
          {"multiplicity", spec.multiplicity},
          {"exact_node_budget", spec.exact_node_budget},
          {"threads", spec.threads}};
}

json schedule_to_json(const SolverResult& result) {
  json assignments = json::array();
  for (const auto& a : result.schedule.assignments) {
    assignments.push_back({{"camera_id", a.camera_id},
                           {"slot", a.slot},
                           {"start", a.start},
                           {"length", a.length},
                           {"robust_rate", a.robust_rate}});
  }
  return {{"assignments", assignments},
          {"total_rbs", result.schedule.total_rbs},
          {"status", to_string(result.status)}};
}

ScheduleDocument schedule_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("<document>", "expected an object");
  ScheduleDocument out;
  auto list = doc.find("assignments");
  if (list == doc.end() || !list->is_array()) throw ParseError("assignments", "expected an array");
  for (std::size_t i = 0; i < list->size(); ++i) {
    const auto path = "assignments[" + std::to_string(i) + "]";
    const json& e = (*list)[i];
    if (!e.is_object()) throw ParseError(path, "expected an object");
    auto int_field = [&](const char* key) {
      auto it = e.find(key);
      if (it == e.end() || !it->is_number_integer())
        throw ParseError(path + "." + key, "missing or not an integer");
      return it->get<int>();
    };
    CandidateAllocation a;
    a.camera_id = int_field("camera_id");
    a.slot = int_field("slot");
    a.start = int_field("start");
    a.length = int_field("length");
    auto rr = e.find("robust_rate");
    if (rr == e.end() || !rr->is_number()) throw ParseError(path + ".robust_rate", "missing or not a number");
    a.robust_rate = rr->get<double>();
    out.schedule.assignments.push_back(a);
  }
  auto total = doc.find("total_rbs");
  if (total == doc.end() || !total->is_number_integer()) throw ParseError("total_rbs", "missing or not an integer");
  out.schedule.total_rbs = total->get<int>();
  if (auto st = doc.find("status"); st != doc.end()) {
    if (!st->is_string()) throw ParseError("status", "expected a string");
    try {
      out.status = status_from_string(st->get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError("status", e.what());
    }
  }
  return out;
}

}  // namespace csrap
