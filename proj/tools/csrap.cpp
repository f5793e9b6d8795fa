// csrap: generate scenarios, run the schedulers, verify schedules and run
// parameter sweeps.
//
// Exit codes: 0 success or feasible, 1 infeasible, 2 usage or input error,
// 3 internal error.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "csrap/bounds.hpp"
#include "csrap/errors.hpp"
#include "csrap/harness.hpp"
#include "csrap/scenario_io.hpp"

namespace {

using namespace csrap;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

// Input problems that should map to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out;
  bool quiet = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  try {
    return read_file(path);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

void write_output(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + g.out + "'");
  f << text;
}

void note(const Globals& g, const std::string& text) {
  if (!g.quiet) std::cerr << text;
}

Scenario read_scenario(const std::string& path) { return load_scenario(read_input(path)); }

SolverResult run_algorithm(Algorithm algo, const Scenario& sc, int multiplicity,
                           std::uint64_t budget) {
  switch (algo) {
    case Algorithm::baseline: return baseline_schedule(sc);
    case Algorithm::mramc: return mramc(sc);
    case Algorithm::greedy_based: return greedy_based_reference(sc);
    case Algorithm::exact: return exact_solve(sc, ExactMode::with_exclusivity, budget);
    case Algorithm::m_mramc: {
      std::map<int, int> want;
      for (const auto& t : sc.targets) want[t.id] = multiplicity;
      return m_mramc(sc, want).result;
    }
  }
  throw std::logic_error("unhandled algorithm");
}

std::string summary(const SolverResult& r, Algorithm algo) {
  std::ostringstream os;
  os << to_string(algo) << ": " << to_string(r.status) << ", " << r.schedule.assignments.size()
     << " cameras, " << r.schedule.total_rbs << " RBs\n";
  for (const auto& a : r.schedule.assignments) {
    os << "  camera " << a.camera_id << "  slot " << a.slot << "  subchannels " << a.start << "-"
       << a.last() << "  robust rate " << a.robust_rate << '\n';
  }
  return os.str();
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Camera surveillance resource allocation over LTE uplink"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed override for generate and sweep");
  app.add_option("--out", g.out, "Write the main output here instead of stdout");
  app.add_flag("--quiet", g.quiet, "Suppress summaries and the CSV timestamp line");

  std::string config_path;
  auto* gen = app.add_subcommand("generate", "Scenario config -> scenario document");
  gen->add_option("config", config_path, "Config JSON (defaults when omitted)");

  std::string scenario_path, algo_name = "mramc";
  int multiplicity = 2;
  std::uint64_t node_budget = kDefaultNodeBudget;
  auto* solve = app.add_subcommand("solve", "Scenario document -> schedule document");
  solve->add_option("scenario", scenario_path, "Scenario JSON, or - for stdin")->required();
  solve->add_option("--algo", algo_name, "baseline | mramc | m_mramc | exact | greedy_based")
      ->capture_default_str();
  solve->add_option("--multiplicity", multiplicity, "Cameras per target for m_mramc")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  solve->add_option("--node-budget", node_budget, "Node budget for the exact solver")
      ->capture_default_str();

  std::string schedule_path;
  auto* verify = app.add_subcommand("verify", "Check a schedule against a scenario");
  verify->add_option("scenario", scenario_path, "Scenario JSON")->required();
  verify->add_option("schedule", schedule_path, "Schedule JSON")->required();

  std::string spec_path;
  std::optional<int> trials;
  std::optional<unsigned> threads;
  auto* sweep = app.add_subcommand("sweep", "Sweep spec -> CSV");
  sweep->add_option("spec", spec_path, "Sweep spec JSON")->required();
  sweep->add_option("--trials", trials, "Override trials per point")->check(CLI::PositiveNumber);
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

  bool with_exact = true;
  auto* bounds = app.add_subcommand("bounds", "Approximation-bound quantities for a scenario");
  bounds->add_option("scenario", scenario_path, "Scenario JSON")->required();
  bounds->add_flag("!--no-exact", with_exact, "Skip the exact optimum");
  bounds->add_option("--node-budget", node_budget, "Node budget for the exact solver");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      ScenarioConfig cfg;
      if (!config_path.empty()) cfg = config_from_json(parse_json(read_input(config_path), config_path));
      if (g.seed) cfg.seed = *g.seed;
      const Scenario sc = generate_scenario(cfg);
      write_output(g, save_scenario(sc));
      note(g, std::to_string(sc.cameras.size()) + " cameras, " + std::to_string(sc.targets.size()) +
                  " targets, " + std::to_string(sc.uncovered_targets.size()) + " uncoverable\n");
      return kOk;
    }

    if (*solve) {
      Algorithm algo;
      try {
        algo = algorithm_from_string(algo_name);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--algo: ") + e.what());
      }
      const Scenario sc = read_scenario(scenario_path);
      const SolverResult r = run_algorithm(algo, sc, multiplicity, node_budget);
      if (r.feasible()) {
        const auto report = verify_schedule(r.schedule, sc);
        if (!report.feasible())
          throw std::logic_error("solver output failed verification\n" + report.describe());
      }
      write_output(g, schedule_to_json(r).dump(2) + "\n");
      note(g, summary(r, algo));
      return r.feasible() ? kOk : kInfeasible;
    }

    if (*verify) {
      const Scenario sc = read_scenario(scenario_path);
      const auto doc = schedule_from_json(parse_json(read_input(schedule_path), schedule_path));
      ConstraintReport report;
      try {
        report = verify_schedule(doc.schedule, sc);
      } catch (const std::invalid_argument& e) {
        throw UsageError(schedule_path + ": " + e.what());
      }
      write_output(g, report.describe());
      return report.feasible() ? kOk : kInfeasible;
    }

    if (*sweep) {
      SweepSpec spec = sweep_from_json(parse_json(read_input(spec_path), spec_path));
      if (g.seed) spec.base_seed = *g.seed;
      if (trials) spec.trials = *trials;
      if (threads) spec.threads = *threads;
      const SweepResult result = run_sweep(spec);
      std::string text = to_csv(result);
      if (!g.quiet) text = "# generated " + timestamp() + "\n" + text;
      write_output(g, text);
      return kOk;
    }

    if (*bounds) {
      const Scenario sc = read_scenario(scenario_path);
      const BoundParams p = bound_params(sc);
      json doc = {{"d_star", p.d_star},
                  {"h_d_star", p.h_d_star.str()},
                  {"h_d_star_value", p.harmonic_value()},
                  {"r_max", p.r_max},
                  {"r_min", p.r_min}};
      std::ostringstream human;
      human << "d* = " << p.d_star << ", H(d*) = " << p.h_d_star.str() << " ("
            << format_double(p.harmonic_value()) << ")\n";
      if (p.r_min > 0.0) {
        const double factor = p.relocation_factor();
        doc["rate_ratio"] = p.r_max / p.r_min;
        doc["relocation_factor"] = factor;
        human << "r_max/r_min = " << format_double(p.r_max) << "/" << format_double(p.r_min)
              << ", factor " << format_double(factor) << '\n';
        if (with_exact) {
          try {
            const auto opt = exact_solve(sc, ExactMode::with_exclusivity, node_budget);
            if (opt.feasible()) {
              doc["exact_optimum"] = opt.schedule.total_rbs;
              doc["theorem2_bound"] = factor * opt.schedule.total_rbs;
              human << "optimum " << opt.schedule.total_rbs << ", MRAMC bound "
                    << format_double(factor * opt.schedule.total_rbs) << '\n';
            } else {
              doc["exact_status"] = to_string(opt.status);
            }
          } catch (const ResourceLimitError& e) {
            doc["exact_status"] = "node_budget_exceeded";
            human << "exact optimum skipped: " << e.what() << '\n';
          }
        }
      }
      write_output(g, doc.dump(2) + "\n");
      note(g, human.str());
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
