#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>

#include "csrap/errors.hpp"
#include "csrap/solvers.hpp"
#include "solver_internal.hpp"

namespace csrap {

namespace {

constexpr int kInfeasible = std::numeric_limits<int>::max();

// Depth-first branch and bound over camera subsets. Each node picks the
// uncovered target with the fewest usable cameras and branches on which
// camera covers it; cameras tried in earlier sibling branches are forbidden
// below later siblings, so every camera subset is reached at most once.
class BranchAndBound {
 public:
  BranchAndBound(const Scenario& scenario, ExactMode mode, std::uint64_t budget)
      : mode_(mode),
        budget_(budget),
        table_(CandidateTable::build(scenario)),
        occ_(scenario.grid) {
    const auto ids = scenario.target_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) target_index_[ids[i]] = i;
    num_targets_ = ids.size();

    for (std::size_t k = 0; k < scenario.cameras.size(); ++k) {
      const auto* cheapest = table_.cheapest(k);
      if (!cheapest) continue;
      Cam c;
      c.index = k;
      c.min_len = cheapest->length;
      for (int id : scenario.cameras[k].coverage) {
        auto it = target_index_.find(id);
        if (it != target_index_.end()) c.covers.push_back(it->second);
      }
      if (c.covers.empty()) continue;
      cams_.push_back(std::move(c));
    }
    std::stable_sort(cams_.begin(), cams_.end(), [&](const Cam& a, const Cam& b) {
      return scenario.cameras[a.index].id < scenario.cameras[b.index].id;
    });
    coverers_.resize(num_targets_);
    for (std::size_t c = 0; c < cams_.size(); ++c) {
      for (std::size_t y : cams_[c].covers) coverers_[y].push_back(c);
    }
    state_.assign(cams_.size(), Free);
    cover_count_.assign(num_targets_, 0);
    uncovered_ = static_cast<int>(num_targets_);
  }

  bool coverable() const {
    return std::none_of(coverers_.begin(), coverers_.end(),
                        [](const auto& list) { return list.empty(); });
  }

  void run() {
    if (coverable()) search();
  }

  int best() const { return best_; }
  const std::vector<CandidateAllocation>& best_schedule() const { return best_schedule_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  enum State : std::uint8_t { Free, Used, Forbidden };

  struct Cam {
    std::size_t index = 0;
    int min_len = 0;
    std::vector<std::size_t> covers;
  };

  int gain(const Cam& c) const {
    int g = 0;
    for (std::size_t y : c.covers) g += cover_count_[y] == 0 ? 1 : 0;
    return g;
  }

  // Admissible bound on the RBs still needed to cover the uncovered targets
  // using only free cameras; kInfeasible when some target has no option.
  int lower_bound() const {
    double fractional = 0.0;
    int single = 0;
    for (std::size_t y = 0; y < num_targets_; ++y) {
      if (cover_count_[y] > 0) continue;
      double best_share = std::numeric_limits<double>::infinity();
      int best_len = kInfeasible;
      for (std::size_t c : coverers_[y]) {
        if (state_[c] != Free) continue;
        const auto& cam = cams_[c];
        best_share = std::min(best_share, static_cast<double>(cam.min_len) / gain(cam));
        best_len = std::min(best_len, cam.min_len);
      }
      if (best_len == kInfeasible) return kInfeasible;
      fractional += best_share;
      single = std::max(single, best_len);
    }
    return std::max(single, static_cast<int>(std::ceil(fractional - 1e-9)));
  }

  void cover(const Cam& c, int delta) {
    for (std::size_t y : c.covers) {
      if (delta > 0 && cover_count_[y]++ == 0) --uncovered_;
      if (delta < 0 && --cover_count_[y] == 0) ++uncovered_;
    }
  }

  void search() {
    if (++nodes_ > budget_)
      throw ResourceLimitError("exact solver exceeded its node budget of " +
                               std::to_string(budget_));
    if (uncovered_ == 0) {
      if (cost_ < best_) {
        best_ = cost_;
        best_schedule_ = chosen_;
      }
      return;
    }
    const int lb = lower_bound();
    if (lb == kInfeasible || (best_ != kInfeasible && cost_ + lb >= best_)) return;

    // Branch on the uncovered target with the fewest free cameras.
    std::size_t target = num_targets_;
    std::size_t options = std::numeric_limits<std::size_t>::max();
    for (std::size_t y = 0; y < num_targets_; ++y) {
      if (cover_count_[y] > 0) continue;
      std::size_t n = 0;
      for (std::size_t c : coverers_[y]) n += state_[c] == Free ? 1 : 0;
      if (n < options) {
        options = n;
        target = y;
      }
    }

    std::vector<std::size_t> branch;
    for (std::size_t c : coverers_[target]) {
      if (state_[c] == Free) branch.push_back(c);
    }
    // Most promising cameras first: lowest RBs per newly covered target.
    std::stable_sort(branch.begin(), branch.end(), [&](std::size_t a, std::size_t b) {
      return cams_[a].min_len * gain(cams_[b]) < cams_[b].min_len * gain(cams_[a]);
    });

    std::vector<std::size_t> forbidden_here;
    for (std::size_t c : branch) {
      const Cam& cam = cams_[c];
      state_[c] = Used;
      cover(cam, +1);
      for (const auto& a : table_.by_camera[cam.index]) {
        if (best_ != kInfeasible && cost_ + a.length >= best_) break;
        const bool exclusive = mode_ == ExactMode::with_exclusivity;
        if (exclusive && !occ_.fits(a)) continue;
        if (exclusive) occ_.place(a);
        chosen_.push_back(a);
        cost_ += a.length;
        search();
        cost_ -= a.length;
        chosen_.pop_back();
        if (exclusive) occ_.release(a);
        // Without exclusivity the cheapest candidate dominates the others.
        if (!exclusive) break;
      }
      cover(cam, -1);
      state_[c] = Forbidden;
      forbidden_here.push_back(c);
    }
    for (std::size_t c : forbidden_here) state_[c] = Free;
  }

  ExactMode mode_;
  std::uint64_t budget_;
  CandidateTable table_;
  RbOccupancy occ_;
  std::map<int, std::size_t> target_index_;
  std::size_t num_targets_ = 0;
  std::vector<Cam> cams_;
  std::vector<std::vector<std::size_t>> coverers_;
  std::vector<State> state_;
  std::vector<int> cover_count_;
  int uncovered_ = 0;
  int cost_ = 0;
  std::vector<CandidateAllocation> chosen_;
  int best_ = kInfeasible;
  std::vector<CandidateAllocation> best_schedule_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SolverResult exact_solve(const Scenario& scenario, ExactMode mode, std::uint64_t node_budget,
                         ExactStats* stats) {
  BranchAndBound bnb(scenario, mode, node_budget);
  bnb.run();
  if (stats) stats->nodes = bnb.nodes();

  SolverResult result;
  if (bnb.best() == kInfeasible) {
    result.status = bnb.coverable() ? SolverStatus::infeasible_capacity
                                    : SolverStatus::infeasible_coverage;
    return result;
  }
  auto chosen = bnb.best_schedule();
  std::sort(chosen.begin(), chosen.end(),
            [](const CandidateAllocation& a, const CandidateAllocation& b) {
              return a.camera_id < b.camera_id;
            });
  for (const auto& a : chosen) {
    result.diagnostics.push_back({mode == ExactMode::with_exclusivity ? "exact" : "exact_relaxed",
                                  a.camera_id, a, static_cast<double>(a.length)});
  }
  result.schedule = Schedule::from_assignments(std::move(chosen), scenario);
  return result;
}

}  // namespace csrap
