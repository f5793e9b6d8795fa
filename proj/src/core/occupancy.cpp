#include "csrap/occupancy.hpp"

#include <stdexcept>

namespace csrap {

RbOccupancy::RbOccupancy(const FrameGrid& grid)
    : grid_(grid),
      owner_(static_cast<std::size_t>(grid.total_rbs()), kFree),
      load_(static_cast<std::size_t>(grid.num_slots), 0) {}

bool RbOccupancy::fits(const CandidateAllocation& run) const {
  if (run.slot < 1 || run.slot > grid_.num_slots || run.start < 1 ||
      run.last() > grid_.num_subchannels)
    return false;
  if (load(run.slot) + run.length > grid_.capacity(run.slot)) return false;
  for (int m = run.start; m <= run.last(); ++m) {
    if (!is_free(run.slot, m)) return false;
  }
  return true;
}

void RbOccupancy::place(const CandidateAllocation& run) {
  if (!fits(run)) throw std::logic_error("RbOccupancy::place on an occupied run");
  for (int m = run.start; m <= run.last(); ++m) owner_[index(run.slot, m)] = run.camera_id;
  load_[run.slot - 1] += run.length;
}

void RbOccupancy::release(const CandidateAllocation& run) {
  for (int m = run.start; m <= run.last(); ++m) {
    auto& cell = owner_[index(run.slot, m)];
    if (cell == run.camera_id) {
      cell = kFree;
      --load_[run.slot - 1];
    }
  }
}

}  // namespace csrap
