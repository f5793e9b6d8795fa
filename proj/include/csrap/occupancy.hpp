#pragma once

#include <vector>

#include "csrap/model.hpp"

namespace csrap {

/// Tracks which camera owns each RB of a frame and the per-slot load.
class RbOccupancy {
 public:
  static constexpr int kFree = -1;

  explicit RbOccupancy(const FrameGrid& grid);

  /// True when every RB of the run is free and the slot stays within M_t.
  bool fits(const CandidateAllocation& run) const;
  void place(const CandidateAllocation& run);
  void release(const CandidateAllocation& run);

  int owner(int slot, int subchannel) const { return owner_[index(slot, subchannel)]; }
  bool is_free(int slot, int subchannel) const { return owner(slot, subchannel) == kFree; }
  int load(int slot) const { return load_[slot - 1]; }
  const FrameGrid& grid() const { return grid_; }

 private:
  int index(int slot, int subchannel) const {
    return (slot - 1) * grid_.num_subchannels + (subchannel - 1);
  }

  FrameGrid grid_;
  std::vector<int> owner_;
  std::vector<int> load_;
};

}  // namespace csrap
