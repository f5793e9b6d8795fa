#pragma once

// Hand-built instances for unit tests.

#include <vector>

#include "csrap/model.hpp"

namespace fixture {

inline csrap::CameraNode camera(int id, std::vector<double> rates, double requirement,
                                std::vector<int> coverage) {
  csrap::CameraNode cam;
  cam.id = id;
  cam.geometry = csrap::CameraGeometry::omnidirectional(30.0);
  cam.rate_requirement = requirement;
  cam.subchannel_rates = std::move(rates);
  cam.coverage = std::move(coverage);
  return cam;
}

/// Scenario with targets 1..num_targets and explicit cameras.
inline csrap::Scenario scenario(csrap::FrameGrid grid, std::vector<csrap::CameraNode> cameras,
                                int num_targets) {
  csrap::Scenario sc;
  sc.grid = std::move(grid);
  for (int y = 1; y <= num_targets; ++y) sc.targets.push_back({y, {double(y), 0.0}});
  sc.cameras = std::move(cameras);
  sc.refresh_uncovered();
  return sc;
}

}  // namespace fixture
