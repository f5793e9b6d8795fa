#include <algorithm>
#include <cmath>
#include <numbers>

#include "csrap/scenario.hpp"

namespace csrap {

namespace {

double bearing_deg(const Point& from, const Point& to) {
  double deg = std::atan2(to.y - from.y, to.x - from.x) * 180.0 / std::numbers::pi;
  return deg < 0.0 ? deg + 360.0 : deg;
}

// Absolute angular difference folded into [0, 180].
double angular_gap_deg(double a, double b) {
  double d = std::fmod(std::fabs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

bool sees(const CameraNode& camera, const TargetObject& target) {
  const double d = distance(camera.position, target.position);
  if (d > camera.geometry.view_distance) return false;
  if (camera.geometry.kind == GeometryKind::omnidirectional) return true;
  if (camera.geometry.fov_deg >= 360.0 || d == 0.0) return true;
  const double gap =
      angular_gap_deg(bearing_deg(camera.position, target.position), camera.geometry.orientation_deg);
  return gap <= camera.geometry.fov_deg / 2.0;
}

}  // namespace

std::vector<int> compute_coverage(const CameraNode& camera,
                                  std::span<const TargetObject> targets) {
  std::vector<int> ids;
  for (const auto& t : targets) {
    if (sees(camera, t)) ids.push_back(t.id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace csrap
