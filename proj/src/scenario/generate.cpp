#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "csrap/errors.hpp"
#include "csrap/scenario.hpp"

namespace csrap {

namespace {

constexpr int kPlacementAttempts = 1000;

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

class Placer {
 public:
  Placer(double side, std::mt19937_64& rng) : side_(side), rng_(rng) {}

  Point center() const { return {side_ / 2.0, side_ / 2.0}; }

  Point uniform() {
    std::uniform_real_distribution<double> u(0.0, side_);
    const double x = u(rng_);
    return {x, u(rng_)};
  }

  bool in_square(const Point& p) const {
    return p.x >= 0.0 && p.x <= side_ && p.y >= 0.0 && p.y <= side_;
  }

  bool in_annulus(const Point& p) const {
    return in_square(p) && distance(p, center()) >= kCellEdgeAnnulus * side_ / 2.0;
  }

  Point uniform_in_annulus() {
    for (;;) {
      Point p = uniform();
      if (in_annulus(p)) return p;
    }
  }

  // Uniform point strictly inside a disc, restricted by `accept`.
  template <typename Accept>
  std::optional<Point> near(const Point& anchor, double radius, Accept accept) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const double r = radius * std::sqrt(u(rng_));
      const double theta = 2.0 * std::numbers::pi * u(rng_);
      Point p{anchor.x + r * std::cos(theta), anchor.y + r * std::sin(theta)};
      if (accept(p)) return p;
    }
    return std::nullopt;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  double side_;
  std::mt19937_64& rng_;
};

double bearing_to(const Point& from, const Point& to) {
  double deg = std::atan2(to.y - from.y, to.x - from.x) * 180.0 / std::numbers::pi;
  return deg < 0.0 ? deg + 360.0 : deg;
}

CameraNode draw_camera(const ScenarioConfig& cfg, Point position, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> view(cfg.camera.view_distance_min,
                                              cfg.camera.view_distance_max);
  std::uniform_real_distribution<double> heading(0.0, 360.0);
  CameraNode cam;
  cam.position = position;
  const double v = cfg.camera.view_distance_min == cfg.camera.view_distance_max
                       ? cfg.camera.view_distance_min
                       : view(rng);
  cam.geometry = cfg.camera.kind == GeometryKind::omnidirectional
                     ? CameraGeometry::omnidirectional(v)
                     : CameraGeometry::directional(v, heading(rng), cfg.camera.fov_deg);
  const auto lo = static_cast<long long>(std::ceil(cfg.rate_requirement_min));
  const auto hi = static_cast<long long>(std::floor(cfg.rate_requirement_max));
  std::uniform_int_distribution<long long> req(lo, std::max(lo, hi));
  cam.rate_requirement = static_cast<double>(req(rng));
  return cam;
}

int grid_side(const ScenarioConfig& cfg) {
  const double spacing = cfg.camera.view_distance_min * std::numbers::sqrt2;
  return static_cast<int>(std::ceil(cfg.area_side / spacing));
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!(area_side > 0.0)) throw ConfigError("area_side must be > 0");
  if (num_targets < 1) throw ConfigError("num_targets must be >= 1");
  if (num_cameras < 1) throw ConfigError("num_cameras must be >= 1");
  if (!(camera.view_distance_min > 0.0) || camera.view_distance_max < camera.view_distance_min)
    throw ConfigError("camera view distance range must be positive and ordered");
  if (camera.kind == GeometryKind::directional &&
      !(camera.fov_deg > 0.0 && camera.fov_deg <= 360.0))
    throw ConfigError("camera fov must lie in (0, 360]");
  if (!(rate_requirement_min > 0.0) || rate_requirement_max < rate_requirement_min ||
      std::floor(rate_requirement_max) < std::ceil(rate_requirement_min))
    throw ConfigError("rate requirement range must be positive and contain an integer");
  try {
    frame().validate();
    channel.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (deployment == Deployment::partial_random && num_cameras < num_targets)
    throw ConfigError("partial_random needs at least one camera per target (K >= Y)");
  if (deployment == Deployment::overall_grid) {
    const int n = grid_side(*this);
    if (n * n > num_cameras)
      throw ConfigError("overall_grid with view distance " +
                        std::to_string(camera.view_distance_min) + " needs " +
                        std::to_string(n * n) + " cameras, only " +
                        std::to_string(num_cameras) + " requested");
  }
}

FrameGrid ScenarioConfig::frame() const {
  FrameGrid grid;
  grid.num_subchannels = num_subchannels;
  grid.num_slots = num_slots;
  grid.slot_capacity =
      slot_capacity.empty() ? std::vector<int>(std::max(num_slots, 0), num_subchannels)
                            : slot_capacity;
  grid.frame_duration_ms = frame_duration_ms;
  return grid;
}

Scenario generate_scenario(const ScenarioConfig& cfg) {
  cfg.validate();

  auto placement_rng = make_rng(cfg.placement_seed.value_or(cfg.seed), 0);
  auto channel_rng = make_rng(cfg.seed, 1);
  Placer placer(cfg.area_side, placement_rng);

  Scenario sc;
  sc.area_side = cfg.area_side;
  sc.grid = cfg.frame();
  sc.channel = cfg.channel;
  sc.seed = cfg.seed;

  const bool edge = cfg.deployment == Deployment::cell_edge;
  for (int y = 1; y <= cfg.num_targets; ++y) {
    sc.targets.push_back({y, edge ? placer.uniform_in_annulus() : placer.uniform()});
  }

  std::vector<CameraNode> cams;
  switch (cfg.deployment) {
    case Deployment::overall_grid: {
      const int n = grid_side(cfg);
      const double spacing = cfg.area_side / n;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Point p{(i + 0.5) * spacing, (j + 0.5) * spacing};
          cams.push_back(draw_camera(cfg, p, placer.rng()));
        }
      }
      while (static_cast<int>(cams.size()) < cfg.num_cameras)
        cams.push_back(draw_camera(cfg, placer.uniform(), placer.rng()));
      break;
    }
    case Deployment::partial_random:
    case Deployment::cell_edge: {
      // One camera per target first, then the rest scattered.
      const int dedicated = std::min(cfg.num_targets, cfg.num_cameras);
      for (int y = 0; y < dedicated; ++y) {
        const Point anchor = sc.targets[y].position;
        CameraNode cam = draw_camera(cfg, {}, placer.rng());
        auto accept = [&](const Point& p) {
          return edge ? placer.in_annulus(p) : placer.in_square(p);
        };
        auto spot = placer.near(anchor, cam.geometry.view_distance, accept);
        cam.position = spot ? *spot : placer.uniform_in_annulus();
        if (cam.geometry.kind == GeometryKind::directional && spot)
          cam.geometry.orientation_deg = bearing_to(cam.position, anchor);
        cams.push_back(std::move(cam));
      }
      while (static_cast<int>(cams.size()) < cfg.num_cameras) {
        const Point p = edge ? placer.uniform_in_annulus() : placer.uniform();
        cams.push_back(draw_camera(cfg, p, placer.rng()));
      }
      // Ids carry no information about which cameras were placed first.
      std::shuffle(cams.begin(), cams.end(), placer.rng());
      break;
    }
  }

  const Point bs = placer.center();
  for (std::size_t k = 0; k < cams.size(); ++k) {
    auto& cam = cams[k];
    cam.id = static_cast<int>(k) + 1;
    cam.coverage = compute_coverage(cam, sc.targets);
    cam.subchannel_rates =
        derive_rates(cam.position, bs, cfg.channel, cfg.num_subchannels, channel_rng);
  }
  sc.cameras = std::move(cams);
  sc.refresh_uncovered();
  return sc;
}

}  // namespace csrap
