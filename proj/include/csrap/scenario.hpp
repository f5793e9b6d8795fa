#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "csrap/model.hpp"

namespace csrap {

enum class Deployment { overall_grid, partial_random, cell_edge };

/// Radial fraction of the half-side beyond which cell-edge placement happens.
inline constexpr double kCellEdgeAnnulus = 0.8;

/// Camera geometry drawn for every generated camera. View distances are
/// sampled uniformly in [view_distance_min, view_distance_max]; directional
/// cameras get a uniform orientation unless one is forced by placement.
struct CameraSpec {
  GeometryKind kind = GeometryKind::omnidirectional;
  double view_distance_min = 30.0;
  double view_distance_max = 60.0;
  double fov_deg = 120.0;

  friend bool operator==(const CameraSpec&, const CameraSpec&) = default;
};

struct ScenarioConfig {
  double area_side = 500.0;
  int num_targets = 40;
  int num_cameras = 50;
  Deployment deployment = Deployment::partial_random;
  CameraSpec camera;
  double rate_requirement_min = 8.0;
  double rate_requirement_max = 32.0;
  int num_subchannels = 50;
  int num_slots = 20;
  std::vector<int> slot_capacity;  // empty means M for every slot
  double frame_duration_ms = 10.0;
  ChannelParams channel;
  std::uint64_t seed = 1;
  // When set, target and camera placement use this seed and only the channel
  // draws follow `seed`.
  std::optional<std::uint64_t> placement_seed;

  /// Throws ConfigError when an invariant does not hold.
  void validate() const;
  FrameGrid frame() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Targets visible to a camera. Boundaries are inclusive: distance equal to
/// the view distance and bearings exactly at orientation +/- fov/2 count.
std::vector<int> compute_coverage(const CameraNode& camera,
                                  std::span<const TargetObject> targets);

/// Noise power over one RB in dBm.
double noise_floor_dbm(const ChannelParams& channel);

/// SNR in dB before shadowing for a transmitter `distance_m` away from the
/// base station. Distances below 1 m are clamped to 1 m.
double mean_snr_db(const ChannelParams& channel, double distance_m);

/// Highest MCS rate whose threshold does not exceed the SNR, else 0.
double quantize_rate(const ChannelParams& channel, double snr_db);

/// Per-subchannel rates for a camera at `position`, with the base station at
/// `base_station`. One shadowing sample is drawn per subchannel.
std::vector<double> derive_rates(const Point& position, const Point& base_station,
                                 const ChannelParams& channel, int num_subchannels,
                                 std::mt19937_64& rng);

/// Places targets and cameras, computes coverage sets and channel rates.
Scenario generate_scenario(const ScenarioConfig& config);

}  // namespace csrap
