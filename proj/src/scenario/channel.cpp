#include <algorithm>
#include <cmath>

#include "csrap/scenario.hpp"

namespace csrap {

namespace {
constexpr double kThermalNoiseDbmPerHz = -174.0;
constexpr double kMinDistanceM = 1.0;
}  // namespace

double noise_floor_dbm(const ChannelParams& channel) {
  return kThermalNoiseDbmPerHz + 10.0 * std::log10(channel.rb_bandwidth_hz) +
         channel.noise_figure_db;
}

double mean_snr_db(const ChannelParams& channel, double distance_m) {
  const double d_km = std::max(distance_m, kMinDistanceM) / 1000.0;
  const double pathloss =
      channel.pathloss_intercept_db + channel.pathloss_slope_db * std::log10(d_km);
  return channel.tx_power_dbm - pathloss - noise_floor_dbm(channel);
}

double quantize_rate(const ChannelParams& channel, double snr_db) {
  double rate = 0.0;
  for (const auto& level : channel.mcs_table) {
    if (level.snr_threshold_db <= snr_db) rate = level.rate;
  }
  return rate;
}

std::vector<double> derive_rates(const Point& position, const Point& base_station,
                                 const ChannelParams& channel, int num_subchannels,
                                 std::mt19937_64& rng) {
  const double snr = mean_snr_db(channel, distance(position, base_station));
  std::vector<double> rates(static_cast<std::size_t>(num_subchannels));
  // std::normal_distribution requires sigma > 0; sigma == 0 means no shadowing.
  const bool shadowed = channel.shadowing_sigma_db > 0.0;
  std::normal_distribution<double> shadow(0.0, shadowed ? channel.shadowing_sigma_db : 1.0);
  for (auto& r : rates) {
    const double sample = shadowed ? shadow(rng) : 0.0;
    r = quantize_rate(channel, snr - sample);
  }
  return rates;
}

}  // namespace csrap
