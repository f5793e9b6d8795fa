#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"

#include "csrap/errors.hpp"
#include "csrap/scenario.hpp"
#include "csrap/scenario_io.hpp"

using namespace csrap;

namespace {

CameraNode at(Point p, CameraGeometry g) {
  CameraNode cam;
  cam.id = 1;
  cam.position = p;
  cam.geometry = g;
  return cam;
}

std::vector<TargetObject> one_target(Point p) { return {{1, p}}; }

// Coverage by vector algebra rather than bearings.
bool sees_by_dot_product(const CameraNode& cam, const TargetObject& t) {
  const double dx = t.position.x - cam.position.x, dy = t.position.y - cam.position.y;
  const double d = std::hypot(dx, dy);
  if (d > cam.geometry.view_distance) return false;
  if (cam.geometry.kind == GeometryKind::omnidirectional || d == 0.0) return true;
  const double o = cam.geometry.orientation_deg * std::numbers::pi / 180.0;
  const double c = (dx * std::cos(o) + dy * std::sin(o)) / d;
  const double angle = std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / std::numbers::pi;
  return angle <= cam.geometry.fov_deg / 2.0;
}

double straight_line_rate(double distance_m, double shadow_db) {
  const double d_km = std::max(distance_m, 1.0) / 1000.0;
  const double snr = 24.0 - (128.1 + 37.6 * std::log10(d_km)) - shadow_db -
                     (-174.0 + 10.0 * std::log10(180000.0) + 5.0);
  if (snr >= 15.0) return 8.0;
  if (snr >= 11.0) return 6.0;
  if (snr >= 5.0) return 4.0;
  if (snr >= -1.0) return 2.0;
  return 0.0;
}

}  // namespace

TEST_CASE("omnidirectional coverage boundary is inclusive") {
  const auto cam = at({0, 0}, CameraGeometry::omnidirectional(30));
  CHECK(compute_coverage(cam, one_target({30.0, 0.0})) == std::vector<int>{1});
  CHECK(compute_coverage(cam, one_target({30.0001, 0.0})).empty());
}

TEST_CASE("directional coverage respects the field of view") {
  const auto cam = at({0, 0}, CameraGeometry::directional(50, 0, 120));
  auto polar = [](double r, double deg) {
    return Point{r * std::cos(deg * std::numbers::pi / 180), r * std::sin(deg * std::numbers::pi / 180)};
  };
  CHECK(compute_coverage(cam, one_target(polar(10, 61))).empty());
  CHECK(compute_coverage(cam, one_target(polar(10, 59))) == std::vector<int>{1});
  CHECK(compute_coverage(cam, one_target(polar(10, -59))) == std::vector<int>{1});
  CHECK(compute_coverage(cam, one_target(polar(10, 300))) == std::vector<int>{1});
  CHECK(compute_coverage(cam, one_target(polar(10, 180))).empty());
  CHECK(compute_coverage(cam, one_target(polar(60, 0))).empty());
  // Orientation wraps around 360.
  const auto wrapped = at({0, 0}, CameraGeometry::directional(50, 350, 40));
  CHECK(compute_coverage(wrapped, one_target(polar(10, 5))) == std::vector<int>{1});
  CHECK(compute_coverage(wrapped, one_target(polar(10, 15))).empty());
  const auto full = at({0, 0}, CameraGeometry::directional(50, 0, 360));
  CHECK(compute_coverage(full, one_target(polar(10, 180))) == std::vector<int>{1});
}

TEST_CASE("coverage sets match a brute-force pair check on generated scenarios") {
  for (auto kind : {GeometryKind::omnidirectional, GeometryKind::directional}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      ScenarioConfig cfg;
      cfg.num_targets = 40;
      cfg.num_cameras = 50;
      cfg.camera.kind = kind;
      cfg.camera.view_distance_min = 40;
      cfg.camera.view_distance_max = 90;
      cfg.seed = seed;
      const auto sc = generate_scenario(cfg);
      for (const auto& cam : sc.cameras) {
        std::vector<int> expected;
        for (const auto& t : sc.targets) {
          if (sees_by_dot_product(cam, t)) expected.push_back(t.id);
        }
        CHECK(cam.coverage == expected);
      }
    }
  }
}

TEST_CASE("degenerate MCS table gives a constant rate") {
  ChannelParams ch;
  ch.shadowing_sigma_db = 0;
  ch.mcs_table = {{-std::numeric_limits<double>::infinity(), 4.0}};
  std::mt19937_64 rng(1);
  for (double d : {0.0, 10.0, 400.0, 5000.0}) {
    const auto rates = derive_rates({d, 0}, {0, 0}, ch, 6, rng);
    CHECK(rates == std::vector<double>(6, 4.0));
  }
}

TEST_CASE("rates do not increase with distance without shadowing") {
  ChannelParams ch;
  ch.shadowing_sigma_db = 0;
  std::mt19937_64 rng(1);
  std::vector<double> prev(4, 1e9);
  for (double d = 0; d <= 2000; d += 5) {
    const auto rates = derive_rates({d, 0}, {0, 0}, ch, 4, rng);
    for (std::size_t m = 0; m < rates.size(); ++m) CHECK(rates[m] <= prev[m]);
    prev = rates;
  }
  CHECK(prev[0] < 8.0);
}

TEST_CASE("channel model matches a straight-line reimplementation") {
  ChannelParams ch;
  std::mt19937_64 a(99), b(99), placement(5);
  std::uniform_real_distribution<double> dist(0.0, 360.0);
  std::normal_distribution<double> shadow(0.0, ch.shadowing_sigma_db);
  std::map<double, int> ours, theirs;
  for (int i = 0; i < 10000; ++i) {
    const double d = dist(placement);
    const auto rates = derive_rates({d, 0}, {0, 0}, ch, 1, a);
    ++ours[rates[0]];
    ++theirs[straight_line_rate(d, shadow(b))];
  }
  REQUIRE(ours.size() == theirs.size());
  for (const auto& [rate, count] : ours) {
    CHECK(std::fabs(count / 10000.0 - theirs[rate] / 10000.0) < 1e-3);
  }
}

TEST_CASE("noise floor and quantization") {
  ChannelParams ch;
  CHECK(noise_floor_dbm(ch) == doctest::Approx(-174 + 10 * std::log10(180000.0) + 5));
  CHECK(quantize_rate(ch, -1.0) == 2.0);
  CHECK(quantize_rate(ch, -1.0001) == 0.0);
  CHECK(quantize_rate(ch, 14.99) == 6.0);
  CHECK(quantize_rate(ch, 100) == 8.0);
  CHECK(mean_snr_db(ch, 0.0) == mean_snr_db(ch, 1.0));
}

TEST_CASE("generated rates are always table rates or zero") {
  ScenarioConfig cfg;
  cfg.deployment = Deployment::cell_edge;
  const auto sc = generate_scenario(cfg);
  const std::set<double> allowed{0, 2, 4, 6, 8};
  for (const auto& cam : sc.cameras) {
    REQUIRE(cam.subchannel_rates.size() == 50u);
    for (double r : cam.subchannel_rates) CHECK(allowed.contains(r));
  }
}

TEST_CASE("overall grid covers every probe point") {
  ScenarioConfig cfg;
  cfg.deployment = Deployment::overall_grid;
  cfg.camera.view_distance_min = cfg.camera.view_distance_max = 40;
  cfg.num_cameras = 81;
  const auto sc = generate_scenario(cfg);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 500.0);
  int uncovered = 0;
  for (int i = 0; i < 1000; ++i) {
    const Point p{u(rng), u(rng)};
    bool hit = false;
    for (const auto& cam : sc.cameras) hit = hit || distance(cam.position, p) <= 40.0;
    uncovered += !hit;
  }
  CHECK(uncovered == 0);
  CHECK(sc.uncovered_targets.empty());
}

TEST_CASE("overall grid with too few cameras is a config error") {
  ScenarioConfig cfg;
  cfg.deployment = Deployment::overall_grid;
  cfg.camera.view_distance_min = cfg.camera.view_distance_max = 40;
  cfg.num_cameras = 80;
  CHECK_THROWS_AS(generate_scenario(cfg), ConfigError);
}

TEST_CASE("partial random covers every target") {
  ScenarioConfig cfg;
  cfg.num_targets = 1;
  cfg.num_cameras = 1;
  auto sc = generate_scenario(cfg);
  REQUIRE(sc.cameras.size() == 1);
  CHECK(sc.cameras[0].coverage == std::vector<int>{1});
  for (auto kind : {GeometryKind::omnidirectional, GeometryKind::directional}) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      cfg = ScenarioConfig{};
      cfg.camera.kind = kind;
      cfg.camera.fov_deg = 30;
      cfg.seed = seed;
      sc = generate_scenario(cfg);
      CHECK(sc.uncovered_targets.empty());
    }
  }
  cfg = ScenarioConfig{};
  cfg.num_cameras = cfg.num_targets - 1;
  CHECK_THROWS_AS(generate_scenario(cfg), ConfigError);
}

TEST_CASE("cell edge keeps cameras and targets in the outer annulus") {
  ScenarioConfig cfg;
  cfg.deployment = Deployment::cell_edge;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    cfg.seed = seed;
    const auto sc = generate_scenario(cfg);
    const Point c{250, 250};
    for (const auto& cam : sc.cameras) CHECK(distance(cam.position, c) >= 0.8 * 250 - 1e-9);
    for (const auto& t : sc.targets) CHECK(distance(t.position, c) >= 0.8 * 250 - 1e-9);
    std::set<int> covered;
    for (const auto& cam : sc.cameras) covered.insert(cam.coverage.begin(), cam.coverage.end());
    for (int y : sc.uncovered_targets) CHECK_FALSE(covered.contains(y));
    CHECK(covered.size() + sc.uncovered_targets.size() == sc.targets.size());
  }
}

TEST_CASE("generation is deterministic and seed-sensitive") {
  ScenarioConfig cfg;
  cfg.seed = 42;
  CHECK(save_scenario(generate_scenario(cfg)) == save_scenario(generate_scenario(cfg)));
  auto other = cfg;
  other.seed = 43;
  CHECK(generate_scenario(cfg) != generate_scenario(other));
}

TEST_CASE("placement seed freezes positions while shadowing varies") {
  ScenarioConfig cfg;
  cfg.placement_seed = 7;
  cfg.seed = 1;
  const auto a = generate_scenario(cfg);
  cfg.seed = 2;
  const auto b = generate_scenario(cfg);
  REQUIRE(a.cameras.size() == b.cameras.size());
  bool rates_differ = false;
  for (std::size_t k = 0; k < a.cameras.size(); ++k) {
    CHECK(a.cameras[k].position == b.cameras[k].position);
    CHECK(a.cameras[k].coverage == b.cameras[k].coverage);
    rates_differ = rates_differ || a.cameras[k].subchannel_rates != b.cameras[k].subchannel_rates;
  }
  CHECK(a.targets == b.targets);
  CHECK(rates_differ);
}

TEST_CASE("camera ids are 1..K and rate requirements are integers in range") {
  ScenarioConfig cfg;
  const auto sc = generate_scenario(cfg);
  for (std::size_t k = 0; k < sc.cameras.size(); ++k) {
    CHECK(sc.cameras[k].id == static_cast<int>(k) + 1);
    const double r = sc.cameras[k].rate_requirement;
    CHECK(r == std::floor(r));
    CHECK(r >= 8);
    CHECK(r <= 32);
  }
}

TEST_CASE("config validation") {
  ScenarioConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  auto bad = cfg;
  bad.area_side = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.num_targets = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.rate_requirement_min = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.camera.kind = GeometryKind::directional;
  bad.camera.fov_deg = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.slot_capacity = {60};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.channel.mcs_table = {{5, 4}, {1, 6}};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("scenario documents round-trip") {
  for (auto d : {Deployment::partial_random, Deployment::cell_edge}) {
    ScenarioConfig cfg;
    cfg.deployment = d;
    cfg.camera.kind = GeometryKind::directional;
    cfg.num_slots = 3;
    cfg.slot_capacity = {50, 20, 0};
    const auto sc = generate_scenario(cfg);
    const auto text = save_scenario(sc);
    const auto back = load_scenario(text);
    CHECK(back == sc);
    CHECK(save_scenario(back) == text);
  }
}

TEST_CASE("hand-written documents keep explicit rates verbatim") {
  const auto sc = load_scenario(R"({
    "frame": {"M": 3, "T": 2},
    "targets": [{"id": 1, "x": 0, "y": 0}, {"id": 2, "x": 100, "y": 0}],
    "cameras": [
      {"id": 5, "x": 1, "y": 0, "geometry": {"type": "omnidirectional", "view_distance": 10},
       "rate_requirement": 9, "rates": [8, 4, 7]},
      {"id": 6, "x": 0, "y": 0, "geometry": {"type": "omnidirectional", "view_distance": 10},
       "rate_requirement": 9, "rates": [8, 4, 7], "slot_rates": [[1, 2, 3], [4, 5, 6]],
       "coverage": [2]}
    ]
  })");
  REQUIRE(sc.cameras.size() == 2);
  CHECK(sc.cameras[0].subchannel_rates == std::vector<double>{8, 4, 7});
  CHECK(sc.cameras[0].coverage == std::vector<int>{1});
  CHECK(sc.cameras[1].coverage == std::vector<int>{2});
  CHECK(sc.cameras[1].rate(2, 3) == 6.0);
  CHECK(sc.grid.slot_capacity == std::vector<int>{3, 3});
  CHECK(sc.uncovered_targets.empty());
  CHECK(load_scenario(save_scenario(sc)) == sc);
}

TEST_CASE("missing rates are derived from the channel") {
  const auto sc = load_scenario(R"({
    "frame": {"M": 4, "T": 1}, "seed": 3, "channel": {"shadowing_sigma_db": 0},
    "targets": [{"id": 1, "x": 250, "y": 250}],
    "cameras": [{"id": 1, "x": 250, "y": 260, "geometry": {"type": "omnidirectional", "view_distance": 20},
                 "rate_requirement": 9}]
  })");
  CHECK(sc.cameras[0].subchannel_rates == std::vector<double>(4, 8.0));
}

namespace {
std::string parse_error_field(const std::string& text) {
  try {
    load_scenario(text);
  } catch (const ParseError& e) {
    return e.field();
  }
  return "<none>";
}
}  // namespace

TEST_CASE("schema violations name the offending field") {
  const std::string head = R"({"frame": {"M": 2, "T": 1}, "targets": [{"id": 1, "x": 0, "y": 0}], "cameras": [)";
  const std::string geo = R"("geometry": {"type": "omnidirectional", "view_distance": 5})";
  CHECK(parse_error_field(head + R"({"id": 1, "x": 0, "y": 0, )" + geo + R"(, "rates": [1, 2]}]})") ==
        "cameras[0].rate_requirement");
  CHECK(parse_error_field(head + R"({"id": 1, "x": 0, "y": 0, )" + geo + R"(, "rate_requirement": 4}]})") ==
        "cameras[0].rates");
  CHECK(parse_error_field(head + R"({"id": 1, "x": 0, "y": 0, )" + geo +
                          R"(, "rate_requirement": 4, "rates": [1]}]})") == "cameras[0].rates");
  CHECK(parse_error_field(head + R"({"id": 1, "x": 0, "y": 0, )" + geo +
                          R"(, "rate_requirement": 4, "rates": [1, -1]}]})") == "cameras[0].rates[1]");
  CHECK(parse_error_field(head + R"({"id": 1, "x": "a", "y": 0, )" + geo +
                          R"(, "rate_requirement": 4, "rates": [1, 1]}]})") == "cameras[0].x");
  CHECK(parse_error_field(head + R"({"id": 1, "x": 0, "y": 0, "geometry": {"type": "fisheye", "view_distance": 5})" +
                          R"(, "rate_requirement": 4, "rates": [1, 1]}]})") == "cameras[0].geometry.type");
  CHECK(parse_error_field(head + R"({"id": 1, "x": 0, "y": 0, )" + geo +
                          R"(, "rate_requirement": 4, "rates": [1, 1], "coverage": [3]}]})") ==
        "cameras[0].coverage[0]");
  CHECK(parse_error_field(R"({"targets": [], "cameras": []})") == "frame");
  CHECK(parse_error_field(R"({"frame": {"M": 0, "T": 1}, "targets": [], "cameras": []})") == "frame.M");
  CHECK(parse_error_field("{not json") == "scenario");
}

TEST_CASE("config documents round-trip") {
  ScenarioConfig cfg;
  cfg.deployment = Deployment::cell_edge;
  cfg.camera.kind = GeometryKind::directional;
  cfg.camera.fov_deg = 90;
  cfg.placement_seed = 12;
  cfg.seed = 0xFFFF'FFFF'FFFF'FFF0ull;
  cfg.slot_capacity = std::vector<int>(20, 30);
  CHECK(config_from_json(config_to_json(cfg)) == cfg);
  CHECK(config_from_json(nlohmann::json::object()) == ScenarioConfig{});
  CHECK(deployment_from_string("random") == Deployment::partial_random);
  CHECK_THROWS_AS(deployment_from_string("ring"), ParseError);
}
