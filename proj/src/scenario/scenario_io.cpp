#include "csrap/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "csrap/errors.hpp"

namespace csrap {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path.empty() ? "<document>" : path, "expected an object");
}

const json& required(const json& obj, const std::string& key, const std::string& path) {
  expect_object(obj, path);
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(join(path, key), "missing required field");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key, const std::string& path) {
  expect_object(obj, path);
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double as_number(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "inf") return std::numeric_limits<double>::infinity();
  }
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<int>();
}

std::uint64_t as_seed(const json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0))
    throw ParseError(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

json number_or_inf(double v) {
  if (std::isinf(v)) return v < 0 ? json("-inf") : json("inf");
  return v;
}

double number_or(const json& obj, const std::string& key, const std::string& path,
                 double fallback) {
  const json* j = optional_field(obj, key, path);
  return j ? as_number(*j, join(path, key)) : fallback;
}

int int_or(const json& obj, const std::string& key, const std::string& path, int fallback) {
  const json* j = optional_field(obj, key, path);
  return j ? as_int(*j, join(path, key)) : fallback;
}

std::vector<double> rate_list(const json& j, const std::string& path, int expected) {
  if (!j.is_array()) throw ParseError(path, "expected an array of rates");
  if (static_cast<int>(j.size()) != expected)
    throw ParseError(path, "expected " + std::to_string(expected) + " rates, got " +
                               std::to_string(j.size()));
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const double r = as_number(j[i], index(path, i));
    if (!(r >= 0.0) || std::isinf(r)) throw ParseError(index(path, i), "rate must be finite and >= 0");
    out.push_back(r);
  }
  return out;
}

json geometry_to_json(const CameraGeometry& g) {
  if (g.kind == GeometryKind::omnidirectional)
    return {{"type", "omnidirectional"}, {"view_distance", g.view_distance}};
  return {{"type", "directional"},
          {"view_distance", g.view_distance},
          {"orientation", g.orientation_deg},
          {"fov", g.fov_deg}};
}

CameraGeometry geometry_from_json(const json& j, const std::string& path) {
  const json& type = required(j, "type", path);
  if (!type.is_string()) throw ParseError(join(path, "type"), "expected a string");
  const double view = as_number(required(j, "view_distance", path), join(path, "view_distance"));
  if (!(view > 0.0)) throw ParseError(join(path, "view_distance"), "must be > 0");
  const auto kind = type.get<std::string>();
  if (kind == "omnidirectional") return CameraGeometry::omnidirectional(view);
  if (kind == "directional") {
    const double orient = number_or(j, "orientation", path, 0.0);
    const double fov = as_number(required(j, "fov", path), join(path, "fov"));
    if (!(fov > 0.0 && fov <= 360.0)) throw ParseError(join(path, "fov"), "must lie in (0, 360]");
    return CameraGeometry::directional(view, orient, fov);
  }
  throw ParseError(join(path, "type"), "unknown geometry '" + kind + "'");
}

FrameGrid frame_from_json(const json& j, const std::string& path) {
  FrameGrid grid;
  grid.num_subchannels = as_int(required(j, "M", path), join(path, "M"));
  grid.num_slots = as_int(required(j, "T", path), join(path, "T"));
  if (grid.num_subchannels < 1) throw ParseError(join(path, "M"), "must be >= 1");
  if (grid.num_slots < 1) throw ParseError(join(path, "T"), "must be >= 1");
  grid.frame_duration_ms = number_or(j, "rho_ms", path, 10.0);
  if (!(grid.frame_duration_ms > 0.0)) throw ParseError(join(path, "rho_ms"), "must be > 0");
  if (const json* cap = optional_field(j, "slot_capacity", path)) {
    const auto cpath = join(path, "slot_capacity");
    if (!cap->is_array() || static_cast<int>(cap->size()) != grid.num_slots)
      throw ParseError(cpath, "expected an array of T capacities");
    for (std::size_t i = 0; i < cap->size(); ++i) {
      const int c = as_int((*cap)[i], index(cpath, i));
      if (c < 0 || c > grid.num_subchannels) throw ParseError(index(cpath, i), "must lie in [0, M]");
      grid.slot_capacity.push_back(c);
    }
  } else {
    grid.slot_capacity.assign(grid.num_slots, grid.num_subchannels);
  }
  return grid;
}

json frame_to_json(const FrameGrid& g) {
  return {{"M", g.num_subchannels},
          {"T", g.num_slots},
          {"slot_capacity", g.slot_capacity},
          {"rho_ms", g.frame_duration_ms}};
}

std::mt19937_64 document_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 1u};
  return std::mt19937_64(seq);
}

}  // namespace

json channel_to_json(const ChannelParams& c) {
  json table = json::array();
  for (const auto& level : c.mcs_table)
    table.push_back({{"snr_threshold_db", number_or_inf(level.snr_threshold_db)}, {"rate", level.rate}});
  return {{"tx_power_dbm", c.tx_power_dbm},
          {"pathloss_intercept_db", c.pathloss_intercept_db},
          {"pathloss_slope_db", c.pathloss_slope_db},
          {"shadowing_sigma_db", c.shadowing_sigma_db},
          {"noise_figure_db", c.noise_figure_db},
          {"rb_bandwidth_hz", c.rb_bandwidth_hz},
          {"mcs_table", table}};
}

ChannelParams channel_from_json(const json& j, const std::string& path) {
  expect_object(j, path);
  ChannelParams c;
  c.tx_power_dbm = number_or(j, "tx_power_dbm", path, c.tx_power_dbm);
  c.pathloss_intercept_db = number_or(j, "pathloss_intercept_db", path, c.pathloss_intercept_db);
  c.pathloss_slope_db = number_or(j, "pathloss_slope_db", path, c.pathloss_slope_db);
  c.shadowing_sigma_db = number_or(j, "shadowing_sigma_db", path, c.shadowing_sigma_db);
  c.noise_figure_db = number_or(j, "noise_figure_db", path, c.noise_figure_db);
  c.rb_bandwidth_hz = number_or(j, "rb_bandwidth_hz", path, c.rb_bandwidth_hz);
  if (const json* table = optional_field(j, "mcs_table", path)) {
    const auto tpath = join(path, "mcs_table");
    if (!table->is_array()) throw ParseError(tpath, "expected an array");
    c.mcs_table.clear();
    for (std::size_t i = 0; i < table->size(); ++i) {
      const auto ipath = index(tpath, i);
      const auto& entry = (*table)[i];
      c.mcs_table.push_back(
          {as_number(required(entry, "snr_threshold_db", ipath), join(ipath, "snr_threshold_db")),
           as_number(required(entry, "rate", ipath), join(ipath, "rate"))});
    }
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
  return c;
}

json scenario_to_json(const Scenario& sc) {
  json cams = json::array();
  for (const auto& cam : sc.cameras) {
    json c = {{"id", cam.id},
              {"x", cam.position.x},
              {"y", cam.position.y},
              {"geometry", geometry_to_json(cam.geometry)},
              {"rate_requirement", cam.rate_requirement},
              {"rates", cam.subchannel_rates},
              {"coverage", cam.coverage}};
    if (!cam.slot_rates.empty()) c["slot_rates"] = cam.slot_rates;
    cams.push_back(std::move(c));
  }
  json targets = json::array();
  for (const auto& t : sc.targets)
    targets.push_back({{"id", t.id}, {"x", t.position.x}, {"y", t.position.y}});

  json doc = {{"area", sc.area_side},
              {"frame", frame_to_json(sc.grid)},
              {"cameras", cams},
              {"targets", targets},
              {"seed", sc.seed}};
  if (sc.channel) doc["channel"] = channel_to_json(*sc.channel);
  return doc;
}

Scenario scenario_from_json(const json& doc) {
  expect_object(doc, "");
  Scenario sc;
  sc.area_side = number_or(doc, "area", "", 500.0);
  if (!(sc.area_side > 0.0)) throw ParseError("area", "must be > 0");
  sc.grid = frame_from_json(required(doc, "frame", ""), "frame");
  if (const json* seed = optional_field(doc, "seed", "")) sc.seed = as_seed(*seed, "seed");
  if (const json* ch = optional_field(doc, "channel", "")) sc.channel = channel_from_json(*ch, "channel");

  const json& targets = required(doc, "targets", "");
  if (!targets.is_array()) throw ParseError("targets", "expected an array");
  std::set<int> target_ids;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto path = index("targets", i);
    TargetObject t;
    t.id = as_int(required(targets[i], "id", path), join(path, "id"));
    t.position = {as_number(required(targets[i], "x", path), join(path, "x")),
                  as_number(required(targets[i], "y", path), join(path, "y"))};
    if (!target_ids.insert(t.id).second) throw ParseError(join(path, "id"), "duplicate target id");
    sc.targets.push_back(t);
  }

  const json& cameras = required(doc, "cameras", "");
  if (!cameras.is_array()) throw ParseError("cameras", "expected an array");
  std::set<int> camera_ids;
  auto rng = document_rng(sc.seed);
  const Point bs{sc.area_side / 2.0, sc.area_side / 2.0};
  for (std::size_t i = 0; i < cameras.size(); ++i) {
    const auto path = index("cameras", i);
    const json& cj = cameras[i];
    CameraNode cam;
    cam.id = as_int(required(cj, "id", path), join(path, "id"));
    if (!camera_ids.insert(cam.id).second) throw ParseError(join(path, "id"), "duplicate camera id");
    cam.position = {as_number(required(cj, "x", path), join(path, "x")),
                    as_number(required(cj, "y", path), join(path, "y"))};
    cam.geometry = geometry_from_json(required(cj, "geometry", path), join(path, "geometry"));
    cam.rate_requirement =
        as_number(required(cj, "rate_requirement", path), join(path, "rate_requirement"));
    if (!(cam.rate_requirement > 0.0) || std::isinf(cam.rate_requirement))
      throw ParseError(join(path, "rate_requirement"), "must be finite and > 0");

    if (const json* rates = optional_field(cj, "rates", path)) {
      cam.subchannel_rates = rate_list(*rates, join(path, "rates"), sc.grid.num_subchannels);
    } else if (sc.channel) {
      cam.subchannel_rates = derive_rates(cam.position, bs, *sc.channel, sc.grid.num_subchannels, rng);
    } else {
      throw ParseError(join(path, "rates"), "missing and no channel to derive rates from");
    }
    if (const json* slot_rates = optional_field(cj, "slot_rates", path)) {
      const auto spath = join(path, "slot_rates");
      if (!slot_rates->is_array() || static_cast<int>(slot_rates->size()) != sc.grid.num_slots)
        throw ParseError(spath, "expected T rows of rates");
      for (std::size_t t = 0; t < slot_rates->size(); ++t)
        cam.slot_rates.push_back(rate_list((*slot_rates)[t], index(spath, t), sc.grid.num_subchannels));
    }
    if (const json* cov = optional_field(cj, "coverage", path)) {
      const auto cpath = join(path, "coverage");
      if (!cov->is_array()) throw ParseError(cpath, "expected an array of target ids");
      std::set<int> ids;
      for (std::size_t k = 0; k < cov->size(); ++k) {
        const int id = as_int((*cov)[k], index(cpath, k));
        if (!target_ids.contains(id)) throw ParseError(index(cpath, k), "unknown target id");
        ids.insert(id);
      }
      cam.coverage.assign(ids.begin(), ids.end());
    } else {
      cam.coverage = compute_coverage(cam, sc.targets);
    }
    sc.cameras.push_back(std::move(cam));
  }
  sc.refresh_uncovered();
  return sc;
}

std::string save_scenario(const Scenario& scenario) {
  return scenario_to_json(scenario).dump(2) + "\n";
}

Scenario load_scenario(std::string_view text) {
  return scenario_from_json(parse_json(text, "scenario"));
}

std::string to_string(Deployment d) {
  switch (d) {
    case Deployment::overall_grid: return "overall_grid";
    case Deployment::partial_random: return "partial_random";
    case Deployment::cell_edge: return "cell_edge";
  }
  return "unknown";
}

Deployment deployment_from_string(const std::string& name) {
  if (name == "overall_grid") return Deployment::overall_grid;
  if (name == "partial_random" || name == "random") return Deployment::partial_random;
  if (name == "cell_edge") return Deployment::cell_edge;
  throw ParseError("deployment", "unknown deployment '" + name + "'");
}

json config_to_json(const ScenarioConfig& c) {
  json cam = {{"type", c.camera.kind == GeometryKind::omnidirectional ? "omnidirectional" : "directional"},
              {"view_distance_min", c.camera.view_distance_min},
              {"view_distance_max", c.camera.view_distance_max},
              {"fov", c.camera.fov_deg}};
  FrameGrid frame = c.frame();
  json doc = {{"area_side", c.area_side},
              {"num_targets", c.num_targets},
              {"num_cameras", c.num_cameras},
              {"deployment", to_string(c.deployment)},
              {"camera", cam},
              {"rate_requirement", {{"min", c.rate_requirement_min}, {"max", c.rate_requirement_max}}},
              {"frame", frame_to_json(frame)},
              {"channel", channel_to_json(c.channel)},
              {"seed", c.seed}};
  if (c.placement_seed) doc["placement_seed"] = *c.placement_seed;
  return doc;
}

ScenarioConfig config_from_json(const json& doc) {
  expect_object(doc, "");
  ScenarioConfig c;
  c.area_side = number_or(doc, "area_side", "", c.area_side);
  c.num_targets = int_or(doc, "num_targets", "", c.num_targets);
  c.num_cameras = int_or(doc, "num_cameras", "", c.num_cameras);
  if (const json* d = optional_field(doc, "deployment", "")) {
    if (!d->is_string()) throw ParseError("deployment", "expected a string");
    c.deployment = deployment_from_string(d->get<std::string>());
  }
  if (const json* cam = optional_field(doc, "camera", "")) {
    if (const json* type = optional_field(*cam, "type", "camera")) {
      const auto kind = type->is_string() ? type->get<std::string>() : std::string{};
      if (kind == "omnidirectional") c.camera.kind = GeometryKind::omnidirectional;
      else if (kind == "directional") c.camera.kind = GeometryKind::directional;
      else throw ParseError("camera.type", "expected 'omnidirectional' or 'directional'");
    }
    c.camera.view_distance_min = number_or(*cam, "view_distance_min", "camera", c.camera.view_distance_min);
    c.camera.view_distance_max = number_or(*cam, "view_distance_max", "camera", c.camera.view_distance_max);
    c.camera.fov_deg = number_or(*cam, "fov", "camera", c.camera.fov_deg);
  }
  if (const json* r = optional_field(doc, "rate_requirement", "")) {
    c.rate_requirement_min = number_or(*r, "min", "rate_requirement", c.rate_requirement_min);
    c.rate_requirement_max = number_or(*r, "max", "rate_requirement", c.rate_requirement_max);
  }
  if (const json* f = optional_field(doc, "frame", "")) {
    c.num_subchannels = int_or(*f, "M", "frame", c.num_subchannels);
    c.num_slots = int_or(*f, "T", "frame", c.num_slots);
    c.frame_duration_ms = number_or(*f, "rho_ms", "frame", c.frame_duration_ms);
    if (const json* cap = optional_field(*f, "slot_capacity", "frame")) {
      if (!cap->is_array()) throw ParseError("frame.slot_capacity", "expected an array");
      c.slot_capacity.clear();
      for (std::size_t i = 0; i < cap->size(); ++i)
        c.slot_capacity.push_back(as_int((*cap)[i], index("frame.slot_capacity", i)));
      // A capacity equal to M everywhere is the default; keep configs canonical.
      if (std::all_of(c.slot_capacity.begin(), c.slot_capacity.end(),
                      [&](int v) { return v == c.num_subchannels; }) &&
          static_cast<int>(c.slot_capacity.size()) == c.num_slots)
        c.slot_capacity.clear();
    }
  }
  if (const json* ch = optional_field(doc, "channel", "")) c.channel = channel_from_json(*ch, "channel");
  if (const json* seed = optional_field(doc, "seed", "")) c.seed = as_seed(*seed, "seed");
  if (const json* ps = optional_field(doc, "placement_seed", "")) c.placement_seed = as_seed(*ps, "placement_seed");
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace csrap
