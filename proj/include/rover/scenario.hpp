#pragma once

// Scenario model and its JSON loader. Schema: docs/scenario.md.

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rover/drive.hpp"
#include "rover/error.hpp"
#include "rover/sensors.hpp"
#include "rover/world.hpp"

namespace rover {

struct Scenario {
  std::string name{"scenario"};
  World world;
  std::vector<WarmBody> bodies;
  std::vector<GasSource> gas_sources;
  Vec2 base_position;
  Pose robot_start;
  std::uint64_t seed{0};
  std::int64_t max_ticks{1200};
  PirConfig pir;
  DriveParams drive;
};

inline void validate(const Scenario& s) {
  const auto& w = s.world;
  if (!(w.width_m > 0.0) || !(w.height_m > 0.0)) throw ValidationError("world_size_m", "dimensions must be positive");
  if (s.max_ticks <= 0) throw ValidationError("max_ticks", "must be positive");
  if (!w.in_bounds(s.robot_start.position())) throw ValidationError("robot_start", "outside world bounds");
  if (w.is_rubble(cell_of(s.robot_start.position()))) throw ValidationError("robot_start", "inside a rubble cell");
  if (!w.in_bounds(s.base_position)) throw ValidationError("base_position", "outside world bounds");

  std::set<std::string> ids;
  for (const auto& b : s.bodies) {
    if (b.id.empty()) throw ValidationError("bodies", "body id must be non-empty");
    if (!ids.insert(b.id).second) throw ValidationError("bodies", "duplicate body id '" + b.id + "'");
    if (!w.in_bounds(b.position)) throw ValidationError("bodies", "body '" + b.id + "' outside world bounds");
  }
  for (const auto& g : s.gas_sources) {
    if (!(g.c0_ppm > 0.0)) throw ValidationError("gas_sources", "c0_ppm must be positive");
    if (!(g.r0_m > 0.0)) throw ValidationError("gas_sources", "r0_m must be positive");
  }

  const auto& p = s.pir;
  if (!(p.range_m > 0.0) || !(p.cone_half_angle_rad > 0.0) || !(p.sweep_amplitude_rad > 0.0) ||
      !(p.sweep_period_s > 0.0) || !(p.min_relative_motion_rad > 0.0)) {
    throw ValidationError("pir", "parameters must be positive");
  }
  if (p.sweep_amplitude_rad > std::numbers::pi) throw ValidationError("pir", "sweep amplitude exceeds pi");
}

namespace detail {

using nlohmann::json;

inline Vec2 read_vec2(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(field, "expected [x, y] in meters");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
T read_or(const json& obj, const char* key, T fallback, const std::string& field) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ValidationError(field + "." + key, "wrong type");
  }
}

inline BodyKind read_kind(const std::string& s) {
  if (s == "human") return BodyKind::Human;
  if (s == "animal") return BodyKind::Animal;
  throw ValidationError("bodies.kind", "expected 'human' or 'animal', got '" + s + "'");
}

inline GasSpecies read_species(const std::string& s) {
  if (s == "CO") return GasSpecies::CO;
  if (s == "LPG") return GasSpecies::LPG;
  if (s == "CH4") return GasSpecies::CH4;
  throw ValidationError("gas_sources.species", "expected CO, LPG or CH4, got '" + s + "'");
}

inline Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("<root>", "scenario must be a JSON object");
  Scenario s;
  s.name = read_or<std::string>(doc, "name", s.name, "name");

  if (!doc.contains("world_size_m")) throw ValidationError("world_size_m", "required");
  const Vec2 size = read_vec2(doc["world_size_m"], "world_size_m");
  s.world.width_m = size.x;
  s.world.height_m = size.y;

  if (!doc.contains("seed")) throw ValidationError("seed", "required");
  if (!doc["seed"].is_number_unsigned()) throw ValidationError("seed", "must be a non-negative integer");
  s.seed = doc["seed"].get<std::uint64_t>();

  s.max_ticks = read_or<std::int64_t>(doc, "max_ticks", s.max_ticks, "max_ticks");

  if (const auto it = doc.find("rubble"); it != doc.end()) {
    if (!it->is_array()) throw ValidationError("rubble", "expected an array of [ix, iy]");
    for (const auto& c : *it) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
        throw ValidationError("rubble", "expected integer [ix, iy] cell");
      }
      s.world.rubble.insert({c[0].get<std::int64_t>(), c[1].get<std::int64_t>()});
    }
  }

  s.robot_start = {size.x / 2.0, size.y / 2.0, 0.0};
  if (const auto it = doc.find("robot_start"); it != doc.end()) {
    if (!it->is_object()) throw ValidationError("robot_start", "expected {x_m, y_m, heading_rad}");
    s.robot_start.x_m = read_or<double>(*it, "x_m", s.robot_start.x_m, "robot_start");
    s.robot_start.y_m = read_or<double>(*it, "y_m", s.robot_start.y_m, "robot_start");
    s.robot_start.heading_rad = normalize_angle(read_or<double>(*it, "heading_rad", 0.0, "robot_start"));
  }
  s.base_position = s.robot_start.position();
  if (const auto it = doc.find("base_position"); it != doc.end()) s.base_position = read_vec2(*it, "base_position");

  if (const auto it = doc.find("bodies"); it != doc.end()) {
    if (!it->is_array()) throw ValidationError("bodies", "expected an array");
    for (const auto& b : *it) {
      if (!b.is_object()) throw ValidationError("bodies", "expected objects");
      WarmBody body;
      if (!b.contains("id")) throw ValidationError("bodies.id", "required");
      body.id = b["id"].is_string() ? b["id"].get<std::string>() : b["id"].dump();
      body.kind = read_kind(read_or<std::string>(b, "kind", "human", "bodies"));
      if (!b.contains("position")) throw ValidationError("bodies.position", "required");
      body.position = read_vec2(b["position"], "bodies.position");
      body.stationary = read_or<bool>(b, "stationary", true, "bodies");
      s.bodies.push_back(std::move(body));
    }
  }

  if (const auto it = doc.find("gas_sources"); it != doc.end()) {
    if (!it->is_array()) throw ValidationError("gas_sources", "expected an array");
    for (const auto& g : *it) {
      if (!g.is_object()) throw ValidationError("gas_sources", "expected objects");
      GasSource src;
      src.species = read_species(read_or<std::string>(g, "species", "", "gas_sources"));
      if (!g.contains("position")) throw ValidationError("gas_sources.position", "required");
      src.position = read_vec2(g["position"], "gas_sources.position");
      src.c0_ppm = read_or<double>(g, "c0_ppm", 0.0, "gas_sources");
      src.r0_m = read_or<double>(g, "r0_m", 0.0, "gas_sources");
      s.gas_sources.push_back(src);
    }
  }

  if (const auto it = doc.find("pir"); it != doc.end()) {
    if (!it->is_object()) throw ValidationError("pir", "expected an object");
    auto& p = s.pir;
    p.range_m = read_or<double>(*it, "range_m", p.range_m, "pir");
    p.cone_half_angle_rad = read_or<double>(*it, "cone_half_angle_rad", p.cone_half_angle_rad, "pir");
    p.sweep_amplitude_rad = read_or<double>(*it, "sweep_amplitude_rad", p.sweep_amplitude_rad, "pir");
    p.sweep_period_s = read_or<double>(*it, "sweep_period_s", p.sweep_period_s, "pir");
    p.min_relative_motion_rad = read_or<double>(*it, "min_relative_motion_rad", p.min_relative_motion_rad, "pir");
    p.sweep_enabled = read_or<bool>(*it, "sweep_enabled", p.sweep_enabled, "pir");
  }

  validate(s);
  return s;
}

}  // namespace detail

// Parses and validates a scenario document. Throws ParseError on malformed
// JSON, ValidationError naming the field on invariant violations.
inline Scenario load_scenario(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  return detail::scenario_from_json(doc);
}

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace rover
