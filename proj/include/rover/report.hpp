#pragma once

// JSON views of engine values: events.jsonl lines, metrics.json, and the
// pieces shared with the gateway protocol. Key order is fixed so output is
// byte-stable.

#include <ostream>
#include <string>

#include <json.hpp>

#include "rover/engine.hpp"

namespace rover {

using ojson = nlohmann::ordered_json;

inline ojson to_json(const Pose& p) {
  return ojson{{"x_m", p.x_m}, {"y_m", p.y_m}, {"heading_rad", p.heading_rad}};
}

inline ojson to_json(const LinkStats& s) {
  return ojson{{"frames_sent", s.frames_sent},
               {"frames_delivered", s.frames_delivered},
               {"retransmissions", s.retransmissions},
               {"frames_dropped", s.frames_dropped}};
}

inline ojson to_json(const GasReading& g) {
  return ojson{{"co_ppm", g.co_ppm}, {"lpg_ppm", g.lpg_ppm}, {"ch4_ppm", g.ch4_ppm}, {"alarm", g.alarm}};
}

inline char cell_glyph(CellState c) {
  switch (c) {
    case CellState::Free: return '.';
    case CellState::Rubble: return '#';
    case CellState::Unknown: break;
  }
  return '?';
}

// Rows bottom-up (row j = origin.iy + j), one glyph per cell.
inline ojson to_json(const CameraSnapshot& snap) {
  ojson rows = ojson::array();
  for (int j = 0; j < snap.side; ++j) {
    std::string row;
    row.reserve(static_cast<std::size_t>(snap.side));
    for (int i = 0; i < snap.side; ++i) row.push_back(cell_glyph(snap.at(i, j)));
    rows.push_back(std::move(row));
  }
  return ojson{{"resolution_m", snap.resolution_m},
               {"origin", {snap.origin.ix, snap.origin.iy}},
               {"side", snap.side},
               {"rows", std::move(rows)},
               {"robot_pose", to_json(snap.robot_pose)}};
}

inline ojson to_json(const TelemetryEvent& ev) {
  ojson j{{"tick", ev.tick}, {"kind", std::string(to_string(ev.kind()))}, {"delivered", ev.delivered}};
  std::visit(
      [&j](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DetectionInfo>) {
          j["body_id"] = p.body_id;
          j["body_kind"] = std::string(to_string(p.body_kind));
        } else if constexpr (std::is_same_v<T, GasReading>) {
          j["gas"] = to_json(p);
        } else {
          j["pose"] = to_json(p.pose);
          j["command"] = std::string(to_string(p.command));
          j["uplink"] = to_json(p.uplink);
          j["downlink"] = to_json(p.downlink);
        }
      },
      ev.payload);
  return j;
}

inline ojson to_json(const MetricsReport& m) {
  ojson first = ojson::object();
  for (const auto& [id, tick] : m.first_detection_tick) first[id] = tick;
  return ojson{{"scenario", m.scenario},
               {"seed", m.seed},
               {"ticks", m.ticks},
               {"humans_detected", m.humans_detected},
               {"humans_total", m.humans_total},
               {"animals_detected", m.animals_detected},
               {"animals_total", m.animals_total},
               {"detections_delivered", m.detections_delivered},
               {"tick_of_first_detection", std::move(first)},
               {"uplink", to_json(m.uplink)},
               {"downlink", to_json(m.downlink)},
               {"distance_traveled_m", m.distance_traveled_m},
               {"gas_alarms", m.gas_alarms},
               {"auto_stops", m.auto_stops}};
}

inline void write_event_line(std::ostream& out, const TelemetryEvent& ev) { out << to_json(ev).dump() << '\n'; }

inline void write_events_jsonl(std::ostream& out, std::span<const TelemetryEvent> events) {
  for (const auto& ev : events) write_event_line(out, ev);
}

inline void write_metrics_json(std::ostream& out, const MetricsReport& m) { out << to_json(m).dump(2) << '\n'; }

}  // namespace rover
