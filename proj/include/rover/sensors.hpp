#pragma once

// Robot-side sensing: sweeping PIR, MQ-9 style gas sampling, camera
// occupancy snapshot.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "rover/drive.hpp"
#include "rover/geometry.hpp"
#include "rover/world.hpp"

namespace rover {

struct PirConfig {
  double range_m{7.0};
  double cone_half_angle_rad{deg_to_rad(55.0)};
  double sweep_amplitude_rad{deg_to_rad(90.0)};
  double sweep_period_s{4.0};
  double min_relative_motion_rad{deg_to_rad(0.5)};
  bool sweep_enabled{true};
};

enum class BodyKind : std::uint8_t { Human = 0x01, Animal = 0x02 };

inline constexpr std::string_view to_string(BodyKind k) noexcept {
  return k == BodyKind::Human ? "human" : "animal";
}

struct WarmBody {
  std::string id;
  BodyKind kind{BodyKind::Human};
  Vec2 position;
  bool stationary{true};
};

enum class GasSpecies : std::uint8_t { CO, LPG, CH4 };

struct GasSource {
  GasSpecies species{GasSpecies::CO};
  Vec2 position;
  double c0_ppm{0.0};
  double r0_m{1.0};
};

namespace gas {
inline constexpr double kCoAlarmPpm = 200.0;
inline constexpr double kLpgAlarmPpm = 1000.0;
inline constexpr double kCh4AlarmPpm = 5000.0;
}  // namespace gas

struct GasReading {
  double co_ppm{0.0};
  double lpg_ppm{0.0};
  double ch4_ppm{0.0};
  bool alarm{false};

  friend bool operator==(const GasReading&, const GasReading&) = default;
};

// ---------------------------------------------------------------------------
// PIR

// Boresight offset from the robot heading. The mount oscillates
// sinusoidally; disabled sweep parks it straight ahead.
inline double sweep_angle(std::int64_t tick, const PirConfig& cfg, const DriveParams& params) {
  if (!cfg.sweep_enabled) return 0.0;
  const double t = static_cast<double>(tick) * params.dt;
  return cfg.sweep_amplitude_rad * std::sin(2.0 * std::numbers::pi * t / cfg.sweep_period_s);
}

struct PirObservation {
  bool in_cone{false};
  double bearing_rad{0.0};  // in the sensor frame

  friend bool operator==(const PirObservation&, const PirObservation&) = default;
};

// Per-body observation from the previous tick, keyed by body id.
using PirFrame = std::map<std::string, PirObservation>;

struct PirResult {
  bool output{false};
  std::vector<std::string> detected_ids;
  PirFrame frame;
};

inline PirObservation observe(const Pose& pose, double boresight_rad, const WarmBody& body, const PirConfig& cfg) {
  const double dx = body.position.x - pose.x_m;
  const double dy = body.position.y - pose.y_m;
  const double range = std::hypot(dx, dy);
  const double bearing = normalize_angle(std::atan2(dy, dx) - (pose.heading_rad + boresight_rad));
  return {range <= cfg.range_m && std::abs(bearing) <= cfg.cone_half_angle_rad, bearing};
}

// Observe every body at the given pose/boresight without evaluating triggers.
inline PirFrame pir_snapshot(const Pose& pose, double boresight_rad, std::span<const WarmBody> bodies,
                             const PirConfig& cfg) {
  PirFrame frame;
  for (const auto& b : bodies) frame.emplace(b.id, observe(pose, boresight_rad, b, cfg));
  return frame;
}

// The output goes high on any cone-membership edge, or on an in-cone body
// whose sensor-frame bearing moved by at least min_relative_motion_rad since
// the previous tick. Only bodies within range are reported as detected.
inline PirResult pir_sense(const Pose& pose, double boresight_rad, const PirFrame& prev_frame,
                           std::span<const WarmBody> bodies, const PirConfig& cfg) {
  PirResult result;
  for (const auto& body : bodies) {
    const PirObservation now = observe(pose, boresight_rad, body, cfg);
    result.frame.emplace(body.id, now);

    const auto it = prev_frame.find(body.id);
    const PirObservation prev = it != prev_frame.end() ? it->second : PirObservation{};
    const bool edge = now.in_cone != prev.in_cone;
    const bool moved =
        now.in_cone && std::abs(normalize_angle(now.bearing_rad - prev.bearing_rad)) >= cfg.min_relative_motion_rad;
    if (!edge && !moved) continue;

    result.output = true;
    if (distance(pose.position(), body.position) <= cfg.range_m) result.detected_ids.push_back(body.id);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Gas

inline bool gas_alarm(double co, double lpg, double ch4) {
  return co >= gas::kCoAlarmPpm || lpg >= gas::kLpgAlarmPpm || ch4 >= gas::kCh4AlarmPpm;
}

// Each source contributes c0 / (1 + (r/r0)^2).
inline GasReading gas_sense(Vec2 position, std::span<const GasSource> sources) {
  GasReading r;
  for (const auto& s : sources) {
    const double q = distance(position, s.position) / s.r0_m;
    const double c = s.c0_ppm / (1.0 + q * q);
    switch (s.species) {
      case GasSpecies::CO: r.co_ppm += c; break;
      case GasSpecies::LPG: r.lpg_ppm += c; break;
      case GasSpecies::CH4: r.ch4_ppm += c; break;
    }
  }
  r.alarm = gas_alarm(r.co_ppm, r.lpg_ppm, r.ch4_ppm);
  return r;
}

// ---------------------------------------------------------------------------
// Camera

enum class CellState : std::uint8_t { Unknown, Free, Rubble };

namespace camera {
inline constexpr double kResolutionM = kCellSizeM;
inline constexpr double kRadiusM = 3.0;
inline constexpr int kHalfCells = 12;
inline constexpr int kSideCells = 2 * kHalfCells + 1;
}  // namespace camera

// World-aligned square grid centered on the robot's cell. cells[j * side + i]
// is world cell (origin.ix + i, origin.iy + j).
struct CameraSnapshot {
  double resolution_m{camera::kResolutionM};
  int side{camera::kSideCells};
  Cell origin;
  std::vector<CellState> cells;
  Pose robot_pose;

  CellState at(int i, int j) const { return cells[static_cast<std::size_t>(j * side + i)]; }

  CellState at_world(Cell c) const {
    const auto i = c.ix - origin.ix;
    const auto j = c.iy - origin.iy;
    if (i < 0 || j < 0 || i >= side || j >= side) return CellState::Unknown;
    return at(static_cast<int>(i), static_cast<int>(j));
  }
};

// Bodies are never revealed: they are buried, only the PIR can find them.
inline CameraSnapshot camera_capture(const Pose& pose, const World& world) {
  CameraSnapshot snap;
  snap.robot_pose = pose;
  const Cell center = cell_of(pose.position());
  snap.origin = {center.ix - camera::kHalfCells, center.iy - camera::kHalfCells};
  snap.cells.assign(static_cast<std::size_t>(snap.side * snap.side), CellState::Unknown);
  for (int j = 0; j < snap.side; ++j) {
    for (int i = 0; i < snap.side; ++i) {
      const Cell c{snap.origin.ix + i, snap.origin.iy + j};
      if (distance(cell_center(c), pose.position()) > camera::kRadiusM || !world.cell_in_bounds(c)) continue;
      snap.cells[static_cast<std::size_t>(j * snap.side + i)] = world.is_rubble(c) ? CellState::Rubble : CellState::Free;
    }
  }
  return snap;
}

}  // namespace rover
