#pragma once

// Fixed-timestep engine: one tick runs uplink -> drive -> PIR -> gas ->
// status in that order, every rng draw coming from the scenario-seeded link
// generators.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rover/channel.hpp"
#include "rover/drive.hpp"
#include "rover/frame.hpp"
#include "rover/gesture.hpp"
#include "rover/scenario.hpp"
#include "rover/sensors.hpp"
#include "rover/trace.hpp"

namespace rover {

namespace engine {
inline constexpr std::int64_t kStatusPeriodTicks = 10;
inline constexpr std::int64_t kAutoStopTicks = 40;
inline constexpr std::uint64_t kUplinkStream = 1;
inline constexpr std::uint64_t kDownlinkStream = 2;
}  // namespace engine

enum class EventKind { Detection, GasAlarm, Status };

inline constexpr std::string_view to_string(EventKind k) noexcept {
  switch (k) {
    case EventKind::Detection: return "detection";
    case EventKind::GasAlarm: return "gas_alarm";
    case EventKind::Status: return "status";
  }
  return "?";
}

struct DetectionInfo {
  std::string body_id;
  BodyKind body_kind{BodyKind::Human};

  friend bool operator==(const DetectionInfo&, const DetectionInfo&) = default;
};

struct StatusInfo {
  Pose pose;
  DriveCommand command{DriveCommand::Stop};
  LinkStats uplink;
  LinkStats downlink;

  friend bool operator==(const StatusInfo&, const StatusInfo&) = default;
};

struct TelemetryEvent {
  std::int64_t tick{0};
  std::variant<DetectionInfo, GasReading, StatusInfo> payload;
  bool delivered{false};

  EventKind kind() const { return static_cast<EventKind>(payload.index()); }

  friend bool operator==(const TelemetryEvent&, const TelemetryEvent&) = default;
};

struct SimState {
  std::int64_t tick{0};
  Pose robot_pose;
  DriveCommand current_command{DriveCommand::Stop};
  // Control-unit classifier memory (the `prev` fed to classify).
  DriveCommand operator_command{DriveCommand::Stop};
  std::int64_t ticks_without_command{0};
  PirFrame pir_frame;
  ChannelState link_up;
  LinkStats up_stats;
  ChannelState link_down;
  LinkStats down_stats;
  std::vector<TelemetryEvent> event_log;
  std::set<std::string> detected_ids;
  std::map<std::string, std::int64_t> first_detection_tick;
  GasReading gas;
  std::uint64_t gas_alarms{0};
  std::uint64_t auto_stops{0};
  double distance_traveled_m{0.0};
};

inline SimState make_initial_state(const Scenario& sc) {
  SimState st;
  st.robot_pose = sc.robot_start;
  st.link_up.rng = Rng::for_stream(sc.seed, engine::kUplinkStream);
  st.link_down.rng = Rng::for_stream(sc.seed, engine::kDownlinkStream);
  const double d = distance(sc.robot_start.position(), sc.base_position);
  st.link_up.distance_m = d;
  st.link_down.distance_m = d;
  // Bodies already in view at start are "seen since before": no rising edge.
  st.pir_frame = pir_snapshot(sc.robot_start, sweep_angle(0, sc.pir, sc.drive), sc.bodies, sc.pir);
  st.gas = gas_sense(sc.robot_start.position(), sc.gas_sources);
  return st;
}

// Translation into rubble or out of the world is rejected; rotation always
// applies.
inline Pose move_with_collision(const Pose& old, const Pose& proposed, const World& world) {
  if (world.blocked(proposed.position())) return {old.x_m, old.y_m, proposed.heading_rad};
  return proposed;
}

namespace detail {

inline std::int32_t fixed_milli(double v) { return static_cast<std::int32_t>(std::llround(v * 1000.0)); }

inline std::uint32_t centi_ppm(double ppm) {
  return static_cast<std::uint32_t>(std::min(std::llround(ppm * 100.0), static_cast<long long>(UINT32_MAX)));
}

inline std::uint32_t saturate32(std::uint64_t v) { return static_cast<std::uint32_t>(std::min<std::uint64_t>(v, UINT32_MAX)); }

inline Frame telemetry_frame(const TelemetryEvent& ev) {
  Frame f{kBaseAddress, FrameType::Status, {}};
  std::visit(
      [&f](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DetectionInfo>) {
          f.ftype = FrameType::PirDetection;
          f.payload.push_back(static_cast<std::uint8_t>(p.body_kind));
          const auto n = std::min(p.body_id.size(), kMaxPayload - 1);
          f.payload.insert(f.payload.end(), p.body_id.begin(), p.body_id.begin() + static_cast<std::ptrdiff_t>(n));
        } else if constexpr (std::is_same_v<T, GasReading>) {
          f.ftype = FrameType::Gas;
          wire::put_u32(f.payload, centi_ppm(p.co_ppm));
          wire::put_u32(f.payload, centi_ppm(p.lpg_ppm));
          wire::put_u32(f.payload, centi_ppm(p.ch4_ppm));
          f.payload.push_back(p.alarm ? 1 : 0);
        } else {
          f.ftype = FrameType::Status;
          wire::put_i32(f.payload, fixed_milli(p.pose.x_m));
          wire::put_i32(f.payload, fixed_milli(p.pose.y_m));
          wire::put_i32(f.payload, fixed_milli(p.pose.heading_rad));
          f.payload.push_back(command_code(p.command));
          wire::put_u32(f.payload, saturate32(p.uplink.frames_sent));
          wire::put_u32(f.payload, saturate32(p.uplink.frames_delivered));
          wire::put_u32(f.payload, saturate32(p.downlink.frames_sent));
          wire::put_u32(f.payload, saturate32(p.downlink.frames_delivered));
        }
      },
      ev.payload);
  return f;
}

inline void send_downlink(SimState& st, TelemetryEvent ev) {
  const DeliveryResult res = transmit(telemetry_frame(ev), st.link_down, st.down_stats);
  ev.delivered = res.delivered;
  st.event_log.push_back(std::move(ev));
}

}  // namespace detail

inline Frame drive_frame(DriveCommand c) { return {kRobotAddress, FrameType::Drive, {command_code(c)}}; }

// Advances `st` by exactly one tick.
inline void step(const Scenario& sc, SimState& st, const std::optional<AccelSample>& operator_sample) {
  // (1) uplink
  const double d = distance(st.robot_pose.position(), sc.base_position);
  st.link_up.distance_m = d;
  bool command_received = false;
  if (operator_sample) {
    const DriveCommand wanted = classify(sample_to_counts(*operator_sample), st.operator_command);
    st.operator_command = wanted;
    const auto bytes = encode_frame(drive_frame(wanted));
    if (transmit(drive_frame(wanted), st.link_up, st.up_stats).delivered) {
      const Frame rx = decode_frame(bytes);
      st.current_command = decode_command(rx.payload.at(0));
      command_received = true;
    }
  }
  if (command_received) {
    st.ticks_without_command = 0;
  } else if (++st.ticks_without_command >= engine::kAutoStopTicks && st.current_command != DriveCommand::Stop) {
    st.current_command = DriveCommand::Stop;
    ++st.auto_stops;
  }

  // (2) drive
  const WheelSpeeds w = pins_to_wheel_speeds(command_to_pins(st.current_command), sc.drive);
  const Pose proposed = integrate_pose(st.robot_pose, w, sc.drive);
  const Pose moved = move_with_collision(st.robot_pose, proposed, sc.world);
  st.distance_traveled_m += distance(st.robot_pose.position(), moved.position());
  st.robot_pose = moved;
  st.link_down.distance_m = distance(st.robot_pose.position(), sc.base_position);

  // (3) PIR
  const double boresight = sweep_angle(st.tick, sc.pir, sc.drive);
  PirResult pir = pir_sense(st.robot_pose, boresight, st.pir_frame, sc.bodies, sc.pir);
  st.pir_frame = std::move(pir.frame);
  for (const auto& id : pir.detected_ids) {
    if (!st.detected_ids.insert(id).second) continue;
    st.first_detection_tick.emplace(id, st.tick);
    const auto body = std::find_if(sc.bodies.begin(), sc.bodies.end(), [&](const WarmBody& b) { return b.id == id; });
    detail::send_downlink(st, {st.tick, DetectionInfo{id, body->kind}, false});
  }

  // (4) gas
  const GasReading gas = gas_sense(st.robot_pose.position(), sc.gas_sources);
  const bool rising = gas.alarm && !st.gas.alarm;
  st.gas = gas;
  if (rising) {
    ++st.gas_alarms;
    detail::send_downlink(st, {st.tick, gas, false});
  }

  // (5) status
  if (st.tick % engine::kStatusPeriodTicks == 0) {
    detail::send_downlink(st, {st.tick, StatusInfo{st.robot_pose, st.current_command, st.up_stats, st.down_stats}, false});
  }

  // (6)
  ++st.tick;
}

// Value form of step().
inline SimState next_state(const Scenario& sc, SimState st, const std::optional<AccelSample>& operator_sample) {
  step(sc, st, operator_sample);
  return st;
}

struct MetricsReport {
  std::string scenario;
  std::uint64_t seed{0};
  std::int64_t ticks{0};
  std::uint64_t humans_detected{0};
  std::uint64_t humans_total{0};
  std::uint64_t animals_detected{0};
  std::uint64_t animals_total{0};
  std::uint64_t detections_delivered{0};
  std::map<std::string, std::int64_t> first_detection_tick;
  LinkStats uplink;
  LinkStats downlink;
  double distance_traveled_m{0.0};
  std::uint64_t gas_alarms{0};
  std::uint64_t auto_stops{0};
};

inline MetricsReport make_metrics(const Scenario& sc, const SimState& st) {
  MetricsReport m;
  m.scenario = sc.name;
  m.seed = sc.seed;
  m.ticks = st.tick;
  for (const auto& b : sc.bodies) {
    const bool seen = st.detected_ids.contains(b.id);
    if (b.kind == BodyKind::Human) {
      ++m.humans_total;
      m.humans_detected += seen ? 1 : 0;
    } else {
      ++m.animals_total;
      m.animals_detected += seen ? 1 : 0;
    }
  }
  for (const auto& ev : st.event_log) {
    if (ev.kind() == EventKind::Detection && ev.delivered) ++m.detections_delivered;
  }
  m.first_detection_tick = st.first_detection_tick;
  m.uplink = st.up_stats;
  m.downlink = st.down_stats;
  m.distance_traveled_m = st.distance_traveled_m;
  m.gas_alarms = st.gas_alarms;
  m.auto_stops = st.auto_stops;
  return m;
}

struct RunResult {
  SimState state;
  MetricsReport metrics;
};

inline std::int64_t sweep_period_ticks(const Scenario& sc) {
  return std::max<std::int64_t>(1, std::llround(sc.pir.sweep_period_s / sc.drive.dt));
}

inline void validate_trace(const Scenario& sc, std::span<const AccelSample> trace) {
  for (const auto& s : trace) {
    if (s.tick < 0 || s.tick >= sc.max_ticks) {
      throw ValidationError("trace", "tick " + std::to_string(s.tick) + " outside [0, " + std::to_string(sc.max_ticks) + ")");
    }
  }
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].tick <= trace[i - 1].tick) throw ValidationError("trace", "ticks must be strictly increasing");
  }
}

// Steps from tick 0 until max_ticks, or earlier once the trace is exhausted,
// the robot is stopped, and a full sweep period has passed since the last
// sample.
inline RunResult run(const Scenario& sc, std::span<const AccelSample> trace) {
  validate_trace(sc, trace);
  SimState st = make_initial_state(sc);
  const std::int64_t last_sample_tick = trace.empty() ? -1 : trace.back().tick;
  const std::int64_t settle = sweep_period_ticks(sc);
  std::size_t next = 0;
  while (st.tick < sc.max_ticks) {
    if (next == trace.size() && st.current_command == DriveCommand::Stop && st.tick > last_sample_tick + settle) break;
    std::optional<AccelSample> sample;
    if (next < trace.size() && trace[next].tick == st.tick) sample = trace[next++];
    step(sc, st, sample);
  }
  auto metrics = make_metrics(sc, st);
  return {std::move(st), std::move(metrics)};
}

}  // namespace rover
