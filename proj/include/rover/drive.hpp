#pragma once

// Robot actuation: drive command -> L293D pin levels -> wheel speeds ->
// differential-drive pose.

#include <cmath>
#include <cstdint>
#include <utility>

#include "rover/geometry.hpp"
#include "rover/gesture.hpp"

namespace rover {

// Channel 1/2 drives the left motor, channel 3/4 the right motor.
struct MotorPins {
  std::uint8_t en12{0}, in1{0}, in2{0};
  std::uint8_t en34{0}, in3{0}, in4{0};

  friend bool operator==(const MotorPins&, const MotorPins&) = default;
};

struct Pose {
  double x_m{0.0};
  double y_m{0.0};
  double heading_rad{0.0};

  Vec2 position() const { return {x_m, y_m}; }

  friend bool operator==(const Pose&, const Pose&) = default;
};

struct DriveParams {
  double wheel_speed_full{0.5};  // m/s
  double wheel_base{0.3};        // m
  double dt{0.05};               // s per tick
};

struct WheelSpeeds {
  double left{0.0};
  double right{0.0};

  friend bool operator==(const WheelSpeeds&, const WheelSpeeds&) = default;
};

inline constexpr MotorPins command_to_pins(DriveCommand c) noexcept {
  switch (c) {
    case DriveCommand::Forward: return {1, 1, 0, 1, 1, 0};
    case DriveCommand::Backward: return {1, 0, 1, 1, 0, 1};
    case DriveCommand::Left: return {1, 0, 1, 1, 1, 0};
    case DriveCommand::Right: return {1, 1, 0, 1, 0, 1};
    case DriveCommand::Stop: break;
  }
  return {};
}

namespace detail {

// One H-bridge channel: disabled coasts, equal inputs brake.
inline double channel_speed(std::uint8_t en, std::uint8_t a, std::uint8_t b, double full) {
  if (!en || a == b) return 0.0;
  return a ? full : -full;
}

}  // namespace detail

inline WheelSpeeds pins_to_wheel_speeds(const MotorPins& p, const DriveParams& params) {
  return {detail::channel_speed(p.en12, p.in1, p.in2, params.wheel_speed_full),
          detail::channel_speed(p.en34, p.in3, p.in4, params.wheel_speed_full)};
}

// Exact arc update, straight-line fallback when the robot is not turning.
inline Pose integrate_pose(const Pose& p, double v_left, double v_right, const DriveParams& params) {
  const double v = 0.5 * (v_left + v_right);
  const double omega = (v_right - v_left) / params.wheel_base;
  const double dt = params.dt;
  Pose out = p;
  if (std::abs(omega) < 1e-9) {
    out.x_m += v * dt * std::cos(p.heading_rad);
    out.y_m += v * dt * std::sin(p.heading_rad);
  } else {
    const double next = p.heading_rad + omega * dt;
    out.x_m += (v / omega) * (std::sin(next) - std::sin(p.heading_rad));
    out.y_m -= (v / omega) * (std::cos(next) - std::cos(p.heading_rad));
  }
  out.heading_rad = normalize_angle(p.heading_rad + omega * dt);
  return out;
}

inline Pose integrate_pose(const Pose& p, WheelSpeeds w, const DriveParams& params) {
  return integrate_pose(p, w.left, w.right, params);
}

}  // namespace rover
