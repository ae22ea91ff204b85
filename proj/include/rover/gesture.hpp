#pragma once

// Control-unit sensing chain: ADXL335-style accelerometer -> 10-bit ADC ->
// drive command with dead zone and hysteresis.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>

#include "rover/error.hpp"

namespace rover {

struct AccelSample {
  double x_g{0.0};
  double y_g{0.0};
  std::int64_t tick{0};
};

struct AdcReading {
  int x_counts{0};
  int y_counts{0};
  std::int64_t tick{0};

  friend bool operator==(const AdcReading&, const AdcReading&) = default;
};

enum class DriveCommand : std::uint8_t {
  Stop = 0x00,
  Forward = 0x01,
  Backward = 0x02,
  Left = 0x03,
  Right = 0x04,
};

namespace accel {
inline constexpr double kFullScaleG = 3.0;
inline constexpr double kZeroGVolts = 1.65;
inline constexpr double kVoltsPerG = 0.330;
inline constexpr double kRailVolts = 3.3;
}  // namespace accel

namespace adc {
inline constexpr int kMaxCounts = 1023;
inline constexpr double kReferenceVolts = 5.0;
}  // namespace adc

namespace classifier {
inline constexpr int kNeutralCounts = 338;
inline constexpr int kEngageCounts = 30;   // T_on
inline constexpr int kReleaseCounts = 20;  // T_off
}  // namespace classifier

// Counts for one axis. Input is clamped to the sensor's full scale, the
// output voltage to the rail, and the count to the ADC range.
inline int axis_to_counts(double accel_g) {
  const double a = std::clamp(accel_g, -accel::kFullScaleG, accel::kFullScaleG);
  const double volts = std::clamp(accel::kZeroGVolts + accel::kVoltsPerG * a, 0.0, accel::kRailVolts);
  const auto counts = static_cast<int>(std::lround(adc::kMaxCounts * volts / adc::kReferenceVolts));
  return std::clamp(counts, 0, adc::kMaxCounts);
}

inline AdcReading sample_to_counts(const AccelSample& s) {
  // NaN would poison clamp; treat it as zero deflection.
  const double x = std::isnan(s.x_g) ? 0.0 : s.x_g;
  const double y = std::isnan(s.y_g) ? 0.0 : s.y_g;
  return {axis_to_counts(x), axis_to_counts(y), s.tick};
}

namespace detail {

// Signed deflection of `r` along the axis/sign that `c` corresponds to.
inline int deflection_along(DriveCommand c, int dx, int dy) {
  switch (c) {
    case DriveCommand::Forward: return dy;
    case DriveCommand::Backward: return -dy;
    case DriveCommand::Right: return dx;
    case DriveCommand::Left: return -dx;
    case DriveCommand::Stop: break;
  }
  return 0;
}

}  // namespace detail

// Pure function of (r, prev). +y tilt is Forward, +x tilt is Right.
inline DriveCommand classify(const AdcReading& r, DriveCommand prev) {
  const int dx = r.x_counts - classifier::kNeutralCounts;
  const int dy = r.y_counts - classifier::kNeutralCounts;
  const int ax = std::abs(dx);
  const int ay = std::abs(dy);
  const int peak = std::max(ax, ay);

  if (peak < classifier::kReleaseCounts) return DriveCommand::Stop;
  if (prev != DriveCommand::Stop && detail::deflection_along(prev, dx, dy) >= classifier::kReleaseCounts) {
    return prev;
  }
  if (peak >= classifier::kEngageCounts) {
    if (ay > ax) return dy > 0 ? DriveCommand::Forward : DriveCommand::Backward;
    if (ax > ay) return dx > 0 ? DriveCommand::Right : DriveCommand::Left;
  }
  return prev;
}

inline constexpr std::uint8_t command_code(DriveCommand c) noexcept { return static_cast<std::uint8_t>(c); }

inline DriveCommand decode_command(std::uint8_t b) {
  if (b > static_cast<std::uint8_t>(DriveCommand::Right)) {
    throw MalformedCommand("malformed drive command byte " + std::to_string(b));
  }
  return static_cast<DriveCommand>(b);
}

inline constexpr std::string_view to_string(DriveCommand c) noexcept {
  switch (c) {
    case DriveCommand::Stop: return "Stop";
    case DriveCommand::Forward: return "Forward";
    case DriveCommand::Backward: return "Backward";
    case DriveCommand::Left: return "Left";
    case DriveCommand::Right: return "Right";
  }
  return "?";
}

inline constexpr DriveCommand kAllCommands[] = {DriveCommand::Stop, DriveCommand::Forward, DriveCommand::Backward,
                                                DriveCommand::Left, DriveCommand::Right};

}  // namespace rover
