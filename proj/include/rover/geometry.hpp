#pragma once

#include <cmath>
#include <numbers>

namespace rover {

struct Vec2 {
  double x{0.0};
  double y{0.0};

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Wraps to (-pi, pi].
inline double normalize_angle(double a) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  if (a > -std::numbers::pi && a <= std::numbers::pi) return a;
  a = std::fmod(a, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  if (a > std::numbers::pi) a -= kTwoPi;
  return a;
}

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace rover
