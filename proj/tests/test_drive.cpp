#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "rover/drive.hpp"

using namespace rover;

namespace {

const DriveParams kParams{};

Pose drive(Pose p, DriveCommand c, int ticks) {
  for (int i = 0; i < ticks; ++i) p = integrate_pose(p, pins_to_wheel_speeds(command_to_pins(c), kParams), kParams);
  return p;
}

}  // namespace

TEST(CommandToPins, Table) {
  const MotorPins stop = command_to_pins(DriveCommand::Stop);
  EXPECT_EQ(stop.en12, 0);
  EXPECT_EQ(stop.en34, 0);
  EXPECT_EQ(command_to_pins(DriveCommand::Forward), (MotorPins{1, 1, 0, 1, 1, 0}));
  EXPECT_EQ(command_to_pins(DriveCommand::Backward), (MotorPins{1, 0, 1, 1, 0, 1}));
  EXPECT_EQ(command_to_pins(DriveCommand::Left), (MotorPins{1, 0, 1, 1, 1, 0}));
  EXPECT_EQ(command_to_pins(DriveCommand::Right), (MotorPins{1, 1, 0, 1, 0, 1}));
}

TEST(PinsToWheelSpeeds, HBridgeTruthTable) {
  // Disabled channel coasts whatever the inputs.
  for (std::uint8_t a = 0; a < 2; ++a)
    for (std::uint8_t b = 0; b < 2; ++b) EXPECT_EQ(pins_to_wheel_speeds({0, a, b, 0, a, b}, kParams), (WheelSpeeds{0, 0}));
  EXPECT_EQ(pins_to_wheel_speeds({1, 1, 0, 0, 0, 0}, kParams).left, 0.5);
  EXPECT_EQ(pins_to_wheel_speeds({1, 0, 1, 0, 0, 0}, kParams).left, -0.5);
  EXPECT_EQ(pins_to_wheel_speeds({1, 1, 1, 0, 0, 0}, kParams).left, 0.0);
  EXPECT_EQ(pins_to_wheel_speeds({1, 0, 0, 0, 0, 0}, kParams).left, 0.0);
  EXPECT_EQ(pins_to_wheel_speeds({0, 0, 0, 1, 0, 1}, kParams).right, -0.5);
}

TEST(PinsToWheelSpeeds, ComposedWithCommands) {
  const auto ws = [](DriveCommand c) { return pins_to_wheel_speeds(command_to_pins(c), kParams); };
  EXPECT_EQ(ws(DriveCommand::Stop), (WheelSpeeds{0.0, 0.0}));
  EXPECT_EQ(ws(DriveCommand::Forward), (WheelSpeeds{0.5, 0.5}));
  EXPECT_EQ(ws(DriveCommand::Backward), (WheelSpeeds{-0.5, -0.5}));
  EXPECT_EQ(ws(DriveCommand::Left), (WheelSpeeds{-0.5, 0.5}));
  EXPECT_EQ(ws(DriveCommand::Right), (WheelSpeeds{0.5, -0.5}));
}

TEST(IntegratePose, StraightLine) {
  const Pose p = integrate_pose({0, 0, 0}, 0.5, 0.5, kParams);
  EXPECT_DOUBLE_EQ(p.x_m, 0.025);
  EXPECT_EQ(p.y_m, 0.0);
  EXPECT_EQ(p.heading_rad, 0.0);
}

TEST(IntegratePose, PivotKeepsPosition) {
  const Pose p = integrate_pose({0, 0, 0}, -0.5, 0.5, kParams);
  EXPECT_EQ(p.x_m, 0.0);
  EXPECT_EQ(p.y_m, 0.0);
  EXPECT_NEAR(p.heading_rad, (1.0 / 0.3) * 0.05, 1e-15);
}

TEST(IntegratePose, ZeroSpeedIsIdentity) {
  const Pose start{1.25, -3.5, 2.0};
  EXPECT_EQ(integrate_pose(start, 0.0, 0.0, kParams), start);
}

TEST(IntegratePose, ArcMatchesFineEulerIntegration) {
  // Oracle: forward Euler with 1e5 sub-steps.
  const Pose start{1.0, 2.0, 0.3};
  const double vl = 0.2, vr = 0.45;
  const Pose exact = integrate_pose(start, vl, vr, kParams);
  const int n = 100000;
  const double h = kParams.dt / n, v = 0.5 * (vl + vr), w = (vr - vl) / kParams.wheel_base;
  double x = start.x_m, y = start.y_m, th = start.heading_rad;
  for (int i = 0; i < n; ++i) {
    x += v * h * std::cos(th + 0.5 * w * h);
    y += v * h * std::sin(th + 0.5 * w * h);
    th += w * h;
  }
  EXPECT_NEAR(exact.x_m, x, 1e-11);
  EXPECT_NEAR(exact.y_m, y, 1e-11);
  EXPECT_NEAR(exact.heading_rad, th, 1e-12);
}

TEST(Kinematics, StraightLineConservation) {
  for (int n : {1, 7, 20, 400}) {
    const Pose p = drive({0, 0, 0}, DriveCommand::Forward, n);
    EXPECT_NEAR(p.x_m, n * 0.5 * 0.05, 1e-9);
    EXPECT_EQ(p.y_m, 0.0);
  }
}

TEST(Kinematics, PivotPurityFromArbitraryPoses) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> coord(-50, 50), ang(-3.14, 3.14);
  for (int i = 0; i < 500; ++i) {
    Pose p{coord(rng), coord(rng), ang(rng)};
    for (DriveCommand c : {DriveCommand::Left, DriveCommand::Right}) {
      const Pose q = drive(p, c, 1);
      ASSERT_NEAR(q.x_m, p.x_m, 1e-12);
      ASSERT_NEAR(q.y_m, p.y_m, 1e-12);
    }
  }
}

TEST(Kinematics, ForwardThenBackwardReturns) {
  const Pose start{3.0, -1.0, 0.7};
  for (int k : {1, 13, 250}) {
    const Pose back = drive(drive(start, DriveCommand::Forward, k), DriveCommand::Backward, k);
    EXPECT_NEAR(back.x_m, start.x_m, 1e-9);
    EXPECT_NEAR(back.y_m, start.y_m, 1e-9);
    EXPECT_NEAR(back.heading_rad, start.heading_rad, 1e-12);
  }
}

TEST(Kinematics, HeadingStaysNormalized) {
  std::mt19937_64 rng(12);
  Pose p{0, 0, 0};
  for (int i = 0; i < 20000; ++i) {
    p = drive(p, kAllCommands[rng() % 5], 1);
    ASSERT_GT(p.heading_rad, -std::numbers::pi);
    ASSERT_LE(p.heading_rad, std::numbers::pi);
  }
}

TEST(NormalizeAngle, HalfOpenInterval) {
  EXPECT_EQ(normalize_angle(std::numbers::pi), std::numbers::pi);
  EXPECT_EQ(normalize_angle(-std::numbers::pi), std::numbers::pi);
  EXPECT_NEAR(normalize_angle(3 * std::numbers::pi / 2), -std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(normalize_angle(-7.0), -7.0 + 2 * std::numbers::pi, 1e-15);
}
