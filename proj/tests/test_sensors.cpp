#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "rover/sensors.hpp"

using namespace rover;

namespace {

const DriveParams kParams{};

PirConfig sweep(bool enabled) {
  PirConfig c;
  c.sweep_enabled = enabled;
  return c;
}

// Robot parked at `pose`; returns ticks at which each body id is reported.
std::vector<std::pair<std::int64_t, std::string>> watch(const Pose& pose, const std::vector<WarmBody>& bodies,
                                                        const PirConfig& cfg, std::int64_t ticks) {
  std::vector<std::pair<std::int64_t, std::string>> hits;
  PirFrame frame = pir_snapshot(pose, sweep_angle(0, cfg, kParams), bodies, cfg);
  for (std::int64_t t = 0; t < ticks; ++t) {
    auto r = pir_sense(pose, sweep_angle(t, cfg, kParams), frame, bodies, cfg);
    for (auto& id : r.detected_ids) hits.emplace_back(t, id);
    frame = std::move(r.frame);
  }
  return hits;
}

WarmBody human_at(double x, double y, std::string id = "h") { return {std::move(id), BodyKind::Human, {x, y}, true}; }

}  // namespace

TEST(SweepAngle, Examples) {
  const PirConfig cfg = sweep(true);
  EXPECT_EQ(sweep_angle(0, cfg, kParams), 0.0);
  EXPECT_NEAR(sweep_angle(20, cfg, kParams), deg_to_rad(90.0), 1e-12);
  EXPECT_NEAR(sweep_angle(60, cfg, kParams), -deg_to_rad(90.0), 1e-12);
  for (std::int64_t t : {0, 1, 17, 20, 999}) EXPECT_EQ(sweep_angle(t, sweep(false), kParams), 0.0);
}

TEST(PirSense, StationaryHumanAheadDetectedWithinOneSweep) {
  const auto hits = watch({0, 0, 0}, {human_at(3.0, 0.0)}, sweep(true), 80);
  ASSERT_FALSE(hits.empty());
  EXPECT_LT(hits.front().first, 80);
}

TEST(PirSense, OutOfRangeNeverDetected) {
  EXPECT_TRUE(watch({0, 0, 0}, {human_at(10.0, 0.0)}, sweep(true), 400).empty());
}

TEST(PirSense, StaticSceneWithoutSweepIsInvisible) {
  EXPECT_TRUE(watch({0, 0, 0}, {human_at(3.0, 0.0)}, sweep(false), 1000).empty());
}

TEST(PirSense, ConeEntryIsAnEdge) {
  const PirConfig cfg = sweep(false);
  const std::vector<WarmBody> bodies{human_at(3.0, 0.0)};
  // Previously facing away, now facing the body.
  const PirFrame before = pir_snapshot({0, 0, std::numbers::pi}, 0.0, bodies, cfg);
  const auto r = pir_sense({0, 0, 0}, 0.0, before, bodies, cfg);
  EXPECT_TRUE(r.output);
  EXPECT_EQ(r.detected_ids, std::vector<std::string>{"h"});
}

TEST(PirSense, SmallBearingChangeBelowThresholdIsIgnored) {
  const PirConfig cfg = sweep(false);
  const std::vector<WarmBody> bodies{human_at(3.0, 0.0)};
  const PirFrame before = pir_snapshot({0, 0, 0}, 0.0, bodies, cfg);
  EXPECT_FALSE(pir_sense({0, 0, 0}, deg_to_rad(0.4), before, bodies, cfg).output);
  EXPECT_TRUE(pir_sense({0, 0, 0}, deg_to_rad(0.6), before, bodies, cfg).output);
}

TEST(PirSense, LeavingRangeRaisesOutputButReportsNobody) {
  const PirConfig cfg = sweep(false);
  const std::vector<WarmBody> bodies{human_at(6.99, 0.0)};
  const PirFrame before = pir_snapshot({0, 0, 0}, 0.0, bodies, cfg);
  const auto r = pir_sense({-0.1, 0, 0}, 0.0, before, bodies, cfg);
  EXPECT_TRUE(r.output);
  EXPECT_TRUE(r.detected_ids.empty());
}

TEST(PirSense, SweptSectorPropertyWithStationaryRobot) {
  std::mt19937_64 rng(77);
  const PirConfig cfg = sweep(true);
  const double reach = cfg.sweep_amplitude_rad + cfg.cone_half_angle_rad - deg_to_rad(1.0);
  std::uniform_real_distribution<double> bearing(-reach, reach), range(0.3, 6.95), heading(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const Pose pose{10.0, 10.0, heading(rng)};
    const double b = pose.heading_rad + bearing(rng), r = range(rng);
    const WarmBody body = human_at(pose.x_m + r * std::cos(b), pose.y_m + r * std::sin(b));
    // Any window of one sweep period, after the first, contains a detection.
    const auto hits = watch(pose, {body}, cfg, 400);
    for (std::int64_t start = 80; start + 80 <= 400; start += 80) {
      const bool hit = std::any_of(hits.begin(), hits.end(),
                                   [&](const auto& h) { return h.first >= start && h.first < start + 80; });
      ASSERT_TRUE(hit) << "bearing offset " << b - pose.heading_rad << " range " << r << " window " << start;
    }
  }
}

TEST(PirSense, NeverReportsBeyondRange) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coord(0.0, 20.0), ang(-3.14, 3.14);
  const PirConfig cfg = sweep(true);
  std::vector<WarmBody> bodies;
  for (int i = 0; i < 30; ++i) bodies.push_back(human_at(coord(rng), coord(rng), "b" + std::to_string(i)));
  Pose pose{10, 10, 0};
  PirFrame frame;
  for (std::int64_t t = 0; t < 500; ++t) {
    pose = {coord(rng), coord(rng), ang(rng)};
    auto r = pir_sense(pose, sweep_angle(t, cfg, kParams), frame, bodies, cfg);
    for (const auto& id : r.detected_ids) {
      const auto& b = *std::find_if(bodies.begin(), bodies.end(), [&](const WarmBody& w) { return w.id == id; });
      ASSERT_LE(distance(pose.position(), b.position), cfg.range_m);
    }
    frame = std::move(r.frame);
  }
}

TEST(GasSense, Examples) {
  const GasReading none = gas_sense({0, 0}, {});
  EXPECT_EQ(none, GasReading{});

  const std::vector<GasSource> co{{GasSpecies::CO, {0, 0}, 400.0, 2.0}};
  const GasReading at_r0 = gas_sense({2.0, 0.0}, co);
  EXPECT_DOUBLE_EQ(at_r0.co_ppm, 200.0);
  EXPECT_TRUE(at_r0.alarm);
  EXPECT_FALSE(gas_sense({2.01, 0.0}, co).alarm);
}

TEST(GasSense, MethaneBelowLimitNeverAlarms) {
  const std::vector<GasSource> ch4{{GasSpecies::CH4, {5, 5}, 400.0, 1.0}};
  for (double x = 0; x <= 10; x += 0.125)
    for (double y = 0; y <= 10; y += 0.125) ASSERT_FALSE(gas_sense({x, y}, ch4).alarm);
  EXPECT_DOUBLE_EQ(gas_sense({5, 5}, ch4).ch4_ppm, 400.0);
}

TEST(GasSense, AdditiveAndOrderIndependent) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> pos(0, 10), c0(1, 3000), r0(0.2, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<GasSource> srcs;
    for (int i = 0; i < 6; ++i)
      srcs.push_back({static_cast<GasSpecies>(i % 3), {pos(rng), pos(rng)}, c0(rng), r0(rng)});
    const Vec2 at{pos(rng), pos(rng)};
    const GasReading all = gas_sense(at, srcs);

    GasReading sum;
    for (const auto& s : srcs) {
      const GasReading one = gas_sense(at, std::span(&s, 1));
      sum.co_ppm += one.co_ppm;
      sum.lpg_ppm += one.lpg_ppm;
      sum.ch4_ppm += one.ch4_ppm;
    }
    EXPECT_NEAR(all.co_ppm, sum.co_ppm, 1e-9);
    EXPECT_NEAR(all.lpg_ppm, sum.lpg_ppm, 1e-9);
    EXPECT_NEAR(all.ch4_ppm, sum.ch4_ppm, 1e-9);

    std::shuffle(srcs.begin(), srcs.end(), rng);
    const GasReading shuffled = gas_sense(at, srcs);
    EXPECT_NEAR(all.co_ppm, shuffled.co_ppm, 1e-9);
    EXPECT_NEAR(all.lpg_ppm, shuffled.lpg_ppm, 1e-9);
    EXPECT_NEAR(all.ch4_ppm, shuffled.ch4_ppm, 1e-9);
    EXPECT_EQ(all.alarm, all.co_ppm >= 200 || all.lpg_ppm >= 1000 || all.ch4_ppm >= 5000);
  }
}

TEST(Camera, EmptyWorldDiscIsFree) {
  const World w{20.0, 20.0, {}};
  const Pose pose{10.1, 9.9, 0.3};
  const auto snap = camera_capture(pose, w);
  ASSERT_EQ(snap.side, 25);
  int free = 0;
  for (int j = 0; j < snap.side; ++j) {
    for (int i = 0; i < snap.side; ++i) {
      const Cell c{snap.origin.ix + i, snap.origin.iy + j};
      const bool inside = distance(cell_center(c), pose.position()) <= 3.0;
      ASSERT_EQ(snap.at(i, j), inside ? CellState::Free : CellState::Unknown);
      free += inside;
    }
  }
  EXPECT_GT(free, 400);
}

TEST(Camera, DiscFitsInGridForAnyOffsetWithinCell) {
  const World w{20.0, 20.0, {}};
  for (double dx = 0.0; dx < 0.25; dx += 0.05) {
    for (double dy = 0.0; dy < 0.25; dy += 0.05) {
      const Pose pose{10.0 + dx, 10.0 + dy, 0};
      const auto snap = camera_capture(pose, w);
      // Every world cell whose center is within 3 m must land in the grid.
      const Cell c0 = cell_of(pose.position());
      for (std::int64_t i = -14; i <= 14; ++i)
        for (std::int64_t j = -14; j <= 14; ++j) {
          const Cell c{c0.ix + i, c0.iy + j};
          if (distance(cell_center(c), pose.position()) <= 3.0) {
            ASSERT_EQ(snap.at_world(c), CellState::Free);
          }
        }
    }
  }
}

TEST(Camera, RubbleAheadAndBuriedBodyHidden) {
  World w{20.0, 20.0, {}};
  const Pose pose{10.0, 10.0, 0.0};
  const Cell ahead = cell_of({11.0, 10.0});
  w.rubble.insert(ahead);
  const auto snap = camera_capture(pose, w);
  EXPECT_EQ(snap.at_world(ahead), CellState::Rubble);
  // A body buried in that cell changes nothing: the camera has no body input.
  EXPECT_EQ(snap.at_world(cell_of({11.1, 10.1})), CellState::Rubble);
}

TEST(Camera, OutsideWorldIsUnknown) {
  const World w{4.0, 4.0, {}};
  const auto snap = camera_capture({0.5, 0.5, 0}, w);
  EXPECT_EQ(snap.at_world({-1, 0}), CellState::Unknown);
  EXPECT_EQ(snap.at_world({0, 0}), CellState::Free);
}
