// Drives the robot forward for two seconds in an empty 10 m x 10 m world and
// prints where it ended up.
#include <iostream>

#include "rover/engine.hpp"

int main() {
  const rover::Scenario sc = rover::load_scenario(R"({"world_size_m": [10, 10], "seed": 1})");
  rover::SimState st = rover::make_initial_state(sc);
  for (int i = 0; i < 40; ++i) rover::step(sc, st, rover::AccelSample{0.0, 0.8, st.tick});
  std::cout << "pose after 40 ticks: x=" << st.robot_pose.x_m << " y=" << st.robot_pose.y_m
            << " heading=" << st.robot_pose.heading_rad << '\n';
}
