#pragma once

// Operator gateway core: parses client messages, queues them, and once per
// tick drains the queue (latest tilt wins), steps the engine, and produces
// the outbound state/alert/error messages. Transport-agnostic; the WebSocket
// service in rover/net feeds it. Protocol: docs/protocol.md.

#include <cmath>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rover/engine.hpp"
#include "rover/report.hpp"
#include "rover/run_record.hpp"

namespace rover {

struct TiltMsg {
  double x_g{0.0};
  double y_g{0.0};
};

struct SetSweepMsg {
  bool enabled{true};
};

struct ResetMsg {
  std::string scenario_name;
  std::optional<std::uint64_t> seed;
};

using InboundMessage = std::variant<TiltMsg, SetSweepMsg, ResetMsg>;

inline InboundMessage parse_inbound(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw ParseError("message is not valid JSON");
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParseError("message must be an object with a string 'type'");
  }
  const auto type = j["type"].get<std::string>();
  if (type == "tilt") {
    const auto num = [&j](const char* key) {
      if (!j.contains(key) || !j[key].is_number()) throw ParseError(std::string("tilt: '") + key + "' must be a number");
      const double v = j[key].get<double>();
      if (!std::isfinite(v)) throw ParseError(std::string("tilt: '") + key + "' must be finite");
      return v;
    };
    return TiltMsg{num("x_g"), num("y_g")};
  }
  if (type == "set_sweep") {
    if (!j.contains("enabled") || !j["enabled"].is_boolean()) throw ParseError("set_sweep: 'enabled' must be a boolean");
    return SetSweepMsg{j["enabled"].get<bool>()};
  }
  if (type == "reset") {
    if (!j.contains("scenario_name") || !j["scenario_name"].is_string()) {
      throw ParseError("reset: 'scenario_name' must be a string");
    }
    ResetMsg m{j["scenario_name"].get<std::string>(), std::nullopt};
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) throw ParseError("reset: 'seed' must be a non-negative integer");
      m.seed = j["seed"].get<std::uint64_t>();
    }
    return m;
  }
  throw ParseError("unknown message type '" + type + "'");
}

inline std::string error_message(std::string_view what) {
  return ojson{{"type", "error"}, {"message", std::string(what)}}.dump();
}

inline std::string alert_message(const TelemetryEvent& ev) {
  return ojson{{"type", "alert"}, {"event", to_json(ev)}}.dump();
}

inline std::string state_message(const Scenario& sc, const SimState& st) {
  const double d = distance(st.robot_pose.position(), sc.base_position);
  return ojson{{"type", "state"},
               {"tick", st.tick - 1},
               {"pose", to_json(st.robot_pose)},
               {"current_command", std::string(to_string(st.current_command))},
               {"link",
                {{"distance_m", d},
                 {"up_loss_p", loss_probability(d)},
                 {"up_stats", to_json(st.up_stats)},
                 {"down_stats", to_json(st.down_stats)}}},
               {"gas", to_json(st.gas)},
               {"sweep_enabled", sc.pir.sweep_enabled},
               {"camera", to_json(camera_capture(st.robot_pose, sc.world))}}
      .dump();
}

class Gateway {
 public:
  using ClientId = std::uint64_t;

  struct TickOutput {
    std::string state;
    std::vector<std::string> alerts;
    std::vector<std::pair<ClientId, std::string>> errors;
  };

  // `scenario_path` is where the scenario came from; reset looks for
  // `<name>.json` next to it. When `runs_root` is set, every run is
  // persisted under it.
  Gateway(Scenario sc, std::filesystem::path scenario_path, std::optional<std::filesystem::path> runs_root = {})
      : scenario_(std::move(sc)),
        state_(make_initial_state(scenario_)),
        scenario_path_(std::move(scenario_path)),
        runs_root_(std::move(runs_root)) {
    open_run();
  }

  ~Gateway() { close_run(); }

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  // Returns an error message for the sending client when `text` is
  // malformed; otherwise the message is queued for the next tick.
  std::optional<std::string> submit(ClientId client, std::string_view text) {
    try {
      inbound_.push_back({client, parse_inbound(text)});
      return std::nullopt;
    } catch (const ParseError& e) {
      return error_message(e.what());
    }
  }

  TickOutput tick() {
    TickOutput out;
    std::optional<TiltMsg> tilt;
    while (!inbound_.empty()) {
      auto [client, msg] = std::move(inbound_.front());
      inbound_.pop_front();
      if (const auto* t = std::get_if<TiltMsg>(&msg)) {
        tilt = *t;
      } else if (const auto* s = std::get_if<SetSweepMsg>(&msg)) {
        scenario_.pir.sweep_enabled = s->enabled;
      } else if (const auto* r = std::get_if<ResetMsg>(&msg)) {
        if (auto err = reset(*r)) {
          out.errors.emplace_back(client, error_message(*err));
        } else {
          tilt.reset();
        }
      }
    }

    std::optional<AccelSample> sample;
    if (tilt) sample = AccelSample{tilt->x_g, tilt->y_g, state_.tick};
    const std::size_t before = state_.event_log.size();
    step(scenario_, state_, sample);

    for (std::size_t i = before; i < state_.event_log.size(); ++i) {
      const auto& ev = state_.event_log[i];
      if (run_) run_->append(ev);
      if (ev.kind() != EventKind::Status) out.alerts.push_back(alert_message(ev));
    }
    out.state = state_message(scenario_, state_);
    return out;
  }

  const Scenario& scenario() const { return scenario_; }
  const SimState& state() const { return state_; }
  const RunWriter* run() const { return run_.get(); }
  std::size_t pending() const { return inbound_.size(); }

  // Flushes metrics for the current run.
  void close_run() {
    if (run_) run_->finish(make_metrics(scenario_, state_));
    run_.reset();
  }

 private:
  std::optional<std::string> reset(const ResetMsg& m) {
    const auto path = m.scenario_name == scenario_.name ? scenario_path_
                                                        : scenario_path_.parent_path() / (m.scenario_name + ".json");
    if (m.scenario_name.find('/') != std::string::npos || m.scenario_name.find("..") != std::string::npos) {
      return "reset: invalid scenario name '" + m.scenario_name + "'";
    }
    const auto text = read_file(path.string());
    if (!text) return "reset: unknown scenario '" + m.scenario_name + "'";
    try {
      Scenario next = load_scenario(*text);
      if (m.seed) next.seed = *m.seed;
      close_run();
      scenario_ = std::move(next);
      scenario_path_ = path;
      state_ = make_initial_state(scenario_);
      open_run();
    } catch (const Error& e) {
      return std::string("reset: ") + e.what();
    }
    return std::nullopt;
  }

  void open_run() {
    if (!runs_root_) return;
    const auto stamp = utc_timestamp(std::chrono::system_clock::now(), "%Y%m%dT%H%M%SZ");
    auto dir = *runs_root_ / (scenario_.name + "-" + stamp + "-" + std::to_string(run_counter_++));
    run_ = std::make_unique<RunWriter>(std::move(dir), scenario_);
  }

  struct Pending {
    ClientId client;
    InboundMessage msg;
  };

  Scenario scenario_;
  SimState state_;
  std::filesystem::path scenario_path_;
  std::optional<std::filesystem::path> runs_root_;
  std::unique_ptr<RunWriter> run_;
  std::uint64_t run_counter_{0};
  std::deque<Pending> inbound_;
};

}  // namespace rover
