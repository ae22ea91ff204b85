#pragma once

// Headless entry points behind the `rover` CLI. Exit codes: 0 success,
// 2 unreadable input (or malformed trace for decode-trace), 3 invalid input.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>

#include "rover/engine.hpp"
#include "rover/report.hpp"
#include "rover/run_record.hpp"
#include "rover/trace.hpp"

namespace rover {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kMissingInput = 2;
inline constexpr int kInvalidInput = 3;
}  // namespace exit_code

struct SimulateOptions {
  std::string scenario_path;
  std::string trace_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

inline std::string summary_line(const MetricsReport& m) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(1) << m.scenario << ": humans " << m.humans_detected << "/" << m.humans_total
     << ", animals " << m.animals_detected << "/" << m.animals_total << ", ticks " << m.ticks << ", uplink "
     << 100.0 * m.uplink.delivery_ratio() << "% delivered, downlink " << 100.0 * m.downlink.delivery_ratio()
     << "% delivered";
  return ss.str();
}

inline int cli_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  const auto scenario_text = read_file(opt.scenario_path);
  if (!scenario_text) {
    err << "error: cannot read scenario '" << opt.scenario_path << "'\n";
    return exit_code::kMissingInput;
  }
  const auto trace_text = read_file(opt.trace_path);
  if (!trace_text) {
    err << "error: cannot read trace '" << opt.trace_path << "'\n";
    return exit_code::kMissingInput;
  }

  RunResult result;
  Scenario sc;
  try {
    sc = load_scenario(*scenario_text);
    if (opt.seed) sc.seed = *opt.seed;
    const GestureTrace trace = parse_trace(*trace_text);
    result = run(sc, trace);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kInvalidInput;
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) {
    err << "error: cannot create output directory '" << opt.out_dir << "': " << ec.message() << '\n';
    return exit_code::kMissingInput;
  }
  const fs::path dir(opt.out_dir);
  RunRecord record{sc.name, sc.seed, utc_timestamp(std::chrono::system_clock::now()), dir / "events.jsonl",
                   dir / "metrics.json"};
  {
    std::ofstream events(record.events_path, std::ios::binary | std::ios::trunc);
    write_events_jsonl(events, result.state.event_log);
    std::ofstream metrics(record.metrics_path, std::ios::binary | std::ios::trunc);
    write_metrics_json(metrics, result.metrics);
    if (!events || !metrics) {
      err << "error: failed writing results to '" << opt.out_dir << "'\n";
      return exit_code::kMissingInput;
    }
  }
  write_run_record(dir, record);

  out << summary_line(result.metrics) << '\n';
  return exit_code::kOk;
}

inline int cli_decode_trace(const std::string& trace_path, std::ostream& out, std::ostream& err) {
  const auto text = read_file(trace_path);
  if (!text) {
    err << "error: cannot read trace '" << trace_path << "'\n";
    return exit_code::kMissingInput;
  }
  GestureTrace trace;
  try {
    trace = parse_trace(*text);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kMissingInput;
  }
  if (trace.empty()) {
    err << "error: trace '" << trace_path << "' has no samples\n";
    return exit_code::kMissingInput;
  }
  for (const auto& t : command_transitions(trace)) out << t.tick << ": " << to_string(t.command) << '\n';
  return exit_code::kOk;
}

}  // namespace rover
