#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "rover/report.hpp"

namespace rover {

struct RunRecord {
  std::string scenario;
  std::uint64_t seed{0};
  std::string started_at;  // UTC, ISO-8601
  std::filesystem::path events_path;
  std::filesystem::path metrics_path;
};

inline std::string utc_timestamp(std::chrono::system_clock::time_point t, const char* fmt = "%Y-%m-%dT%H:%M:%SZ") {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, fmt);
  return ss.str();
}

inline ojson to_json(const RunRecord& r) {
  return ojson{{"scenario", r.scenario},
               {"seed", r.seed},
               {"started_at", r.started_at},
               {"events", r.events_path.string()},
               {"metrics", r.metrics_path.string()}};
}

inline void write_run_record(const std::filesystem::path& dir, const RunRecord& r) {
  std::ofstream out(dir / "run.json");
  out << to_json(r).dump(2) << '\n';
}

// Streams events to `<dir>/events.jsonl` as they happen and writes
// `metrics.json` + `run.json` on finish(). Used by the live service.
class RunWriter {
 public:
  RunWriter(std::filesystem::path dir, const Scenario& sc) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    record_ = {sc.name, sc.seed, utc_timestamp(std::chrono::system_clock::now()), dir_ / "events.jsonl",
               dir_ / "metrics.json"};
    events_.open(record_.events_path, std::ios::trunc);
    write_run_record(dir_, record_);
  }

  RunWriter(const RunWriter&) = delete;
  RunWriter& operator=(const RunWriter&) = delete;

  void append(const TelemetryEvent& ev) {
    write_event_line(events_, ev);
    events_.flush();
  }

  void finish(const MetricsReport& m) {
    events_.flush();
    std::ofstream out(record_.metrics_path, std::ios::trunc);
    write_metrics_json(out, m);
  }

  const RunRecord& record() const { return record_; }

 private:
  std::filesystem::path dir_;
  RunRecord record_;
  std::ofstream events_;
};

}  // namespace rover
