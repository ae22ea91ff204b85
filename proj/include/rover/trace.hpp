#pragma once

// Gesture trace CSV: header `tick,x_g,y_g`, one sample per tick, strictly
// increasing ticks.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rover/error.hpp"
#include "rover/gesture.hpp"

namespace rover {

using GestureTrace = std::vector<AccelSample>;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace detail

inline GestureTrace parse_trace(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  GestureTrace trace;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = detail::trim(line);
    if (row.empty()) continue;
    if (!saw_header) {
      std::string compact;
      for (char c : row)
        if (c != ' ') compact.push_back(c);
      if (compact != "tick,x_g,y_g") {
        throw ParseError("line " + std::to_string(line_no) + ": expected header 'tick,x_g,y_g'");
      }
      saw_header = true;
      continue;
    }

    std::vector<std::string_view> fields;
    for (std::size_t start = 0;;) {
      const auto comma = row.find(',', start);
      fields.push_back(row.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    AccelSample s;
    if (fields.size() != 3 || !detail::parse_number(fields[0], s.tick) || !detail::parse_number(fields[1], s.x_g) ||
        !detail::parse_number(fields[2], s.y_g) || !std::isfinite(s.x_g) || !std::isfinite(s.y_g)) {
      throw ParseError("line " + std::to_string(line_no) + ": malformed row '" + std::string(row) + "'");
    }
    if (s.tick < 0) throw ParseError("line " + std::to_string(line_no) + ": negative tick");
    if (!trace.empty() && s.tick <= trace.back().tick) {
      throw ParseError("line " + std::to_string(line_no) + ": ticks must be strictly increasing");
    }
    trace.push_back(s);
  }
  if (!saw_header) throw ParseError("empty trace: missing header 'tick,x_g,y_g'");
  return trace;
}

inline GestureTrace parse_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_trace(in);
}

// Tick -> command transitions as the control unit's classifier sees them.
struct CommandTransition {
  std::int64_t tick{0};
  DriveCommand command{DriveCommand::Stop};

  friend bool operator==(const CommandTransition&, const CommandTransition&) = default;
};

inline std::vector<CommandTransition> command_transitions(const GestureTrace& trace) {
  std::vector<CommandTransition> out;
  DriveCommand prev = DriveCommand::Stop;
  for (const auto& s : trace) {
    const DriveCommand c = classify(sample_to_counts(s), prev);
    if (out.empty() || c != prev) out.push_back({s.tick, c});
    prev = c;
  }
  return out;
}

}  // namespace rover
