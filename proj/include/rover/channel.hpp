#pragma once

// Distance-parameterized lossy channel with nRF24-style auto-ack ARQ.

#include <cstdint>

#include "rover/frame.hpp"
#include "rover/random.hpp"

namespace rover {

namespace link {
inline constexpr double kReliableRangeM = 250.0;
inline constexpr double kMaxRangeM = 1000.0;
inline constexpr double kCarrierGhz = 2.4;
inline constexpr int kMaxRetries = 15;
inline constexpr int kMaxAttempts = 1 + kMaxRetries;
}  // namespace link

// 0 up to 250 m, quadratic ramp to 1 at 1000 m, 1 beyond.
inline double loss_probability(double distance_m) {
  if (!(distance_m > link::kReliableRangeM)) return 0.0;
  if (distance_m > link::kMaxRangeM) return 1.0;
  const double u = (distance_m - link::kReliableRangeM) / (link::kMaxRangeM - link::kReliableRangeM);
  return u * u;
}

struct ChannelState {
  double distance_m{0.0};
  Rng rng;
  // Metadata only; the loss model is distance-driven.
  double carrier_ghz{link::kCarrierGhz};
};

struct LinkStats {
  std::uint64_t frames_sent{0};
  std::uint64_t frames_delivered{0};
  std::uint64_t retransmissions{0};
  std::uint64_t frames_dropped{0};

  double delivery_ratio() const {
    return frames_sent == 0 ? 1.0 : static_cast<double>(frames_delivered) / static_cast<double>(frames_sent);
  }

  friend bool operator==(const LinkStats&, const LinkStats&) = default;
};

struct DeliveryResult {
  bool delivered{false};
  int attempts_used{0};

  friend bool operator==(const DeliveryResult&, const DeliveryResult&) = default;
};

// Runs the full ARQ exchange for one frame inside a single tick. Each attempt
// draws once for the data direction and once for the ack, both always drawn,
// and succeeds only if both draws exceed the loss probability.
inline DeliveryResult transmit(const Frame& /*frame*/, ChannelState& ch, LinkStats& stats) {
  const double p = loss_probability(ch.distance_m);
  ++stats.frames_sent;
  for (int attempt = 1; attempt <= link::kMaxAttempts; ++attempt) {
    const double data_draw = ch.rng.uniform_open_closed();
    const double ack_draw = ch.rng.uniform_open_closed();
    if (data_draw > p && ack_draw > p) {
      ++stats.frames_delivered;
      stats.retransmissions += static_cast<std::uint64_t>(attempt - 1);
      return {true, attempt};
    }
  }
  ++stats.frames_dropped;
  stats.retransmissions += link::kMaxRetries;
  return {false, link::kMaxAttempts};
}

}  // namespace rover
