#pragma once

// Link-layer frame: addr(5) | ftype(1) | len(1) | payload(len) | crc(2, BE).
// The CRC covers everything before it.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rover/crc16.hpp"
#include "rover/error.hpp"

namespace rover {

enum class FrameType : std::uint8_t {
  Drive = 0x01,
  PirDetection = 0x02,
  Gas = 0x03,
  Status = 0x04,
  Ack = 0x05,
};

using Address = std::array<std::uint8_t, 5>;

inline constexpr std::size_t kMaxPayload = 32;
inline constexpr std::size_t kHeaderSize = 5 + 1 + 1;
inline constexpr std::size_t kCrcSize = 2;

// Pipe addresses for the single base<->robot pair.
inline constexpr Address kRobotAddress{0xE7, 0xE7, 0xE7, 0xE7, 0xE7};
inline constexpr Address kBaseAddress{0xC2, 0xC2, 0xC2, 0xC2, 0xC2};

struct Frame {
  Address addr{};
  FrameType ftype{FrameType::Drive};
  std::vector<std::uint8_t> payload;

  friend bool operator==(const Frame&, const Frame&) = default;
};

inline bool is_valid_frame_type(std::uint8_t b) noexcept {
  return b >= static_cast<std::uint8_t>(FrameType::Drive) && b <= static_cast<std::uint8_t>(FrameType::Ack);
}

inline std::vector<std::uint8_t> encode_frame(const Frame& f) {
  if (f.payload.size() > kMaxPayload) {
    throw FrameError(FrameError::Kind::Oversize,
                     "payload of " + std::to_string(f.payload.size()) + " bytes exceeds " + std::to_string(kMaxPayload));
  }
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + f.payload.size() + kCrcSize);
  out.insert(out.end(), f.addr.begin(), f.addr.end());
  out.push_back(static_cast<std::uint8_t>(f.ftype));
  out.push_back(static_cast<std::uint8_t>(f.payload.size()));
  out.insert(out.end(), f.payload.begin(), f.payload.end());
  const std::uint16_t crc = crc16(out);
  out.push_back(static_cast<std::uint8_t>(crc >> 8));
  out.push_back(static_cast<std::uint8_t>(crc & 0xFF));
  return out;
}

inline Frame decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize + kCrcSize) {
    throw FrameError(FrameError::Kind::Framing, "truncated frame: " + std::to_string(bytes.size()) + " bytes");
  }
  const std::size_t len = bytes[5 + 1];
  if (len > kMaxPayload) {
    throw FrameError(FrameError::Kind::Framing, "length field " + std::to_string(len) + " exceeds maximum");
  }
  if (bytes.size() != kHeaderSize + len + kCrcSize) {
    throw FrameError(FrameError::Kind::Framing, "length field " + std::to_string(len) + " disagrees with buffer of " +
                                                    std::to_string(bytes.size()) + " bytes");
  }
  const auto body = bytes.first(kHeaderSize + len);
  const auto wire_crc = static_cast<std::uint16_t>((bytes[kHeaderSize + len] << 8) | bytes[kHeaderSize + len + 1]);
  if (crc16(body) != wire_crc) {
    throw FrameError(FrameError::Kind::Integrity, "crc mismatch");
  }
  if (!is_valid_frame_type(bytes[5])) {
    throw FrameError(FrameError::Kind::Framing, "unknown frame type " + std::to_string(bytes[5]));
  }

  Frame f;
  std::copy_n(bytes.begin(), 5, f.addr.begin());
  f.ftype = static_cast<FrameType>(bytes[5]);
  f.payload.assign(body.begin() + kHeaderSize, body.end());
  return f;
}

// Big-endian helpers for payload construction.
namespace wire {

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

inline void put_i32(std::vector<std::uint8_t>& out, std::int32_t v) { put_u32(out, static_cast<std::uint32_t>(v)); }

inline std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
  return (std::uint32_t{in[at]} << 24) | (std::uint32_t{in[at + 1]} << 16) | (std::uint32_t{in[at + 2]} << 8) |
         std::uint32_t{in[at + 3]};
}

inline std::int32_t get_i32(std::span<const std::uint8_t> in, std::size_t at) {
  return static_cast<std::int32_t>(get_u32(in, at));
}

}  // namespace wire

}  // namespace rover
