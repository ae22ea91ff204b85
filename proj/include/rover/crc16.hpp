#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace rover {

// CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF, no reflection, no xorout.
namespace detail {

constexpr std::array<std::uint16_t, 256> make_crc16_table() {
  std::array<std::uint16_t, 256> table{};
  for (unsigned i = 0; i < 256; ++i) {
    auto crc = static_cast<std::uint16_t>(i << 8);
    for (int bit = 0; bit < 8; ++bit) {
      crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ 0x1021) : static_cast<std::uint16_t>(crc << 1);
    }
    table[i] = crc;
  }
  return table;
}

inline constexpr auto kCrc16Table = make_crc16_table();

}  // namespace detail

inline constexpr std::uint16_t kCrc16Init = 0xFFFF;

constexpr std::uint16_t crc16_update(std::uint16_t crc, std::span<const std::uint8_t> bytes) noexcept {
  for (const std::uint8_t b : bytes) {
    crc = static_cast<std::uint16_t>((crc << 8) ^ detail::kCrc16Table[((crc >> 8) ^ b) & 0xFF]);
  }
  return crc;
}

constexpr std::uint16_t crc16(std::span<const std::uint8_t> bytes) noexcept {
  return crc16_update(kCrc16Init, bytes);
}

}  // namespace rover
