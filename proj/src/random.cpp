#include "graphondyn/random.hpp"

#include <cmath>
#include <numbers>

namespace graphondyn {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr) const {
  Key key = key_;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::uint64_t Philox4x32::bits(std::uint64_t index, std::uint32_t stream) const {
  const Counter out = block({static_cast<std::uint32_t>(index),
                             static_cast<std::uint32_t>(index >> 32), stream, 0u});
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

double Philox4x32::uniform(std::uint64_t index, std::uint32_t stream) const {
  return static_cast<double>(bits(index, stream) >> 11) * 0x1.0p-53;
}

std::uint64_t PhiloxStream::below(std::uint64_t bound) {
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = bits();
  while (x >= limit) x = bits();
  return x % bound;
}

double PhiloxStream::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace graphondyn
