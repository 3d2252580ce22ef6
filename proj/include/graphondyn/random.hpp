#pragma once

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw,
// "Parallel random numbers: as easy as 1, 2, 3", SC'11). Output depends only
// on (key, counter), so streams reproduce bit-exactly on every platform.

#include <array>
#include <cstdint>

namespace graphondyn {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  /// The raw block function: ten rounds over `ctr` with this generator's key.
  Counter block(Counter ctr) const;

  /// Uniform double in [0,1) drawn from the 64-bit counter `index` with a
  /// 32-bit `stream` tag. Uses the top 53 bits of two output words.
  double uniform(std::uint64_t index, std::uint32_t stream = 0) const;

  /// 64 random bits for counter `index`.
  std::uint64_t bits(std::uint64_t index, std::uint32_t stream = 0) const;

 private:
  Key key_;
};

/// Sequential convenience wrapper: consecutive draws walk the counter.
class PhiloxStream {
 public:
  explicit PhiloxStream(std::uint64_t seed, std::uint32_t stream = 0)
      : gen_(seed), stream_(stream) {}

  double uniform() { return gen_.uniform(next_++, stream_); }
  std::uint64_t bits() { return gen_.bits(next_++, stream_); }
  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal via Box-Muller.
  double normal();

 private:
  Philox4x32 gen_;
  std::uint32_t stream_;
  std::uint64_t next_ = 0;
};

}  // namespace graphondyn
