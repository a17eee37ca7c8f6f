#pragma once

// Counter-based random streams. A stream is a pure function of
// (seed, stream id, counter), so draws are reproducible across runs,
// platforms and worker counts. Only integer arithmetic is used to produce
// raw bits; the floating-point conversions below are exact.

#include <cstdint>
#include <limits>

namespace densemg {

class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  /// Independent child stream; children of different ids never share keys
  /// with each other or with the parent's key derivation inputs.
  RngStream substream(std::uint64_t id) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }
  std::uint64_t position() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept;
  result_type operator()() noexcept { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1).
  double uniform_open() noexcept {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }
  /// Unbiased integer in [0, bound); bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound) noexcept;
  bool coin() noexcept { return (next_u64() >> 63) != 0; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key0_;
  std::uint64_t key1_;
  std::uint64_t counter_ = 0;
};

}  // namespace densemg
