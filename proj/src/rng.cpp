#include "densemg/rng.hpp"

namespace densemg {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) noexcept
    : seed_(seed), stream_(stream) {
  key0_ = mix64(seed + kGolden) ^ mix64(stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
  key1_ = mix64(key0_ ^ 0xA0761D6478BD642FULL) + stream;
}

RngStream RngStream::substream(std::uint64_t id) const noexcept {
  return RngStream(mix64(seed_ ^ mix64(stream_ + kGolden)), id);
}

std::uint64_t RngStream::next_u64() noexcept {
  const std::uint64_t c = counter_++;
  return mix64(mix64(c * kGolden + key0_) ^ key1_);
}

std::uint64_t RngStream::uniform_index(std::uint64_t bound) noexcept {
  // Lemire's nearly-divisionless rejection.
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace densemg
