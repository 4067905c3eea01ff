#pragma once

#include <cstdint>
#include <limits>

namespace parking {

__extension__ using uint128 = unsigned __int128;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// SplitMix64 stream keyed by (seed, stream id). Stream t of seed s is the
/// same sequence no matter which thread draws it or in what order, which is
/// what makes Monte Carlo runs independent of the worker count.
class stream_rng {
 public:
  using result_type = std::uint64_t;

  constexpr stream_rng(std::uint64_t seed, std::uint64_t stream) noexcept
      : state_(splitmix64_mix(seed + golden) ^ splitmix64_mix(stream * odd_key + 1)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += golden;
    return splitmix64_mix(state_);
  }

  /// Uniform integer in [0, bound), bound >= 1 (Lemire's multiply-shift with rejection).
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    uint128 product = static_cast<uint128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<uint128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

 private:
  static constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t odd_key = 0xd1b54a32d192ed03ULL;
  std::uint64_t state_;
};

}  // namespace parking
