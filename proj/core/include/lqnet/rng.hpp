#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace lqnet {

// Philox4x32-10 counter-based generator.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

// SplitMix64 stream. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Stream for one (path, step) row of a simulation; players draw from it in index order.
SplitMix64 row_stream(std::uint64_t seed, std::uint64_t path, std::uint64_t step, std::uint32_t tag = 0);

inline constexpr const char* kRngId = "philox4x32-10(seed; path, step, tag) -> splitmix64 -> boost-ziggurat-normal";

}  // namespace lqnet
