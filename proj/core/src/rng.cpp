#include "lqnet/rng.hpp"

namespace lqnet {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  constexpr std::uint64_t kMul0 = 0xD2511F53u, kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u, kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = kMul0 * ctr[0];
    const std::uint64_t p1 = kMul1 * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

SplitMix64 row_stream(std::uint64_t seed, std::uint64_t path, std::uint64_t step, std::uint32_t tag) {
  const auto out = philox4x32({static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32),
                               static_cast<std::uint32_t>(step),
                               static_cast<std::uint32_t>(step >> 32) ^ (tag << 16)},
                              {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  return SplitMix64((static_cast<std::uint64_t>(out[0]) << 32) | out[1]);
}

}  // namespace lqnet
