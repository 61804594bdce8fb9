#include <doctest.h>

#include <array>
#include <cstdint>
#include <string>

#include "lqnet/rng.hpp"

using namespace lqnet;

TEST_CASE("philox4x32-10 known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("splitmix64 reference output") {
  SplitMix64 g(0);
  CHECK(g() == 0xe220a8397b1dcdafull);
  CHECK(g() == 0x6e789e6aa1b965f4ull);
  CHECK(g() == 0x06c45d188009454full);
}

TEST_CASE("row streams are deterministic and distinct") {
  auto a = row_stream(42, 3, 7);
  auto b = row_stream(42, 3, 7);
  for (int i = 0; i < 5; ++i) CHECK(a() == b());
  const auto x = row_stream(42, 3, 7)();
  CHECK(x != row_stream(43, 3, 7)());
  CHECK(x != row_stream(42, 4, 7)());
  CHECK(x != row_stream(42, 3, 8)());
  CHECK(x != row_stream(42, 3, 7, 1)());
  CHECK(std::string(kRngId).find("philox4x32-10") == 0);
}
