#include <gtest/gtest.h>

#include <cmath>

#include "qcl/random.hpp"

using namespace qcl;

// Known-answer vectors for Philox4x32-10 from the Random123 distribution.
TEST(Philox4x32, KnownAnswers) {
  using C = Philox4x32::Counter;
  EXPECT_EQ(Philox4x32({0u, 0u})({0u, 0u, 0u, 0u}),
            (C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(Philox4x32({0xffffffffu, 0xffffffffu})({0xffffffffu, 0xffffffffu, 0xffffffffu,
                                                    0xffffffffu}),
            (C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(Philox4x32({0xa4093822u, 0x299f31d0u})({0x243f6a88u, 0x85a308d3u, 0x13198a2eu,
                                                    0x03707344u}),
            (C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterNormalStream, DeterministicAndAddressed) {
  const CounterNormalStream a(7);
  const CounterNormalStream b(7);
  const CounterNormalStream c(8);
  EXPECT_EQ(a.normal(3, 4, 5), b.normal(3, 4, 5));
  EXPECT_NE(a.normal(3, 4, 5), c.normal(3, 4, 5));
  EXPECT_NE(a.normal(3, 4, 5), a.normal(3, 4, 6));
  EXPECT_NE(a.normal(3, 4, 5), a.normal(3, 5, 5));
  EXPECT_NE(a.normal(3, 4, 5), a.normal(4, 4, 5));
  EXPECT_NE(a.normal(1, 0, 0), a.normal(std::uint64_t{1} << 32, 0, 0));
}

TEST(CounterNormalStream, Moments) {
  const CounterNormalStream s(123);
  constexpr int n = 200000;
  double m1 = 0.0, m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = s.normal(static_cast<std::uint64_t>(i / 100), 0, static_cast<std::uint32_t>(i % 100));
    ASSERT_TRUE(std::isfinite(x));
    m1 += x;
    m2 += x * x;
    m4 += x * x * x * x;
  }
  m1 /= n;
  m2 /= n;
  m4 /= n;
  EXPECT_NEAR(m1, 0.0, 0.01);
  EXPECT_NEAR(m2, 1.0, 0.01);
  EXPECT_NEAR(m4, 3.0, 0.05);
}
