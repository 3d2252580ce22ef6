#include <gtest/gtest.h>

#include <set>

#include "graphondyn/random.hpp"

using graphondyn::Philox4x32;
using graphondyn::PhiloxStream;

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswerZero) {
  const Philox4x32 g(0);
  const Philox4x32::Counter out = g.block({0, 0, 0, 0});
  EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  const Philox4x32 g(0xffffffffffffffffULL);
  const Philox4x32::Counter out = g.block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out, (Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
  const Philox4x32 g(0x299f31d0a4093822ULL);
  const Philox4x32::Counter out = g.block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u});
  EXPECT_EQ(out, (Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, UniformRangeAndDeterminism) {
  const Philox4x32 a(42), b(42), c(43);
  int differs = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = a.uniform(i);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_EQ(u, b.uniform(i));
    differs += u != c.uniform(i);
  }
  EXPECT_GT(differs, 990);
}

TEST(Philox, StreamsAreIndependent) {
  const Philox4x32 g(7);
  EXPECT_NE(g.bits(5, 0), g.bits(5, 1));
}

TEST(Philox, MeanIsHalf) {
  PhiloxStream s(123);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += s.uniform();
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(Philox, BelowCoversRange) {
  PhiloxStream s(9);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 500; ++i) {
    const auto v = s.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Philox, NormalMoments) {
  PhiloxStream s(5);
  double m1 = 0.0, m2 = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const double x = s.normal();
    m1 += x;
    m2 += x * x;
  }
  EXPECT_NEAR(m1 / n, 0.0, 0.02);
  EXPECT_NEAR(m2 / n, 1.0, 0.03);
}
