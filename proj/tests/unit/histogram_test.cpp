#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "threadlens/error.hpp"
#include "threadlens/histogram.hpp"

using namespace threadlens;

TEST(Histogram, UnitBinsHoldRepeatedValue) {
  Histogram h(BinSpec::linear(1.0));
  for (int i = 0; i < 3; ++i) h.add(6);
  const auto rows = h.rows();
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].lo, 6.0);
  EXPECT_EQ(rows[0].hi, 7.0);
  EXPECT_EQ(rows[0].count, 3u);
}

TEST(Histogram, EmptyHasNoRows) {
  EXPECT_TRUE(Histogram(BinSpec::log()).rows().empty());
}

TEST(Histogram, LogBinsRejectFractions) {
  Histogram h(BinSpec::log(10));
  h.add(0);
  h.add(1);
  EXPECT_THROW(h.add(0.5), Error);
  EXPECT_THROW(h.add(-1), Error);
  EXPECT_EQ(h.rows().front().lo, 0.0);
  EXPECT_EQ(h.rows().front().hi, 1.0);
}

TEST(Histogram, BadSpecs) {
  EXPECT_THROW(Histogram(BinSpec::linear(0)), Error);
  EXPECT_THROW(Histogram(BinSpec::log(0)), Error);
}

TEST(Histogram, DensityIntegratesToOne) {
  std::mt19937_64 rng(3);
  std::exponential_distribution<double> fast(1.0 / 600), slow(1.0 / 500000);
  std::bernoulli_distribution pick(0.7);
  Histogram h(BinSpec::log(20));
  for (int i = 0; i < 20000; ++i) h.add(std::floor(pick(rng) ? fast(rng) : slow(rng)));
  double integral = 0;
  std::uint64_t total = 0;
  for (const auto& r : h.rows()) {
    integral += r.density * (r.hi - r.lo);
    total += r.count;
  }
  EXPECT_NEAR(integral, 1.0, 1e-9);
  EXPECT_EQ(total, 20000u);
}

TEST(Histogram, MergeEqualsSingleAccumulation) {
  Histogram a(BinSpec::linear(0.05, -1)), b(BinSpec::linear(0.05, -1)), all(BinSpec::linear(0.05, -1));
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    (i % 3 ? a : b).add(v);
    all.add(v);
  }
  a.merge(b);
  EXPECT_EQ(a, all);
  EXPECT_THROW(a.merge(Histogram(BinSpec::log())), Error);
}
