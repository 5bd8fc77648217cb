#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "latgen/weights.hpp"

using namespace latgen;

namespace {
ProductWeights inverse_square(std::size_t s) {
  return std::get<ProductWeights>(WeightSpec{WeightSpec::Kind::inverse_square}.resolve(s));
}
ProductWeights geometric(std::size_t s, double c) {
  WeightSpec spec{WeightSpec::Kind::geometric};
  spec.parameter = c;
  return std::get<ProductWeights>(spec.resolve(s));
}
}  // namespace

TEST(WeightOf, Examples) {
  const auto w = inverse_square(4);
  EXPECT_EQ(weight_of(std::span<const std::size_t>{}, w), 1.0);
  const std::size_t u13[] = {1, 3};
  EXPECT_DOUBLE_EQ(weight_of(u13, w), 1.0 / 9);
  const std::size_t u2[] = {2};
  EXPECT_NEAR(weight_of(u2, geometric(3, 0.7)), 0.49, 1e-15);
  const std::size_t bad[] = {5};
  EXPECT_THROW(weight_of(bad, w), std::out_of_range);
}

TEST(WeightOf, ProductMatchesMaterializedTable) {
  const auto w = geometric(10, 0.8);
  const auto g = GeneralWeights::from_product(w);
  EXPECT_EQ(g(0), 1.0);
  for (GeneralWeights::Mask u = 0; u < (1u << 10); ++u) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < 10; ++j)
      if (u >> j & 1) idx.push_back(j + 1);
    EXPECT_NEAR(weight_of(idx, g), weight_of(idx, w), 1e-15);
    EXPECT_EQ(subset_mask(idx), u);
  }
}

TEST(GeneralWeights, FromTable) {
  const auto g = GeneralWeights::from_table(3, {{0b001, 0.5}, {0b101, 0.25}});
  EXPECT_EQ(g(0), 1.0);
  EXPECT_EQ(g(0b001), 0.5);
  EXPECT_EQ(g(0b010), 0.0);
  EXPECT_EQ(g(0b101), 0.25);
  EXPECT_THROW(GeneralWeights::from_table(2, {{0b100, 1.0}}), std::invalid_argument);
  EXPECT_THROW(GeneralWeights(21, [](GeneralWeights::Mask) { return 1.0; }), std::invalid_argument);
}

TEST(ProductWeights, Validation) {
  EXPECT_THROW(ProductWeights({1.0, -0.5}), std::invalid_argument);
  EXPECT_THROW(ProductWeights({std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
  EXPECT_NO_THROW(ProductWeights({0.0, 0.0}));
  const ProductWeights w({0.3, 0.9, 0.1});
  EXPECT_EQ(w.max(), 0.9);
  EXPECT_EQ(w.prefix(2).dims(), 2u);
  EXPECT_THROW(w.prefix(4), std::out_of_range);
}

TEST(RAlphaGamma, Examples) {
  const ProductWeights ones({1.0, 1.0});
  const std::int64_t zero[] = {0, 0};
  EXPECT_EQ(r_alpha_gamma(zero, 2.0, ones), 1.0);
  const ProductWeights half({0.5, 1.0});
  const std::int64_t m20[] = {2, 0};
  EXPECT_DOUBLE_EQ(r_alpha_gamma(m20, 2.0, half), 8.0);
  const std::int64_t m13[] = {1, -3};
  EXPECT_DOUBLE_EQ(r_alpha_gamma(m13, 2.0, ones), 9.0);
  const ProductWeights none({0.0, 1.0});
  const std::int64_t m10[] = {1, 0};
  EXPECT_TRUE(std::isinf(r_alpha_gamma(m10, 2.0, none)));
}

TEST(RAlphaGamma, SymmetricAndMultiplicative) {
  const auto w = inverse_square(3);
  const auto g = GeneralWeights::from_product(w);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> d(-9, 9);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t a = d(rng), b = d(rng), c = d(rng);
    const std::int64_t m[] = {a, b, c}, neg[] = {-a, -b, -c};
    const std::int64_t left[] = {a, 0, 0}, right[] = {0, b, c};
    const double r = r_alpha_gamma(m, 2.5, w);
    EXPECT_DOUBLE_EQ(r, r_alpha_gamma(neg, 2.5, w));
    EXPECT_NEAR(r, r_alpha_gamma(left, 2.5, w) * r_alpha_gamma(right, 2.5, w), 1e-12 * r);
    EXPECT_NEAR(r, r_alpha_gamma(m, 2.5, g), 1e-12 * r);
  }
}

TEST(PowerWeights, Examples) {
  const auto p = power_weights(ProductWeights({1.0, 1.0, 1.0}), 3.0);
  for (double g : p.gammas()) EXPECT_EQ(g, 1.0);
  EXPECT_EQ(power_weights(ProductWeights({0.5}), 2.0)[0], 0.25);
  const auto sq = power_weights(inverse_square(5), 2.0);
  for (std::size_t j = 1; j <= 5; ++j) EXPECT_NEAR(sq[j - 1], std::pow(static_cast<double>(j), -4.0), 1e-16);
  const auto g = power_weights(GeneralWeights::from_product(inverse_square(3)), 2.0);
  EXPECT_NEAR(g(0b111), std::pow(1.0 / 36, 2.0), 1e-18);
  EXPECT_EQ(g(0), 1.0);
}

TEST(SubsetPowerSum, ProductAndGeneralAgree) {
  const auto w = geometric(12, 0.95);
  const auto g = GeneralWeights::from_product(w);
  for (double a : {0.5, std::log(4.0), 2 * std::log(61.0)}) {
    const double p = subset_power_sum(w, a);
    EXPECT_NEAR(p, subset_power_sum(g, a), 1e-12 * p);
  }
  EXPECT_EQ(subset_power_sum(ProductWeights({0.0, 0.0}), 3.0), 0.0);
}

TEST(Summability, Diagnostic) {
  const auto w = inverse_square(4);
  const auto d = summability_diagnostic(w);
  ASSERT_EQ(d.size(), 4u);
  const auto dg = summability_diagnostic(GeneralWeights::from_product(w));
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(dg[j], d[j], 1e-15);
  const auto h = GeneralWeights::from_table(2, {{0b01, 0.5}, {0b10, 0.1}, {0b11, 0.4}});
  const auto dh = summability_diagnostic(h);
  EXPECT_DOUBLE_EQ(dh[1], 0.8);
}

TEST(WeightSpec, Resolve) {
  const auto w = inverse_square(3);
  EXPECT_DOUBLE_EQ(w[2], 1.0 / 9);
  const auto c = std::get<ProductWeights>(WeightSpec{WeightSpec::Kind::inverse_cube}.resolve(2));
  EXPECT_DOUBLE_EQ(c[1], 1.0 / 8);
  EXPECT_NEAR(geometric(2, 0.7)[1], 0.49, 1e-15);
  WeightSpec list{WeightSpec::Kind::list};
  list.list = {0.5, 0.25};
  EXPECT_EQ(dims(list.resolve(2)), 2u);
  EXPECT_THROW(list.resolve(3), std::invalid_argument);
}
