#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "latgen/cbc.hpp"
#include "latgen/cbc_dbd.hpp"
#include "latgen/error.hpp"

using namespace latgen;
using std::numbers::pi;

namespace {
ProductWeights inverse_square(std::size_t s) {
  std::vector<double> g(s);
  for (std::size_t j = 1; j <= s; ++j) g[j - 1] = 1.0 / static_cast<double>(j * j);
  return ProductWeights(std::move(g));
}

// Direct enumeration of the truncated dual sum over 0 <= |m_j| < N.
double truncated_by_enumeration(const GeneratingVector& z, const ProductWeights& w, double alpha) {
  const auto N = static_cast<std::int64_t>(z.modulus());
  const std::size_t s = z.dims();
  std::vector<std::int64_t> m(s, -(N - 1));
  double acc = 0.0;
  for (;;) {
    bool nonzero = false;
    for (auto v : m) nonzero |= v != 0;
    if (nonzero && dual_indicator(m, z)) acc += 1.0 / r_alpha_gamma(m, alpha, w);
    std::size_t j = 0;
    while (j < s && ++m[j] == N) m[j++] = -(N - 1);
    if (j == s) break;
  }
  return acc;
}
}  // namespace

TEST(ProductMinusOne, SmallFactors) {
  const std::vector<double> x{1e-17, 2e-17, -5e-18};
  EXPECT_NEAR(product_minus_one(x), 2.5e-17, 1e-32);
  const std::vector<double> y{1.0, 2.0};
  EXPECT_EQ(product_minus_one(y), 5.0);
  EXPECT_EQ(product_minus_one(std::span<const double>{}), 0.0);
}

TEST(WorstCaseError, HandValue) {
  const GeneratingVector z(2, {1});
  EXPECT_NEAR(worst_case_error(z, 2.0, ProductWeights({1.0})), pi * pi / 12, 1e-15);
  EXPECT_NEAR(worst_case_error(z, 2.0, ProductWeights({1.0})), 0.82246703342411321824, 1e-15);
  EXPECT_EQ(worst_case_error(GeneratingVector(61, {1, 7, 30}), 2.0, ProductWeights({0, 0, 0})), 0.0);
  EXPECT_THROW(worst_case_error(z, 1.0, ProductWeights({1.0})), std::domain_error);
}

TEST(WorstCaseError, OracleValues) {
  const ProductWeights w({1.0, 1.0 / 16});
  struct Case {
    u64 z2;
    double e;
  };
  for (auto c : {Case{1, 0.15421703728163696463}, Case{15, 0.15421703728163696463}, Case{3, 0.041254834544451521057},
                 Case{13, 0.041254834544451521057}, Case{5, 0.041254834544451521057},
                 Case{11, 0.041254834544451521057}, Case{7, 0.035309455453020708238},
                 Case{9, 0.035309455453020708238}}) {
    EXPECT_NEAR(worst_case_error(GeneratingVector(16, {1, c.z2}), 2.0, w), c.e, 1e-15) << c.z2;
  }
  EXPECT_NEAR(worst_case_error(GeneratingVector(7, {1, 3}), 3.0, ProductWeights({1.0, 0.25})),
              0.10863654923019704844, 1e-13);
}

TEST(WorstCaseError, GeneralMatchesProductAndSymmetry) {
  const auto w = inverse_square(6);
  const GeneratingVector z(127, {1, 47, 29, 100, 3, 88});
  const GeneratingVector flipped(127, {126, 47, 98, 100, 124, 39});
  for (double alpha : {2.0, 3.0, 4.0}) {
    const double e = worst_case_error(z, alpha, w);
    EXPECT_NEAR(worst_case_error(z, alpha, GeneralWeights::from_product(w)), e, 1e-12 * e);
    EXPECT_NEAR(worst_case_error(flipped, alpha, w), e, 1e-12 * e);
    EXPECT_NEAR(worst_case_error(z, alpha, Weights{w}), e, 0.0);
  }
}

TEST(Bruteforce, BracketsHandValue) {
  const auto g = GeneralWeights::from_product(ProductWeights({1.0}));
  const auto r = worst_case_error_bruteforce(GeneratingVector(2, {1}), 2.0, g, 64);
  EXPECT_GT(r.value, 0.0);
  EXPECT_GE(r.tail_bound, 0.0);
  EXPECT_LE(std::fabs(r.value - pi * pi / 12), r.tail_bound);
}

TEST(Bruteforce, AgreesWithClosedForm) {
  std::mt19937_64 rng(9);
  const auto w = inverse_square(2);
  for (int i = 0; i < 5; ++i) {
    const GeneratingVector z(8, {1, 2 * (rng() % 4) + 1});
    const auto r = worst_case_error_bruteforce(z, 2.0, GeneralWeights::from_product(w), 400);
    EXPECT_LE(std::fabs(worst_case_error(z, 2.0, w) - r.value), r.tail_bound + 1e-12);
  }
  EXPECT_THROW(worst_case_error_bruteforce(GeneratingVector(8, {1, 3, 5, 7}), 2.0,
                                           GeneralWeights::from_product(inverse_square(4)), 100000),
               std::invalid_argument);
}

TEST(TruncatedDualSum, HandValues) {
  EXPECT_NEAR(truncated_dual_sum(GeneratingVector(5, {1, 2}), ProductWeights({1.0, 0.5})), 2.0833333333333333333,
              1e-14);
  for (u64 N : {2u, 4u, 61u}) {
    EXPECT_NEAR(truncated_dual_sum(GeneratingVector(N, {1}), ProductWeights({1.0})), 0.0, 1e-14);
    EXPECT_NEAR(truncated_dual_sum(GeneratingVector(N, {1}), ProductWeights({1.0}), 2.0), 0.0, 1e-14);
  }
  EXPECT_EQ(truncated_dual_sum(GeneratingVector(7, {1, 3}), ProductWeights({0, 0})), 0.0);
}

TEST(TruncatedDualSum, MatchesEnumeration) {
  const auto w = inverse_square(3);
  for (const auto& z : {GeneratingVector(7, {1, 3}), GeneratingVector(8, {1, 3, 5}), GeneratingVector(11, {1, 4, 7}),
                        GeneratingVector(16, {1, 7})}) {
    const auto wp = w.prefix(z.dims());
    for (double alpha : {1.0, 2.0}) {
      const double ref = truncated_by_enumeration(z, wp, alpha);
      EXPECT_NEAR(truncated_dual_sum(z, wp, alpha), ref, 1e-12 * (1 + ref));
      EXPECT_NEAR(truncated_dual_sum(z, GeneralWeights::from_product(wp), alpha), ref, 1e-12 * (1 + ref));
    }
  }
}

TEST(TruncatedDualSum, OrderingAndGap) {
  const auto w = inverse_square(10);
  for (u64 N : {61u, 127u, 251u}) {
    const auto z = construct_korobov_cbc(N, 10, w);
    const double t = truncated_dual_sum(z, w);
    EXPECT_GE(t, 0.0);
    for (double alpha : {2.0, 3.0}) {
      const auto wa = power_weights(w, alpha);
      EXPECT_LE(truncated_dual_sum(z, w, alpha), t);
      const double gap = worst_case_error(z, alpha, wa) - truncated_dual_sum(z, wa, alpha);
      EXPECT_GE(gap, -1e-15);
      EXPECT_LE(gap, truncation_gap_bound(N, alpha, w.prefix(10)) + 1e-15);
    }
  }
}

TEST(Bounds, HandValues) {
  EXPECT_NEAR(bound_existence(3, ProductWeights({1.0})), 2.7981497182241462552, 1e-14);
  EXPECT_NEAR(bound_cbc_dbd(64, ProductWeights({1.0})), 3.3640451828643226660, 1e-14);
  EXPECT_NEAR(bound_korobov_cbc(61, ProductWeights({1.0})), 3.6297007983706872110, 1e-14);
  EXPECT_NEAR(bound_log_sine_energy(8, ProductWeights({1.0, 1.0})), 37.555206223300695491, 1e-12);
  EXPECT_NEAR(bound_korobov_quality(7, ProductWeights({1.0, 1.0})), 22.929905829007139799, 1e-12);
  const ProductWeights zero({0.0, 0.0, 0.0});
  EXPECT_EQ(bound_existence(61, zero), 0.0);
  EXPECT_NEAR(bound_cbc_dbd(64, zero), (1 + 2 * (1 + std::log(64.0))) / 64, 1e-15);
  EXPECT_EQ(bound_korobov_cbc(61, zero), 0.0);
}

TEST(Bounds, GeneralMatchesProductAndDecreases) {
  const auto w = inverse_square(8);
  const auto g = GeneralWeights::from_product(w);
  for (u64 N : {61u, 1021u}) {
    EXPECT_NEAR(bound_existence(N, g), bound_existence(N, w), 1e-12 * bound_existence(N, w));
    EXPECT_NEAR(bound_korobov_cbc(N, g), bound_korobov_cbc(N, w), 1e-12 * bound_korobov_cbc(N, w));
    EXPECT_NEAR(bound_korobov_quality(N, g), bound_korobov_quality(N, w), 1e-12 * bound_korobov_quality(N, w));
    EXPECT_NEAR(truncation_gap_bound(N, 2, g), truncation_gap_bound(N, 2, w), 1e-12 * truncation_gap_bound(N, 2, w));
  }
  for (unsigned n = 12; n < 30; ++n) {
    EXPECT_LT(bound_cbc_dbd(u64{1} << (n + 1), w), bound_cbc_dbd(u64{1} << n, w));
    EXPECT_LT(bound_existence(prev_prime(u64{1} << (n + 1)), w), bound_existence(prev_prime(u64{1} << n), w));
  }
  EXPECT_LT(bound_existence(61, ProductWeights({0.5})), bound_existence(61, ProductWeights({0.6})));
}
