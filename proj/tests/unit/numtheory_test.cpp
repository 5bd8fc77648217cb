#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

#include "latgen/numtheory.hpp"

using namespace latgen;

TEST(Gcd, Basics) {
  EXPECT_EQ(gcd(0, 7), 7u);
  EXPECT_EQ(gcd(12, 8), 4u);
  EXPECT_EQ(gcd(1024, 513), 1u);
  EXPECT_EQ(gcd(0, 0), 0u);
}

TEST(Mulmod, NoOverflow) {
  const u64 m = (u64{1} << 62) + 57;
  EXPECT_EQ(mulmod(m - 1, m - 1, m), 1u);
  EXPECT_EQ(powmod(3, 6, 7), 1u);
  EXPECT_EQ(powmod(5, 0, 11), 1u);
}

TEST(IsPrime, Examples) {
  EXPECT_TRUE(is_prime(1021));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(0));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(65537));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_TRUE(is_prime(18446744073709551557ULL));
}

TEST(IsPrime, MatchesSieve) {
  std::vector<bool> composite(5000, false);
  for (u64 i = 2; i < 5000; ++i) {
    if (!composite[i])
      for (u64 j = i * i; j < 5000; j += i) composite[j] = true;
    EXPECT_EQ(is_prime(i), !composite[i]) << i;
  }
}

TEST(PrevPrime, Examples) {
  EXPECT_EQ(prev_prime(64), 61u);
  EXPECT_EQ(prev_prime(2048), 2039u);
  EXPECT_EQ(prev_prime(3), 3u);
  EXPECT_EQ(prev_prime(2), 2u);
  EXPECT_THROW(prev_prime(1), std::domain_error);
  for (u64 p : {5u, 61u, 1021u, 16381u}) EXPECT_EQ(prev_prime(next_prime(p)), p);
  EXPECT_EQ(next_prime(62), 67u);
}

TEST(ModInverse, Examples) {
  EXPECT_EQ(mod_inverse(3, 7), 5u);
  EXPECT_EQ(mod_inverse(1, 13), 1u);
  EXPECT_EQ(mod_inverse(5, 61), 49u);
  EXPECT_EQ(mod_inverse(-2, 7), 3u);
  EXPECT_THROW(mod_inverse(4, 8), std::domain_error);
}

TEST(PrimitiveRoot, Examples) {
  EXPECT_EQ(primitive_root(7), 3u);
  EXPECT_EQ(primitive_root(61), 2u);
  EXPECT_THROW(primitive_root(2), std::domain_error);
}

TEST(PrimitiveRoot, HasFullOrder) {
  for (u64 p = 3; p < 3000; p += 2) {
    if (!is_prime(p)) continue;
    const u64 g = primitive_root(p);
    EXPECT_EQ(powmod(g, p - 1, p), 1u);
    for (u64 q : distinct_prime_factors(p - 1)) EXPECT_NE(powmod(g, (p - 1) / q, p), 1u) << p;
  }
}

TEST(PowerOfTwo, Helpers) {
  EXPECT_TRUE(is_power_of_two(1));
  EXPECT_TRUE(is_power_of_two(1024));
  EXPECT_FALSE(is_power_of_two(0));
  EXPECT_FALSE(is_power_of_two(96));
  EXPECT_EQ(log2_exact(1024), 10u);
  EXPECT_THROW(log2_exact(12), std::domain_error);
}

TEST(GeneratingVector, Validation) {
  EXPECT_NO_THROW(GeneratingVector(8, {1, 3, 7}));
  EXPECT_THROW(GeneratingVector(8, {1, 2}), std::invalid_argument);
  EXPECT_THROW(GeneratingVector(8, {0}), std::invalid_argument);
  EXPECT_THROW(GeneratingVector(8, {9}), std::invalid_argument);
}

TEST(LatticePoint, Examples) {
  const GeneratingVector z(4, {1, 3});
  EXPECT_EQ(lattice_point(z, 2), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(lattice_point(z, 0), (std::vector<double>{0.0, 0.0}));
  const GeneratingVector w(5, {1, 2});
  const auto p = lattice_point(w, 3);
  EXPECT_DOUBLE_EQ(p[0], 0.6);
  EXPECT_DOUBLE_EQ(p[1], 0.2);
}

TEST(LatticePoints, EachCoordinateIsAPermutation) {
  const GeneratingVector z(61, {1, 17, 44});
  LatticePoints pts(z);
  EXPECT_EQ(pts.size(), 61u);
  std::vector<std::vector<u64>> seen(3);
  for (auto it = pts.begin(); it != pts.end(); ++it) {
    const auto x = *it;
    for (std::size_t j = 0; j < 3; ++j) seen[j].push_back(static_cast<u64>(x[j] * 61 + 0.5));
  }
  for (auto& col : seen) {
    std::sort(col.begin(), col.end());
    for (u64 k = 0; k < 61; ++k) EXPECT_EQ(col[k], k);
  }
}

TEST(DualIndicator, Examples) {
  const GeneratingVector z(5, {1, 2});
  const std::int64_t zero[] = {0, 0}, nz[] = {5, 0}, one[] = {1, 0}, dual[] = {-2, 1};
  EXPECT_EQ(dual_indicator(zero, z), 1);
  EXPECT_EQ(dual_indicator(nz, z), 1);
  EXPECT_EQ(dual_indicator(one, z), 0);
  EXPECT_EQ(dual_indicator(dual, z), 1);
}
