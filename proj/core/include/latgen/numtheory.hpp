#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

namespace latgen {

using u64 = std::uint64_t;

u64 gcd(u64 a, u64 b) noexcept;
u64 mulmod(u64 a, u64 b, u64 m) noexcept;
u64 powmod(u64 base, u64 exp, u64 m) noexcept;

// Deterministic for every 64-bit input.
bool is_prime(u64 n) noexcept;

// Largest prime <= n; throws std::domain_error when n < 2.
u64 prev_prime(u64 n);
// Smallest prime >= n; throws std::overflow_error past the largest 64-bit prime.
u64 next_prime(u64 n);

bool is_power_of_two(u64 n) noexcept;
unsigned log2_exact(u64 n);

// Inverse of a modulo m in [0, m); throws std::domain_error if gcd(a, m) != 1.
u64 mod_inverse(std::int64_t a, u64 m);

std::vector<u64> distinct_prime_factors(u64 n);

// Smallest generator of the multiplicative group mod p (p an odd prime).
u64 primitive_root(u64 p);

class GeneratingVector {
 public:
  // Components must satisfy 1 <= z_j <= N - 1 and gcd(z_j, N) = 1.
  GeneratingVector(u64 modulus, std::vector<u64> components);

  u64 modulus() const noexcept { return modulus_; }
  std::size_t dims() const noexcept { return z_.size(); }
  std::span<const u64> components() const noexcept { return z_; }
  u64 operator[](std::size_t j) const { return z_[j]; }

  friend bool operator==(const GeneratingVector&, const GeneratingVector&) = default;

 private:
  u64 modulus_;
  std::vector<u64> z_;
};

// {k z / N} componentwise.
std::vector<double> lattice_point(const GeneratingVector& z, u64 k);

class LatticePoints {
 public:
  class iterator {
   public:
    using value_type = std::vector<double>;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(const GeneratingVector* z, u64 k) : z_(z), k_(k) {}

    value_type operator*() const { return lattice_point(*z_, k_); }
    iterator& operator++() {
      ++k_;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++k_;
      return old;
    }
    u64 index() const noexcept { return k_; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.k_ == b.k_; }

   private:
    const GeneratingVector* z_ = nullptr;
    u64 k_ = 0;
  };

  explicit LatticePoints(const GeneratingVector& z) : z_(&z) {}
  iterator begin() const { return {z_, 0}; }
  iterator end() const { return {z_, z_->modulus()}; }
  std::size_t size() const noexcept { return z_->modulus(); }

 private:
  const GeneratingVector* z_;
};

// 1 if m . z == 0 (mod N), else 0.
int dual_indicator(std::span<const std::int64_t> m, const GeneratingVector& z);

}  // namespace latgen
