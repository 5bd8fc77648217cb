#include "latgen/numtheory.hpp"

#include <array>
#include <limits>
#include <stdexcept>
#include <string>

namespace latgen {

namespace {
__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;
}  // namespace

u64 gcd(u64 a, u64 b) noexcept {
  while (b != 0) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 mulmod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m) noexcept {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> small = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : small) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are sufficient below 3.3e24.
  for (u64 a : small) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 prev_prime(u64 n) {
  if (n < 2) throw std::domain_error("prev_prime: no prime <= " + std::to_string(n));
  for (u64 m = n;; --m) {
    if (is_prime(m)) return m;
  }
}

u64 next_prime(u64 n) {
  constexpr u64 largest = 18446744073709551557ULL;
  if (n > largest) throw std::overflow_error("next_prime: no 64-bit prime >= " + std::to_string(n));
  for (u64 m = n < 2 ? 2 : n;; ++m) {
    if (is_prime(m)) return m;
  }
}

bool is_power_of_two(u64 n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

unsigned log2_exact(u64 n) {
  if (!is_power_of_two(n)) throw std::domain_error("log2_exact: not a power of two");
  unsigned k = 0;
  while ((u64{1} << k) != n) ++k;
  return k;
}

u64 mod_inverse(std::int64_t a, u64 m) {
  if (m == 0) throw std::domain_error("mod_inverse: zero modulus");
  if (m == 1) return 0;
  // Reduce a into [0, m) without overflow for negative inputs.
  u64 r;
  if (a >= 0) {
    r = static_cast<u64>(a) % m;
  } else {
    const u64 mag = static_cast<u64>(-(a + 1)) + 1;
    r = (m - mag % m) % m;
  }
  i128 old_r = r, cur_r = m;
  i128 old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    const i128 q = old_r / cur_r;
    i128 t = old_r - q * cur_r;
    old_r = cur_r;
    cur_r = t;
    t = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = t;
  }
  if (old_r != 1) {
    throw std::domain_error("mod_inverse: " + std::to_string(a) + " is not invertible mod " +
                            std::to_string(m));
  }
  i128 x = old_s % static_cast<i128>(m);
  if (x < 0) x += m;
  return static_cast<u64>(x);
}

std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

u64 primitive_root(u64 p) {
  if (p < 3 || !is_prime(p)) {
    throw std::domain_error("primitive_root: " + std::to_string(p) + " is not an odd prime");
  }
  const auto factors = distinct_prime_factors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (u64 q : factors) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

GeneratingVector::GeneratingVector(u64 modulus, std::vector<u64> components)
    : modulus_(modulus), z_(std::move(components)) {
  if (modulus_ < 2) throw std::invalid_argument("generating vector: N must be >= 2");
  if (z_.empty()) throw std::invalid_argument("generating vector: no components");
  for (std::size_t j = 0; j < z_.size(); ++j) {
    const u64 zj = z_[j];
    if (zj < 1 || zj >= modulus_ || gcd(zj, modulus_) != 1) {
      throw std::invalid_argument("generating vector: component " + std::to_string(j + 1) + " = " +
                                  std::to_string(zj) + " is not a unit mod " +
                                  std::to_string(modulus_));
    }
  }
}

std::vector<double> lattice_point(const GeneratingVector& z, u64 k) {
  const u64 n = z.modulus();
  std::vector<double> x(z.dims());
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = static_cast<double>(mulmod(k % n, z[j], n)) / static_cast<double>(n);
  }
  return x;
}

int dual_indicator(std::span<const std::int64_t> m, const GeneratingVector& z) {
  if (m.size() != z.dims()) throw std::invalid_argument("dual_indicator: dimension mismatch");
  const u64 n = z.modulus();
  u64 acc = 0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    const u64 mj = static_cast<u64>(((m[j] % static_cast<std::int64_t>(n)) + static_cast<std::int64_t>(n)) %
                                    static_cast<std::int64_t>(n));
    acc = (acc + mulmod(mj, z[j], n)) % n;
  }
  return acc == 0 ? 1 : 0;
}

}  // namespace latgen
