#include "latgen/fft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "latgen/compensated_sum.hpp"
#include "latgen/numtheory.hpp"

namespace latgen {

namespace {

// Plain complex product; std::complex operator* goes through the Annex G NaN recovery path.
inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

struct Radix2Plan {
  std::vector<Complex> twiddle;  // e^{-2 pi i k / n}, k < n/2
};

struct BluesteinPlan {
  std::size_t m = 0;
  std::vector<Complex> chirp;      // e^{-i pi k^2 / n}
  std::vector<Complex> kernel_ft;  // forward transform of conj(chirp), wrapped to length m
};

template <class Plan, class Make>
std::shared_ptr<const Plan> cached(std::map<std::size_t, std::shared_ptr<const Plan>>& memo, std::mutex& mu,
                                   std::size_t n, Make make) {
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
  }
  auto plan = std::make_shared<const Plan>(make());
  std::lock_guard lock(mu);
  return memo.emplace(n, std::move(plan)).first->second;
}

std::shared_ptr<const Radix2Plan> radix2_plan(std::size_t n) {
  static std::map<std::size_t, std::shared_ptr<const Radix2Plan>> memo;
  static std::mutex mu;
  return cached(memo, mu, n, [n] {
    Radix2Plan p;
    // Twiddles evaluated directly rather than by repeated multiplication.
    p.twiddle.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      p.twiddle[k] = Complex(std::cos(theta), -std::sin(theta));
    }
    return p;
  });
}

// sign = -1 for the forward kernel.
void radix2_inplace(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const auto plan = radix2_plan(n);
  const auto& w = plan->twiddle;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex t = sign < 0 ? w[k * stride] : std::conj(w[k * stride]);
        const Complex u = a[i + k];
        const Complex v = cmul(a[i + k + half], t);
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

std::shared_ptr<const BluesteinPlan> bluestein_plan(std::size_t n) {
  static std::map<std::size_t, std::shared_ptr<const BluesteinPlan>> memo;
  static std::mutex mu;
  return cached(memo, mu, n, [n] {
    BluesteinPlan p;
    p.m = 1;
    while (p.m < 2 * n - 1) p.m <<= 1;
    // k^2 reduced mod 2n keeps the angle small.
    p.chirp.resize(n);
    const u64 two_n = 2 * static_cast<u64>(n);
    for (std::size_t k = 0; k < n; ++k) {
      const u64 k2 = mulmod(k, k, two_n);
      const double theta = std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
      p.chirp[k] = Complex(std::cos(theta), -std::sin(theta));
    }
    p.kernel_ft.assign(p.m, Complex{});
    p.kernel_ft[0] = std::conj(p.chirp[0]);
    for (std::size_t k = 1; k < n; ++k) p.kernel_ft[k] = p.kernel_ft[p.m - k] = std::conj(p.chirp[k]);
    radix2_inplace(p.kernel_ft, -1);
    return p;
  });
}

// Forward transform of arbitrary length; the inverse goes through conjugation.
std::vector<Complex> bluestein(std::span<const Complex> x, int sign) {
  const std::size_t n = x.size();
  const auto plan = bluestein_plan(n);
  const std::size_t m = plan->m;
  std::vector<Complex> a(m);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex xk = sign < 0 ? x[k] : std::conj(x[k]);
    a[k] = cmul(xk, plan->chirp[k]);
  }
  radix2_inplace(a, -1);
  for (std::size_t k = 0; k < m; ++k) a[k] = cmul(a[k], plan->kernel_ft[k]);
  radix2_inplace(a, +1);

  std::vector<Complex> out(n);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex v = cmul(a[k], plan->chirp[k]) * scale;
    out[k] = sign < 0 ? v : std::conj(v);
  }
  return out;
}

}  // namespace

std::vector<Complex> fft(std::span<const Complex> x, Direction dir) {
  const int sign = dir == Direction::forward ? -1 : +1;
  const std::size_t n = x.size();
  std::vector<Complex> out;
  if (n == 0) return out;
  if (is_power_of_two(n)) {
    out.assign(x.begin(), x.end());
    radix2_inplace(out, sign);
  } else {
    out = bluestein(x, sign);
  }
  if (dir == Direction::inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;
  }
  return out;
}

std::vector<double> cyclic_convolution_naive(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cyclic_convolution: length mismatch");
  const std::size_t n = a.size();
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    CompensatedSum acc;
    for (std::size_t j = 0; j <= k; ++j) acc += a[j] * b[k - j];
    for (std::size_t j = k + 1; j < n; ++j) acc += a[j] * b[n + k - j];
    c[k] = acc.value();
  }
  return c;
}

std::vector<double> cyclic_convolution(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cyclic_convolution: length mismatch");
  const std::size_t n = a.size();
  if (n <= 64) return cyclic_convolution_naive(a, b);

  // One complex transform carries both real inputs: z = a + i b. Each input is first brought to unit
  // magnitude by a power of two; otherwise the smaller one drowns in the rounding of the larger.
  double ma = 0.0, mb = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    ma = std::max(ma, std::abs(a[k]));
    mb = std::max(mb, std::abs(b[k]));
  }
  if (ma == 0.0 || mb == 0.0) return std::vector<double>(n, 0.0);
  const int ea = std::ilogb(ma);
  const int eb = std::ilogb(mb);
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = Complex(std::ldexp(a[k], -ea), std::ldexp(b[k], -eb));
  const auto Z = fft(z, Direction::forward);
  std::vector<Complex> prod(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex zc = std::conj(Z[(n - k) % n]);
    const Complex A = 0.5 * (Z[k] + zc);
    const Complex B = Complex(0.0, -0.5) * (Z[k] - zc);
    prod[k] = cmul(A, B);
  }
  const auto c = fft(prod, Direction::inverse);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = std::ldexp(c[k].real(), ea + eb);
  return out;
}

}  // namespace latgen
