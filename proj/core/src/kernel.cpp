#include "latgen/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "latgen/compensated_sum.hpp"
#include "latgen/fft.hpp"

namespace latgen {

namespace {

constexpr double pi = std::numbers::pi;
constexpr std::uint64_t max_truncation = 10'000'000;

bool is_even_closed_form(double alpha) {
  return alpha == 2.0 || alpha == 4.0 || alpha == 6.0 || alpha == 8.0;
}

// sin(pi x) using the nearer endpoint for accuracy.
double sin_pi(double x) {
  const double y = x > 0.5 ? 1.0 - x : x;
  return std::sin(pi * y);
}

void require_open_unit(double x, const char* who) {
  if (!(x > 0.0 && x < 1.0)) {
    throw std::domain_error(std::string(who) + ": argument must lie in (0, 1), got " + std::to_string(x));
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// m^{-alpha} with an integer fast path.
double inv_pow(std::uint64_t m, double alpha) {
  const double md = static_cast<double>(m);
  if (alpha == 2.0) return 1.0 / (md * md);
  if (alpha == 3.0) return 1.0 / (md * md * md);
  return std::pow(md, -alpha);
}

long double bernoulli_poly_ext(int alpha, long double x) {
  const long double x2 = x * x;
  switch (alpha) {
    case 2:
      return x2 - x + 1.0L / 6.0L;
    case 4:
      return x2 * x2 - 2.0L * x2 * x + x2 - 1.0L / 30.0L;
    case 6:
      return x2 * x2 * x2 - 3.0L * x2 * x2 * x + 2.5L * x2 * x2 - 0.5L * x2 + 1.0L / 42.0L;
    default:
      return x2 * x2 * x2 * x2 - 4.0L * x2 * x2 * x2 * x + (14.0L / 3.0L) * x2 * x2 * x2 -
             (7.0L / 3.0L) * x2 * x2 + (2.0L / 3.0L) * x2 - 1.0L / 30.0L;
  }
}

}  // namespace

double omega(double x) {
  require_open_unit(x, "omega");
  return -2.0 * std::log(2.0 * sin_pi(x));
}

double log_inv_sin2(double x) {
  require_open_unit(x, "log_inv_sin2");
  return -2.0 * std::log(sin_pi(x));
}

KernelTable::KernelTable(u64 modulus) : modulus_(modulus) {
  if (modulus < 2) throw std::invalid_argument("KernelTable: modulus must be >= 2");
  values_.resize(modulus - 1);
  const double n = static_cast<double>(modulus);
  for (u64 k = 1; k <= modulus / 2; ++k) {
    const double v = -2.0 * std::log(std::sin(pi * static_cast<double>(k) / n));
    values_[k - 1] = v;
    values_[modulus - k - 1] = v;
  }
}

KernelTable kernel_table(u64 modulus) { return KernelTable(modulus); }

std::vector<double> omega_table(u64 modulus) {
  if (modulus < 2) throw std::invalid_argument("omega_table: modulus must be >= 2");
  std::vector<double> out(modulus, 0.0);
  const double n = static_cast<double>(modulus);
  for (u64 k = 1; k <= modulus / 2; ++k) {
    const double v = -2.0 * std::log(2.0 * std::sin(pi * static_cast<double>(k) / n));
    out[k] = v;
    out[modulus - k] = v;
  }
  return out;
}

double vartheta_truncated(double x, u64 modulus) {
  CompensatedSum acc;
  for (u64 m = modulus - 1; m >= 1; --m) {
    acc += 2.0 * std::cos(2.0 * pi * static_cast<double>(m) * x) / static_cast<double>(m);
  }
  return acc.value();
}

std::vector<double> vartheta_residue_table(u64 modulus, double alpha) {
  if (modulus < 1) throw std::invalid_argument("vartheta_residue_table: modulus must be >= 1");
  // d_m = m^{-alpha} + (N - m)^{-alpha} collects the frequencies m and m - N.
  std::vector<Complex> d(modulus, Complex(0.0, 0.0));
  for (u64 m = 1; m < modulus; ++m) {
    d[m] = Complex(inv_pow(m, alpha) + inv_pow(modulus - m, alpha), 0.0);
  }
  // d is symmetric, so the sign of the transform does not matter.
  const auto f = fft(d, Direction::forward);
  std::vector<double> out(modulus);
  for (u64 a = 0; a < modulus; ++a) out[a] = f[a].real();
  // Exact value at the origin.
  CompensatedSum s0;
  for (u64 m = modulus - 1; m >= 1; --m) s0 += d[m].real();
  out[0] = s0.value();
  return out;
}

double bernoulli_poly(int alpha, double x) {
  const double x2 = x * x;
  switch (alpha) {
    case 2:
      return x2 - x + 1.0 / 6.0;
    case 4:
      return x2 * x2 - 2.0 * x2 * x + x2 - 1.0 / 30.0;
    case 6:
      return x2 * x2 * x2 - 3.0 * x2 * x2 * x + 2.5 * x2 * x2 - 0.5 * x2 + 1.0 / 42.0;
    case 8:
      return x2 * x2 * x2 * x2 - 4.0 * x2 * x2 * x2 * x + (14.0 / 3.0) * x2 * x2 * x2 -
             (7.0 / 3.0) * x2 * x2 + (2.0 / 3.0) * x2 - 1.0 / 30.0;
    default:
      throw std::domain_error("bernoulli_poly: alpha must be 2, 4, 6 or 8");
  }
}

std::uint64_t fourier_truncation_length(double alpha, double tol) {
  if (!(alpha > 1.0)) throw std::domain_error("fourier_truncation_length: alpha must exceed 1");
  if (!(tol > 0.0)) throw std::domain_error("fourier_truncation_length: tol must be positive");
  // Tail 2 sum_{m>M} m^{-alpha} <= 2 M^{1-alpha} / (alpha - 1).
  const double m = std::ceil(std::pow(2.0 / ((alpha - 1.0) * tol), 1.0 / (alpha - 1.0)));
  if (!(m <= static_cast<double>(max_truncation))) {
    throw std::domain_error("fourier_decay_sum: tolerance " + std::to_string(tol) +
                            " needs more than 1e7 terms at alpha = " + std::to_string(alpha));
  }
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m));
}

double fourier_decay_sum(double alpha, double x, double tol) {
  if (!(alpha > 1.0)) throw std::domain_error("fourier_decay_sum: alpha must exceed 1");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("fourier_decay_sum: x must lie in [0, 1]");
  if (is_even_closed_form(alpha)) {
    const int a = static_cast<int>(alpha);
    const double sign = (a / 2) % 2 == 1 ? 1.0 : -1.0;
    return sign * std::pow(2.0 * pi, alpha) * bernoulli_poly(a, x) / factorial(a);
  }
  const std::uint64_t terms = fourier_truncation_length(alpha, tol);
  CompensatedSum acc;
  for (std::uint64_t m = terms; m >= 1; --m) {
    // Reduce m x mod 1 before the cosine to keep the argument small.
    const double mx = static_cast<double>(m) * x;
    const double frac = mx - std::floor(mx);
    acc += 2.0 * std::cos(2.0 * pi * frac) * inv_pow(m, alpha);
  }
  return acc.value();
}

std::vector<double> fourier_decay_table(double alpha, u64 modulus) {
  if (!(alpha > 1.0)) throw std::domain_error("fourier_decay_table: alpha must exceed 1");
  if (modulus < 1) throw std::invalid_argument("fourier_decay_table: modulus must be >= 1");
  std::vector<double> out(modulus);
  if (is_even_closed_form(alpha)) {
    // Extended precision: in double the rounded Bernoulli constant shifts every entry the same way,
    // which survives averaging and swamps errors near 1e-16.
    const int a = static_cast<int>(alpha);
    const long double c = ((a / 2) % 2 == 1 ? 1.0L : -1.0L) * std::pow(2.0L * std::numbers::pi_v<long double>, a) /
                          static_cast<long double>(factorial(a));
    for (u64 k = 0; k < modulus; ++k) {
      const long double x = static_cast<long double>(k) / static_cast<long double>(modulus);
      out[k] = static_cast<double>(c * bernoulli_poly_ext(a, x));
    }
    return out;
  }
  // c_r = sum_{m >= 1, m = r mod N} m^{-alpha} = N^{-alpha} zeta(alpha, r / N), c_0 = N^{-alpha} zeta(alpha).
  const double n = static_cast<double>(modulus);
  const double scale = std::pow(n, -alpha);
  std::vector<double> c(modulus);
  c[0] = scale * zeta(alpha);
  for (u64 r = 1; r < modulus; ++r) c[r] = scale * hurwitz_zeta(alpha, static_cast<double>(r) / n);
  // Negative frequencies land on N - r.
  std::vector<Complex> d(modulus);
  for (u64 r = 0; r < modulus; ++r) d[r] = Complex(c[r] + c[(modulus - r) % modulus], 0.0);
  const auto f = fft(d, Direction::forward);
  for (u64 k = 0; k < modulus; ++k) out[k] = f[k].real();
  // The exact table averages to d_0; remove the rounding drift of the transform.
  CompensatedSum mean;
  for (double v : out) mean += v;
  const double drift = mean.value() / n - d[0].real();
  for (double& v : out) v -= drift;
  return out;
}

double hurwitz_zeta(double alpha, double a) {
  if (!(alpha > 1.0)) throw std::domain_error("hurwitz_zeta: alpha must exceed 1");
  if (!(a > 0.0)) throw std::domain_error("hurwitz_zeta: a must be positive");
  // Direct terms up to a + K - 1, then Euler-Maclaurin from a + K.
  constexpr int K = 32;
  CompensatedSum acc;
  for (int q = K - 1; q >= 0; --q) acc += std::pow(a + q, -alpha);
  const double b = a + K;
  const double bpow = std::pow(b, -alpha);
  acc += b * bpow / (alpha - 1.0);
  acc += 0.5 * bpow;
  // B_{2j} / (2j)! for j = 1..5.
  static constexpr double bernoulli_ratio[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0,
                                               1.0 / 47900160.0};
  double rising = alpha;
  double bp = bpow / b;
  for (int j = 0; j < 5; ++j) {
    acc += bernoulli_ratio[j] * rising * bp;
    rising *= (alpha + 2 * j + 1) * (alpha + 2 * j + 2);
    bp /= b * b;
  }
  return acc.value();
}

double zeta(double alpha) {
  if (!(alpha > 1.0)) throw std::domain_error("zeta: alpha must exceed 1");
  return hurwitz_zeta(alpha, 1.0);
}

}  // namespace latgen
