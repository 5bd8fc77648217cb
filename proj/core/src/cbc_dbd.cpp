#include "latgen/cbc_dbd.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "latgen/compensated_sum.hpp"

namespace latgen {

namespace {

void check_level(const DigitState& state, unsigned v) {
  if (v < 1 || v > state.bits()) {
    throw std::out_of_range("bit level " + std::to_string(v) + " outside 1.." + std::to_string(state.bits()));
  }
}

void check_odd(u64 x) {
  if ((x & 1) == 0) throw std::invalid_argument("candidate " + std::to_string(x) + " must be odd");
}

// Folds the products by k mod 2^v, weighted by 2^{v-t}: the fast score then
// needs only 2^{v-1} kernel lookups per candidate.
std::vector<double> folded_products(const DigitState& state, unsigned v) {
  const unsigned n = state.bits();
  const u64 period = u64{1} << v;
  std::vector<CompensatedSum> acc(period / 2);
  for (unsigned t = v; t <= n; ++t) {
    const double scale = std::ldexp(1.0, static_cast<int>(v) - static_cast<int>(t));
    const u64 top = u64{1} << t;
    for (u64 k = 1; k < top; k += 2) acc[(k & (period - 1)) >> 1] += scale * state.q(t, k);
  }
  std::vector<double> out(acc.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = acc[i].value();
  return out;
}

bool prefer_second(double first, double second) {
  const double scale = std::max(std::fabs(first), std::fabs(second));
  return second < first - tie_tolerance * scale;
}

double sin2_log(u64 num, u64 den_bits) {
  const double x = std::ldexp(static_cast<double>(num & ((u64{1} << den_bits) - 1)), -static_cast<int>(den_bits));
  return log_inv_sin2(x);
}

}  // namespace

namespace {

unsigned checked_bits(unsigned bits) {
  if (bits < 1 || bits > 40) throw std::invalid_argument("DigitState: n must lie in 1..40");
  return bits;
}

}  // namespace

DigitState::DigitState(unsigned bits) : n_(checked_bits(bits)), table_(u64{1} << n_), p_(u64{1} << n_, 1.0) {}

double digit_score(const DigitState& state, unsigned v, u64 x, double gamma_r) {
  check_level(state, v);
  check_odd(x);
  const unsigned n = state.bits();
  CompensatedSum total;
  for (unsigned t = v; t <= n; ++t) {
    CompensatedSum level;
    const u64 top = u64{1} << t;
    for (u64 k = 1; k < top; k += 2) level += state.q(t, k) * (1.0 + gamma_r * state.kernel(k * x, v));
    total += std::ldexp(level.value(), static_cast<int>(v) - static_cast<int>(t));
  }
  return total.value();
}

std::pair<double, double> digit_score_pair(const DigitState& state, unsigned v, u64 x, double gamma_r) {
  check_level(state, v);
  check_odd(x);
  const u64 x1 = x + (u64{1} << (v - 1));
  const auto folded = folded_products(state, v);
  CompensatedSum s0, s1;
  for (std::size_t i = 0; i < folded.size(); ++i) {
    const u64 k = 2 * i + 1;
    s0 += folded[i] * (1.0 + gamma_r * state.kernel(k * x, v));
    s1 += folded[i] * (1.0 + gamma_r * state.kernel(k * x1, v));
  }
  return {s0.value(), s1.value()};
}

void update_digit_products(DigitState& state, unsigned v, u64 z, double gamma_r) {
  check_level(state, v);
  check_odd(z);
  const unsigned n = state.bits();
  const u64 top = u64{1} << v;
  for (u64 k = 1; k < top; k += 2) state.p_[k << (n - v)] *= 1.0 + gamma_r * state.kernel(k * z, v);
}

void incorporate_component(DigitState& state, u64 z, double gamma) {
  for (unsigned v = 1; v <= state.bits(); ++v) update_digit_products(state, v, z, gamma);
  state.finish_component();
}

double digit_score_offset(unsigned n, unsigned v) {
  return -static_cast<double>(n - v + 1) * std::ldexp(1.0, static_cast<int>(v) - 1);
}

double digit_quality_reference(std::size_t r, unsigned n, unsigned v, u64 x, std::span<const u64> z_prev,
                               const GeneralWeights& w) {
  if (r < 1 || r > 12) throw std::invalid_argument("digit_quality_reference: r must lie in 1..12");
  if (r > w.dims()) throw std::invalid_argument("digit_quality_reference: weights cover fewer than r coordinates");
  if (z_prev.size() != r - 1) throw std::invalid_argument("digit_quality_reference: need r-1 earlier components");
  if (v < 1 || v > n) throw std::out_of_range("digit_quality_reference: v outside 1..n");
  check_odd(x);
  for (u64 zj : z_prev) check_odd(zj);

  using Mask = GeneralWeights::Mask;
  const Mask subsets = Mask{1} << (r - 1);
  const Mask current = Mask{1} << (r - 1);
  std::vector<double> logs(r - 1);
  CompensatedSum total;
  for (unsigned t = v; t <= n; ++t) {
    CompensatedSum level;
    for (u64 k = 1; k < (u64{1} << t); k += 2) {
      for (std::size_t j = 0; j + 1 < r; ++j) logs[j] = sin2_log(k * z_prev[j], t);
      const double lx = sin2_log(k * x, v);
      for (Mask u = 0; u < subsets; ++u) {
        double prod = 1.0;
        for (std::size_t j = 0; j + 1 < r; ++j) {
          if (u & (Mask{1} << j)) prod *= logs[j];
        }
        if (u != 0) level += w(u) * prod;
        level += w(u | current) * lx * prod;
      }
    }
    total += std::ldexp(level.value(), static_cast<int>(v) - static_cast<int>(t));
  }
  return total.value();
}

GeneratingVector construct_cbc_dbd(unsigned n, std::size_t s, const ProductWeights& w,
                                   std::vector<DigitChoice>* trace) {
  if (n < 1) throw std::invalid_argument("construct_cbc_dbd: n must be >= 1");
  if (s < 1) throw std::invalid_argument("construct_cbc_dbd: s must be >= 1");
  if (w.dims() < s) throw std::invalid_argument("construct_cbc_dbd: weights cover fewer than s coordinates");

  DigitState state(n);
  std::vector<u64> z(s, 1);
  incorporate_component(state, 1, w[0]);
  for (std::size_t r = 2; r <= s; ++r) {
    const double gamma = w[r - 1];
    u64 zr = 1;
    update_digit_products(state, 1, zr, gamma);
    for (unsigned v = 2; v <= n; ++v) {
      const auto [h0, h1] = digit_score_pair(state, v, zr, gamma);
      assert(std::fabs(h0 - digit_score(state, v, zr, gamma)) <= 1e-9 * std::fabs(h0));
      const unsigned bit = prefer_second(h0, h1) ? 1u : 0u;
      zr += u64{bit} << (v - 1);
      if (trace) trace->push_back({r, v, h0, h1, bit});
      update_digit_products(state, v, zr, gamma);
    }
    z[r - 1] = zr;
    state.finish_component();
  }
  return GeneratingVector(u64{1} << n, std::move(z));
}

GeneratingVector construct_cbc_dbd_reference(unsigned n, std::size_t s, const GeneralWeights& w,
                                             std::vector<DigitChoice>* trace) {
  if (n < 1) throw std::invalid_argument("construct_cbc_dbd_reference: n must be >= 1");
  if (s < 1 || s > 12) throw std::invalid_argument("construct_cbc_dbd_reference: s must lie in 1..12");
  if (w.dims() < s) throw std::invalid_argument("construct_cbc_dbd_reference: weights cover fewer than s coordinates");
  std::vector<u64> z(s, 1);
  for (std::size_t r = 2; r <= s; ++r) {
    u64 zr = 1;
    const std::span<const u64> prev(z.data(), r - 1);
    for (unsigned v = 2; v <= n; ++v) {
      const double h0 = digit_quality_reference(r, n, v, zr, prev, w);
      const double h1 = digit_quality_reference(r, n, v, zr + (u64{1} << (v - 1)), prev, w);
      const unsigned bit = prefer_second(h0, h1) ? 1u : 0u;
      zr += u64{bit} << (v - 1);
      if (trace) trace->push_back({r, v, h0, h1, bit});
    }
    z[r - 1] = zr;
  }
  return GeneratingVector(u64{1} << n, std::move(z));
}

double log_sine_energy(const GeneratingVector& z, const ProductWeights& w) {
  const u64 N = z.modulus();
  if (!is_power_of_two(N)) throw std::invalid_argument("log_sine_energy: N must be a power of two");
  if (w.dims() < z.dims()) throw std::invalid_argument("log_sine_energy: weights cover fewer than s coordinates");
  const KernelTable table(N);
  CompensatedSum acc;
  for (u64 k = 1; k < N; ++k) {
    double prod = 1.0;
    for (std::size_t j = 0; j < z.dims(); ++j) prod *= 1.0 + w[j] * table(mulmod(k, z[j], N));
    // Subtract the empty-set term per row so the small remainder is accumulated directly.
    acc += prod - 1.0;
  }
  return acc.value();
}

double log_sine_energy(const GeneratingVector& z, const GeneralWeights& w) {
  const u64 N = z.modulus();
  if (!is_power_of_two(N)) throw std::invalid_argument("log_sine_energy: N must be a power of two");
  if (w.dims() < z.dims()) throw std::invalid_argument("log_sine_energy: weights cover fewer than s coordinates");
  const KernelTable table(N);
  using Mask = GeneralWeights::Mask;
  const Mask subsets = Mask{1} << z.dims();
  std::vector<double> prod(subsets);
  CompensatedSum acc;
  for (u64 k = 1; k < N; ++k) {
    prod[0] = 1.0;
    for (Mask u = 1; u < subsets; ++u) {
      const int j = std::countr_zero(u);
      prod[u] = prod[u & (u - 1)] * table(mulmod(k, z[static_cast<std::size_t>(j)], N));
      acc += w(u) * prod[u];
    }
  }
  return acc.value();
}

}  // namespace latgen
