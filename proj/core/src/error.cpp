#include "latgen/error.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "latgen/compensated_sum.hpp"
#include "latgen/kernel.hpp"

namespace latgen {

namespace {

void check_dims(const GeneratingVector& z, std::size_t wdims, const char* who) {
  if (wdims < z.dims()) throw std::invalid_argument(std::string(who) + ": weights cover fewer than s coordinates");
}

}  // namespace

double product_minus_one(std::span<const double> x) {
  // Excess recurrence (1 + d)(1 + v) - 1 = d + v + d v in extended precision: no 1 ever gets subtracted,
  // and factors of either sign are fine.
  long double d = 0.0L;
  for (double v : x) d += v + d * v;
  return static_cast<double>(d);
}

namespace {

// (1/N) sum_k [prod_j (1 + gamma_j table[k z_j mod N]) - 1].
double product_row_average(const GeneratingVector& z, const ProductWeights& w, const std::vector<double>& table) {
  const u64 N = z.modulus();
  std::vector<double> x(z.dims());
  CompensatedSum acc;
  for (u64 k = 0; k < N; ++k) {
    for (std::size_t j = 0; j < z.dims(); ++j) x[j] = w[j] * table[mulmod(k, z[j], N)];
    acc += product_minus_one(x);
  }
  return acc.value() / static_cast<double>(N);
}

// (1/N) sum_k sum_{u != {}} gamma_u prod_{j in u} table[k z_j mod N].
double subset_row_average(const GeneratingVector& z, const GeneralWeights& w, const std::vector<double>& table) {
  const u64 N = z.modulus();
  using Mask = GeneralWeights::Mask;
  const Mask subsets = Mask{1} << z.dims();
  std::vector<double> prod(subsets);
  std::vector<double> row(z.dims());
  CompensatedSum acc;
  for (u64 k = 0; k < N; ++k) {
    for (std::size_t j = 0; j < z.dims(); ++j) row[j] = table[mulmod(k, z[j], N)];
    prod[0] = 1.0;
    for (Mask u = 1; u < subsets; ++u) {
      prod[u] = prod[u & (u - 1)] * row[static_cast<std::size_t>(std::countr_zero(u))];
      acc += w(u) * prod[u];
    }
  }
  return acc.value() / static_cast<double>(N);
}

double log_product(const ProductWeights& w, double a) {
  double s = 0.0;
  for (double g : w.gammas()) s += std::log1p(a * g);
  return s;
}

}  // namespace

double worst_case_error(const GeneratingVector& z, double alpha, const ProductWeights& w) {
  if (!(alpha > 1.0)) throw std::domain_error("worst_case_error: alpha must exceed 1");
  check_dims(z, w.dims(), "worst_case_error");
  return product_row_average(z, w, fourier_decay_table(alpha, z.modulus()));
}

double worst_case_error(const GeneratingVector& z, double alpha, const GeneralWeights& w) {
  if (!(alpha > 1.0)) throw std::domain_error("worst_case_error: alpha must exceed 1");
  check_dims(z, w.dims(), "worst_case_error");
  return subset_row_average(z, w, fourier_decay_table(alpha, z.modulus()));
}

double worst_case_error(const GeneratingVector& z, double alpha, const Weights& w) {
  return std::visit([&](const auto& x) { return worst_case_error(z, alpha, x); }, w);
}

ErrorInterval worst_case_error_bruteforce(const GeneratingVector& z, double alpha, const GeneralWeights& w,
                                          std::int64_t radius) {
  if (!(alpha > 1.0)) throw std::domain_error("worst_case_error_bruteforce: alpha must exceed 1");
  if (radius < 1) throw std::invalid_argument("worst_case_error_bruteforce: radius must be >= 1");
  check_dims(z, w.dims(), "worst_case_error_bruteforce");
  const std::size_t s = z.dims();
  const double side = 2.0 * static_cast<double>(radius) - 1.0;
  if (std::pow(side, static_cast<double>(s)) > 2e8) {
    throw std::invalid_argument("worst_case_error_bruteforce: box of radius " + std::to_string(radius) +
                                " in dimension " + std::to_string(s) + " is too large to enumerate");
  }
  const std::int64_t N = static_cast<std::int64_t>(z.modulus());
  std::vector<double> inv_pow(static_cast<std::size_t>(radius));
  for (std::int64_t m = 1; m < radius; ++m) inv_pow[static_cast<std::size_t>(m)] = std::pow(static_cast<double>(m), -alpha);

  std::vector<std::int64_t> m(s, -(radius - 1));
  CompensatedSum acc;
  for (;;) {
    std::int64_t dot = 0;
    GeneralWeights::Mask support = 0;
    double prod = 1.0;
    for (std::size_t j = 0; j < s; ++j) {
      dot = (dot + m[j] % N * static_cast<std::int64_t>(z[j])) % N;
      if (m[j] != 0) {
        support |= GeneralWeights::Mask{1} << j;
        prod *= inv_pow[static_cast<std::size_t>(m[j] < 0 ? -m[j] : m[j])];
      }
    }
    if (support != 0 && dot == 0) acc += w(support) * prod;
    std::size_t j = 0;
    while (j < s && m[j] == radius - 1) m[j++] = -(radius - 1);
    if (j == s) break;
    ++m[j];
  }

  // For each coordinate forced outside the box the others are summed freely (2 zeta each), and the
  // constraint pins the outside coordinate to one residue class mod N:
  // sum_{|m| >= M, m = c mod N} |m|^{-alpha} <= 2 (M^{-alpha} + M^{1-alpha} / ((alpha - 1) N)).
  const double M = static_cast<double>(radius);
  const double tau = std::pow(M, -alpha) + std::pow(M, 1.0 - alpha) / ((alpha - 1.0) * static_cast<double>(N));
  const double two_zeta = 2.0 * zeta(alpha);
  CompensatedSum tail;
  const auto table = w.table();
  for (GeneralWeights::Mask u = 1; u < (GeneralWeights::Mask{1} << s); ++u) {
    const int size = std::popcount(u);
    tail += table[u] * size * std::pow(two_zeta, size - 1) * 2.0 * tau;
  }
  return {acc.value(), tail.value()};
}

double truncated_dual_sum(const GeneratingVector& z, const ProductWeights& w, double alpha) {
  check_dims(z, w.dims(), "truncated_dual_sum");
  return product_row_average(z, w, vartheta_residue_table(z.modulus(), alpha));
}

double truncated_dual_sum(const GeneratingVector& z, const GeneralWeights& w, double alpha) {
  check_dims(z, w.dims(), "truncated_dual_sum");
  return subset_row_average(z, w, vartheta_residue_table(z.modulus(), alpha));
}

double bound_existence(u64 N, const ProductWeights& w) {
  const double L = std::log(static_cast<double>(N));
  return 2.0 / static_cast<double>(N) * subset_power_sum(w, 2.0 * (1.0 + L));
}

double bound_existence(u64 N, const GeneralWeights& w) {
  const double L = std::log(static_cast<double>(N));
  return 2.0 / static_cast<double>(N) * subset_power_sum(w, 2.0 * (1.0 + L));
}

double bound_cbc_dbd(u64 N, const ProductWeights& w) {
  const double L = std::log(static_cast<double>(N));
  const double first = std::exp(log_product(w, std::log(4.0) + 2.0 * (1.0 + L)));
  const double second = 2.0 * (1.0 + L) * std::exp(log_product(w, 2.0 * (1.0 + 2.0 * L)));
  return (first + second) / static_cast<double>(N);
}

double bound_korobov_cbc(u64 N, const ProductWeights& w) {
  const double L = std::log(static_cast<double>(N));
  return 2.0 / static_cast<double>(N) *
         (subset_power_sum(w, 4.0 * L) + (1.0 + L) * subset_power_sum(w, 2.0 + 4.0 * L));
}

double bound_korobov_cbc(u64 N, const GeneralWeights& w) {
  const double L = std::log(static_cast<double>(N));
  return 2.0 / static_cast<double>(N) *
         (subset_power_sum(w, 4.0 * L) + (1.0 + L) * subset_power_sum(w, 2.0 + 4.0 * L));
}

double bound_log_sine_energy(u64 N, const ProductWeights& w) {
  return static_cast<double>(N) * subset_power_sum(w, std::log(4.0));
}

double bound_korobov_quality(u64 N, const ProductWeights& w) {
  return subset_power_sum(w, 2.0 * std::log(static_cast<double>(N)));
}

double bound_korobov_quality(u64 N, const GeneralWeights& w) {
  return subset_power_sum(w, 2.0 * std::log(static_cast<double>(N)));
}

double truncation_gap_bound(u64 N, double alpha, const ProductWeights& w) {
  return std::pow(static_cast<double>(N), -alpha) * subset_power_sum(w, 4.0 * zeta(alpha));
}

double truncation_gap_bound(u64 N, double alpha, const GeneralWeights& w) {
  return std::pow(static_cast<double>(N), -alpha) * subset_power_sum(w, 4.0 * zeta(alpha));
}

}  // namespace latgen
