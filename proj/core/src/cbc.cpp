#include "latgen/cbc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "latgen/cbc_dbd.hpp"
#include "latgen/compensated_sum.hpp"
#include "latgen/fft.hpp"
#include "latgen/kernel.hpp"

namespace latgen {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// sum_{u odd < M} Q(u) F(u w mod M) for every odd w < M; F even mod M.
std::vector<double> odd_residue_scores(const std::vector<double>& Q, const std::vector<double>& F, u64 M) {
  std::vector<double> out(M, 0.0);
  if (M <= 8) {
    for (u64 w = 1; w < M; w += 2) {
      CompensatedSum acc;
      for (u64 u = 1; u < M; u += 2) acc += Q[u] * F[(u * w) % M];
      out[w] = acc.value();
    }
    return out;
  }
  // Odd residues mod M are exactly +-5^i, i < M/4.
  const u64 L = M / 4;
  std::vector<u64> e(L);
  e[0] = 1;
  for (u64 i = 1; i < L; ++i) e[i] = (e[i - 1] * 5) % M;
  std::vector<double> qf(L), fv(L), rev(L);
  for (u64 i = 0; i < L; ++i) {
    qf[i] = Q[e[i]] + Q[M - e[i]];
    fv[i] = F[e[i]];
  }
  for (u64 i = 0; i < L; ++i) rev[i] = qf[(L - i) % L];
  const auto conv = cyclic_convolution(rev, fv);
  for (u64 j = 0; j < L; ++j) {
    out[e[j]] = conv[j];
    out[M - e[j]] = conv[j];
  }
  return out;
}

}  // namespace

std::vector<double> rader_scores_naive(std::span<const double> q, std::span<const double> kernel, u64 N) {
  if (q.size() != N - 1 || kernel.size() != N - 1) throw std::invalid_argument("rader_scores: arrays must have length N-1");
  std::vector<double> out(N - 1);
  for (u64 z = 1; z < N; ++z) {
    CompensatedSum acc;
    for (u64 k = 1; k < N; ++k) acc += q[k - 1] * kernel[mulmod(k, z, N) - 1];
    out[z - 1] = acc.value();
  }
  return out;
}

std::vector<double> rader_scores(std::span<const double> q, std::span<const double> kernel, u64 N) {
  if (!is_prime(N)) throw std::invalid_argument("rader_scores: N = " + std::to_string(N) + " is not prime");
  if (q.size() != N - 1 || kernel.size() != N - 1) throw std::invalid_argument("rader_scores: arrays must have length N-1");
  if (N == 2) return {q[0] * kernel[0]};
  const u64 L = N - 1;
  const u64 g = primitive_root(N);
  std::vector<u64> pw(L);
  pw[0] = 1;
  for (u64 i = 1; i < L; ++i) pw[i] = mulmod(pw[i - 1], g, N);
  // S(j) = sum_i Q(i) K(i + j) with Q(i) = q[g^i], K(i) = kernel[g^i]; a correlation, so Q is reversed.
  std::vector<double> rev(L), kv(L);
  for (u64 i = 0; i < L; ++i) {
    rev[i] = q[pw[(L - i) % L] - 1];
    kv[i] = kernel[pw[i] - 1];
  }
  const auto conv = cyclic_convolution(rev, kv);
  std::vector<double> out(L);
  for (u64 j = 0; j < L; ++j) out[pw[j] - 1] = conv[j];
  return out;
}

std::vector<double> power_of_two_scores(std::span<const double> q, std::span<const double> f, unsigned n) {
  const u64 N = u64{1} << n;
  if (q.size() != N || f.size() != N) throw std::invalid_argument("power_of_two_scores: arrays must have length N");
  std::vector<double> total(N, 0.0);
  // Rows k = 2^a u with u odd only see z mod 2^{n-a}.
  for (unsigned a = 0; a < n; ++a) {
    const u64 M = N >> a;
    std::vector<double> Q(M, 0.0), F(M, 0.0);
    for (u64 u = 1; u < M; u += 2) {
      Q[u] = q[u << a];
      F[u] = f[u << a];
    }
    const auto level = odd_residue_scores(Q, F, M);
    for (u64 z = 1; z < N; z += 2) total[z] += level[z & (M - 1)];
  }
  for (u64 z = 1; z < N; z += 2) total[z] += q[0] * f[0];
  return total;
}

u64 select_candidate(std::span<const double> scores, double tolerance) {
  double best = inf;
  for (double v : scores) {
    if (std::isfinite(v)) best = std::min(best, v);
  }
  if (!std::isfinite(best)) throw std::invalid_argument("select_candidate: no finite candidate");
  const double threshold = best + tolerance;
  for (std::size_t z = 0; z < scores.size(); ++z) {
    if (scores[z] <= threshold) return z;
  }
  throw std::logic_error("select_candidate: unreachable");
}

CbcState::CbcState(u64 modulus, std::vector<double> kernel, u64 first_row)
    : modulus_(modulus), first_row_(first_row), kernel_(std::move(kernel)), excess_(modulus, 0.0) {
  if (modulus < 2) throw std::invalid_argument("CbcState: N must be >= 2");
  if (kernel_.size() != modulus) throw std::invalid_argument("CbcState: kernel must have length N");
  if (first_row > 1) throw std::invalid_argument("CbcState: first row must be 0 or 1");
}

void CbcState::incorporate(u64 z, double gamma) {
  for (u64 k = first_row_; k < modulus_; ++k) {
    const double g = gamma * kernel_[mulmod(k, z, modulus_)];
    // (1 + d)(1 + g) - 1
    excess_[k] = excess_[k] + g + excess_[k] * g;
  }
  ++r_;
}

std::vector<double> CbcState::candidate_scores(double gamma, CbcMode mode) const {
  const u64 N = modulus_;
  std::vector<double> raw(N, inf);
  if (mode == CbcMode::naive || N <= 4) {
    for (u64 z = 1; z < N; ++z) {
      if (gcd(z, N) != 1) continue;
      CompensatedSum acc;
      for (u64 k = first_row_; k < N; ++k) acc += excess_[k] * kernel_[mulmod(k, z, N)];
      raw[z] = acc.value();
    }
  } else if (is_prime(N)) {
    const std::span<const double> rows(excess_.data() + 1, N - 1);
    const std::span<const double> kv(kernel_.data() + 1, N - 1);
    const auto sc = rader_scores(rows, kv, N);
    const double zero_row = first_row_ == 0 ? excess_[0] * kernel_[0] : 0.0;
    for (u64 z = 1; z < N; ++z) raw[z] = sc[z - 1] + zero_row;
  } else if (is_power_of_two(N)) {
    const auto sc = power_of_two_scores(excess_, kernel_, log2_exact(N));
    for (u64 z = 1; z < N; z += 2) raw[z] = sc[z];
  } else {
    throw std::invalid_argument("CbcState: fast scores need a prime or power-of-two modulus");
  }
  for (u64 z = 1; z < N; ++z) {
    if (std::isfinite(raw[z])) raw[z] *= gamma;
  }
  return raw;
}

double CbcState::score_tolerance(double gamma) const {
  double d2 = 0.0, k2 = 0.0;
  for (u64 k = first_row_; k < modulus_; ++k) {
    d2 += excess_[k] * excess_[k];
    k2 += kernel_[k] * kernel_[k];
  }
  return 4.0 * std::numeric_limits<double>::epsilon() * gamma * std::sqrt(d2 * k2);
}

namespace {

GeneratingVector run_cbc(CbcState& state, std::size_t s, const ProductWeights& w, CbcMode mode,
                         std::vector<CbcStep>* trace) {
  std::vector<u64> z(s, 1);
  state.incorporate(1, w[0]);
  for (std::size_t d = 2; d <= s; ++d) {
    const auto scores = state.candidate_scores(w[d - 1], mode);
    const u64 zd = select_candidate(scores, state.score_tolerance(w[d - 1]));
    z[d - 1] = zd;
    if (trace) trace->push_back({d, zd, scores[zd]});
    state.incorporate(zd, w[d - 1]);
  }
  return GeneratingVector(state.modulus(), std::move(z));
}

}  // namespace

GeneratingVector construct_korobov_cbc(u64 N, std::size_t s, const ProductWeights& w, CbcMode mode,
                                       std::vector<CbcStep>* trace) {
  if (N < 3 || !is_prime(N)) throw std::invalid_argument("N must be prime (got " + std::to_string(N) + ")");
  if (s < 1) throw std::invalid_argument("construct_korobov_cbc: s must be >= 1");
  if (w.dims() < s) throw std::invalid_argument("construct_korobov_cbc: weights cover fewer than s coordinates");
  CbcState state(N, omega_table(N), 1);
  return run_cbc(state, s, w, mode, trace);
}

GeneratingVector construct_standard_cbc(u64 N, std::size_t s, double alpha, const ProductWeights& w_alpha,
                                        CbcMode mode, std::vector<CbcStep>* trace) {
  if (!(N >= 2 && (is_prime(N) || is_power_of_two(N)))) {
    throw std::invalid_argument("N must be prime or a power of two (got " + std::to_string(N) + ")");
  }
  if (!(alpha > 1.0)) throw std::invalid_argument("construct_standard_cbc: alpha must exceed 1");
  if (s < 1) throw std::invalid_argument("construct_standard_cbc: s must be >= 1");
  if (w_alpha.dims() < s) throw std::invalid_argument("construct_standard_cbc: weights cover fewer than s coordinates");
  CbcState state(N, fourier_decay_table(alpha, N), 0);
  return run_cbc(state, s, w_alpha, mode, trace);
}

double korobov_quality(const GeneratingVector& z, const ProductWeights& w) {
  const u64 N = z.modulus();
  if (w.dims() < z.dims()) throw std::invalid_argument("korobov_quality: weights cover fewer than s coordinates");
  const auto om = omega_table(N);
  CompensatedSum acc;
  for (u64 k = 1; k < N; ++k) {
    double prod = 1.0;
    for (std::size_t j = 0; j < z.dims(); ++j) {
      const u64 r = mulmod(k, z[j], N);
      if (r == 0) throw std::invalid_argument("korobov_quality: component not coprime to N");
      prod *= 1.0 + w[j] * om[r];
    }
    acc += prod - 1.0;
  }
  return acc.value();
}

double korobov_quality(const GeneratingVector& z, const GeneralWeights& w) {
  const u64 N = z.modulus();
  if (w.dims() < z.dims()) throw std::invalid_argument("korobov_quality: weights cover fewer than s coordinates");
  const auto om = omega_table(N);
  using Mask = GeneralWeights::Mask;
  const Mask subsets = Mask{1} << z.dims();
  std::vector<double> prod(subsets);
  CompensatedSum acc;
  for (u64 k = 1; k < N; ++k) {
    prod[0] = 1.0;
    for (Mask u = 1; u < subsets; ++u) {
      const auto j = static_cast<std::size_t>(std::countr_zero(u));
      const u64 r = mulmod(k, z[j], N);
      if (r == 0) throw std::invalid_argument("korobov_quality: component not coprime to N");
      prod[u] = prod[u & (u - 1)] * om[r];
      acc += w(u) * prod[u];
    }
  }
  return acc.value();
}

}  // namespace latgen
