#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "latgen/numtheory.hpp"
#include "latgen/weights.hpp"

namespace latgen {

enum class CbcMode { fast, naive };

// Running products q_k = prod_{j <= r} (1 + gamma_j K(k z_j mod N)) over rows k,
// for a kernel K given on residues 0..N-1. Stored as q_k - 1 so that small
// deviations from 1 keep their relative accuracy.
class CbcState {
 public:
  // first_row = 1 drops the k = 0 row (needed when K(0) is undefined).
  CbcState(u64 modulus, std::vector<double> kernel, u64 first_row);

  u64 modulus() const noexcept { return modulus_; }
  u64 first_row() const noexcept { return first_row_; }
  std::size_t components() const noexcept { return r_; }
  // q_k - 1 at index k = 0..N-1; rows below first_row stay at 0.
  std::span<const double> excess() const noexcept { return excess_; }
  std::span<const double> kernel() const noexcept { return kernel_; }

  // gamma sum_k (q_k - 1) K(k z) for every unit z, indexed by z; +inf at non-units.
  // Differs from sum_k q_k (1 + gamma K(k z)) by a constant, because k -> k z permutes the rows.
  std::vector<double> candidate_scores(double gamma, CbcMode mode) const;

  // Scores closer than this count as tied: a small multiple of the rounding error of
  // candidate_scores, bounded through gamma |q - 1|_2 |K|_2.
  double score_tolerance(double gamma) const;

  void incorporate(u64 z, double gamma);

 private:
  u64 modulus_;
  u64 first_row_;
  std::size_t r_ = 0;
  std::vector<double> kernel_;
  std::vector<double> excess_;
};

// scores[z-1] = sum_{k=1}^{N-1} q[k-1] kernel[(k z mod N) - 1] for prime N,
// through the primitive-root reordering and one cyclic convolution.
std::vector<double> rader_scores(std::span<const double> q, std::span<const double> kernel, u64 N);
std::vector<double> rader_scores_naive(std::span<const double> q, std::span<const double> kernel, u64 N);

// For N = 2^n and a kernel even on residues: scores[z] = sum_{k=0}^{N-1} q[k] f[k z mod N]
// for odd z, using the {+-1} x <5> structure of the odd residues. Even entries are left at 0.
std::vector<double> power_of_two_scores(std::span<const double> q, std::span<const double> f, unsigned n);

// Smallest z whose score is within tolerance of the minimum.
u64 select_candidate(std::span<const double> scores, double tolerance);

struct CbcStep {
  std::size_t d;
  u64 z;
  double score;
};

// Greedy minimisation of the log-sine quality, prime N, z_1 = 1.
GeneratingVector construct_korobov_cbc(u64 N, std::size_t s, const ProductWeights& w, CbcMode mode = CbcMode::fast,
                                       std::vector<CbcStep>* trace = nullptr);

// Greedy minimisation of the worst-case error for smoothness alpha.
// w_alpha already carries the power (gamma_j^alpha). N prime or a power of two.
GeneratingVector construct_standard_cbc(u64 N, std::size_t s, double alpha, const ProductWeights& w_alpha,
                                        CbcMode mode = CbcMode::fast,
                                        std::vector<CbcStep>* trace = nullptr);

// sum over nonempty u of gamma_u sum_{k=1}^{N-1} prod_{j in u} omega(k z_j / N).
double korobov_quality(const GeneratingVector& z, const ProductWeights& w);
double korobov_quality(const GeneratingVector& z, const GeneralWeights& w);

}  // namespace latgen
