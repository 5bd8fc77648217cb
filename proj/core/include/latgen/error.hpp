#pragma once

#include <cstdint>
#include <span>

#include "latgen/numtheory.hpp"
#include "latgen/weights.hpp"

namespace latgen {

struct ErrorInterval {
  double value = 0.0;
  double tail_bound = 0.0;  // |true - value| <= tail_bound
};

// How an error figure is requested: smoothness, weights, and whether gamma^alpha is used.
struct ErrorSpec {
  double alpha = 2.0;
  WeightSpec weights;
  bool apply_power = false;
};

// prod_j (1 + x_j) - 1, accurate when the product is near 1.
double product_minus_one(std::span<const double> x);

// -1 + (1/N) sum_k prod_j (1 + gamma_j f_alpha(k z_j / N)).
// The weights enter as given; pass power_weights(w, alpha) for the gamma^alpha convention.
double worst_case_error(const GeneratingVector& z, double alpha, const ProductWeights& w);
double worst_case_error(const GeneratingVector& z, double alpha, const GeneralWeights& w);
double worst_case_error(const GeneratingVector& z, double alpha, const Weights& w);

// Direct dual-lattice sum over m in {-(M-1)..M-1}^s with a rigorous bound on the part outside the box.
ErrorInterval worst_case_error_bruteforce(const GeneratingVector& z, double alpha, const GeneralWeights& w,
                                          std::int64_t radius);

// Dual-lattice sum restricted to 0 < |m_j| < N (or m_j = 0) with coefficients |m|^{-alpha};
// alpha = 1 gives the smoothness-free figure of merit.
double truncated_dual_sum(const GeneratingVector& z, const ProductWeights& w, double alpha = 1.0);
double truncated_dual_sum(const GeneratingVector& z, const GeneralWeights& w, double alpha = 1.0);

// Guaranteed figure for some z when N is prime: (2/N) sum_u gamma_u (2(1 + ln N))^{|u|}.
double bound_existence(u64 N, const ProductWeights& w);
double bound_existence(u64 N, const GeneralWeights& w);

// Bound on the truncated dual sum of a digit-by-digit vector, N = 2^n.
double bound_cbc_dbd(u64 N, const ProductWeights& w);

// Bound on the truncated dual sum of a Korobov-CBC vector, N prime.
double bound_korobov_cbc(u64 N, const ProductWeights& w);
double bound_korobov_cbc(u64 N, const GeneralWeights& w);

// N (prod_j (1 + gamma_j ln 4) - 1): ceiling for log_sine_energy of a digit-by-digit vector.
double bound_log_sine_energy(u64 N, const ProductWeights& w);

// sum_u gamma_u (2 ln N)^{|u|}: ceiling for korobov_quality of a Korobov-CBC vector.
double bound_korobov_quality(u64 N, const ProductWeights& w);
double bound_korobov_quality(u64 N, const GeneralWeights& w);

// N^{-alpha} sum_u gamma_u (4 zeta(alpha))^{|u|}: gap between the worst-case error and the truncated sum.
double truncation_gap_bound(u64 N, double alpha, const ProductWeights& w);
double truncation_gap_bound(u64 N, double alpha, const GeneralWeights& w);

}  // namespace latgen
