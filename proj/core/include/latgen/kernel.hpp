#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latgen/numtheory.hpp"

namespace latgen {

// -2 log(2 sin(pi x)) for x in (0, 1).
double omega(double x);
// log(1 / sin^2(pi x)) for x in (0, 1).
double log_inv_sin2(double x);

// log(1 / sin^2(pi k / N)) for k = 1..N-1, built once per modulus.
// Entries k and N - k are bitwise identical.
class KernelTable {
 public:
  explicit KernelTable(u64 modulus);

  u64 modulus() const noexcept { return modulus_; }
  // Index k - 1 holds the value at k.
  std::span<const double> values() const noexcept { return values_; }
  double operator()(u64 k) const { return values_[k - 1]; }

 private:
  u64 modulus_;
  std::vector<double> values_;
};

KernelTable kernel_table(u64 modulus);

// -2 log(2 sin(pi k / N)) at index k for k = 1..N-1; index 0 is left at 0.
std::vector<double> omega_table(u64 modulus);

// sum over 0 < |m| < N of e^{2 pi i m x} / |m|, i.e. 2 sum_{m=1}^{N-1} cos(2 pi m x) / m.
double vartheta_truncated(double x, u64 modulus);

// Entry a equals sum over 0 < |m| < N of e^{2 pi i m a / N} / |m|^alpha, a = 0..N-1.
// A single length-N transform of the folded coefficients.
std::vector<double> vartheta_residue_table(u64 modulus, double alpha = 1.0);

// Bernoulli polynomial B_alpha(x) for alpha in {2, 4, 6, 8}.
double bernoulli_poly(int alpha, double x);

// f_alpha(x) = sum_{m != 0} e^{2 pi i m x} / |m|^alpha for alpha > 1, x in [0, 1].
// Closed form for even alpha <= 8; otherwise truncated with absolute error <= tol.
double fourier_decay_sum(double alpha, double x, double tol = 1e-12);

// f_alpha(k / N) for k = 0..N-1, accurate to rounding for every alpha > 1.
// Frequencies are folded by residue mod N in closed form (Hurwitz zeta), then transformed once.
std::vector<double> fourier_decay_table(double alpha, u64 modulus);

// Number of series terms the truncated branch keeps for a given tolerance.
std::uint64_t fourier_truncation_length(double alpha, double tol);

// Riemann zeta for real alpha > 1.
double zeta(double alpha);
// Hurwitz zeta sum_{q >= 0} (a + q)^{-alpha}, alpha > 1, a > 0.
double hurwitz_zeta(double alpha, double a);

}  // namespace latgen
