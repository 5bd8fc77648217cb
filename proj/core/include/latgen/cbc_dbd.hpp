#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "latgen/kernel.hpp"
#include "latgen/numtheory.hpp"
#include "latgen/weights.hpp"

namespace latgen {

// Running products for the digit-by-digit construction with N = 2^n.
// Slot p(k 2^{n-t}) (t = 1..n, k odd < 2^t) holds
//   prod_{j <= r} (1 + gamma_j log(1/sin^2(pi k z_j / 2^t))).
class DigitState {
 public:
  explicit DigitState(unsigned bits);

  unsigned bits() const noexcept { return n_; }
  u64 modulus() const noexcept { return u64{1} << n_; }
  std::size_t components() const noexcept { return r_; }
  const KernelTable& table() const noexcept { return table_; }

  // 1-based slot index, 1..N-1.
  double p(u64 index) const { return p_[index]; }
  double q(unsigned t, u64 k) const { return p_[k << (n_ - t)]; }

  // Bumps the component counter once every bit level of a component has been folded in.
  void finish_component() noexcept { ++r_; }

  // log(1/sin^2(pi k x / 2^v)) read from the shared table; k x must be odd.
  double kernel(u64 kx, unsigned v) const {
    const u64 mask = (u64{1} << v) - 1;
    return table_((kx & mask) << (n_ - v));
  }

 private:
  friend void update_digit_products(DigitState&, unsigned, u64, double);

  unsigned n_;
  std::size_t r_ = 0;
  KernelTable table_;
  std::vector<double> p_;  // index 0 unused
};

// Fast quality sum_{t=v}^n 2^{v-t} sum_{k odd < 2^t} q(t, k) (1 + gamma_r L(k x / 2^v)),
// with L(y) = log(1/sin^2(pi y)).
double digit_score(const DigitState& state, unsigned v, u64 x, double gamma_r);

// Scores of x and x + 2^{v-1} from one pass over the products.
std::pair<double, double> digit_score_pair(const DigitState& state, unsigned v, u64 x, double gamma_r);

// Multiply p(k 2^{n-v}) by (1 + gamma_r L(k z / 2^v)) for odd k < 2^v.
void update_digit_products(DigitState& state, unsigned v, u64 z, double gamma_r);

// Fold a full component into the state (all bit levels v = 1..n).
void incorporate_component(DigitState& state, u64 z, double gamma);

// Difference between the subset-sum quality and the fast one for product weights:
// -sum_{t=v}^n 2^{v-t} 2^{t-1} = -(n - v + 1) 2^{v-1}.
double digit_score_offset(unsigned n, unsigned v);

// Subset-sum quality for arbitrary weights, evaluated term by term. Reference only.
// z_prev holds z_1..z_{r-1}; r <= 12.
double digit_quality_reference(std::size_t r, unsigned n, unsigned v, u64 x, std::span<const u64> z_prev,
                               const GeneralWeights& w);

struct DigitChoice {
  std::size_t r;
  unsigned v;
  double score_zero;
  double score_one;
  unsigned bit;
};

// Component-by-component digit-by-digit construction, N = 2^n, z_1 = 1.
// Weights are the base sequence (not raised to any smoothness power).
GeneratingVector construct_cbc_dbd(unsigned n, std::size_t s, const ProductWeights& w,
                                   std::vector<DigitChoice>* trace = nullptr);

// Same greedy rule driven by digit_quality_reference; O(2^r) per evaluation.
GeneratingVector construct_cbc_dbd_reference(unsigned n, std::size_t s, const GeneralWeights& w,
                                             std::vector<DigitChoice>* trace = nullptr);

// -(N-1) + sum_{k=1}^{N-1} prod_j (1 + gamma_j L(k z_j / N)); every z_j odd.
double log_sine_energy(const GeneratingVector& z, const ProductWeights& w);
// sum over nonempty u of gamma_u sum_k prod_{j in u} L(k z_j / N).
double log_sine_energy(const GeneratingVector& z, const GeneralWeights& w);

// Relative tolerance under which two candidate scores count as tied.
inline constexpr double tie_tolerance = 1e-12;

}  // namespace latgen
