#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace latgen {

// gamma_u = prod_{j in u} gamma_j.
class ProductWeights {
 public:
  ProductWeights() = default;
  explicit ProductWeights(std::vector<double> gammas);

  std::size_t dims() const noexcept { return gammas_.size(); }
  std::span<const double> gammas() const noexcept { return gammas_; }
  // 0-based coordinate index.
  double operator[](std::size_t j) const { return gammas_[j]; }
  double max() const noexcept;
  ProductWeights prefix(std::size_t s) const;

 private:
  std::vector<double> gammas_;
};

// One weight per subset of {1..s}; bit j-1 of the mask marks coordinate j.
class GeneralWeights {
 public:
  static constexpr std::size_t max_dims = 20;
  using Mask = std::uint32_t;

  GeneralWeights() = default;
  GeneralWeights(std::size_t s, const std::function<double(Mask)>& generator);
  // Subsets missing from the map get weight 0. The empty set is fixed at 1.
  static GeneralWeights from_table(std::size_t s, const std::map<Mask, double>& entries);
  static GeneralWeights from_product(const ProductWeights& w);

  std::size_t dims() const noexcept { return dims_; }
  double operator()(Mask u) const { return table_[u]; }
  std::span<const double> table() const noexcept { return table_; }

 private:
  std::size_t dims_ = 0;
  std::vector<double> table_;
};

using Weights = std::variant<ProductWeights, GeneralWeights>;

std::size_t dims(const Weights& w);

// Subset given as 1-based coordinate indices.
GeneralWeights::Mask subset_mask(std::span<const std::size_t> u);

double weight_of(std::span<const std::size_t> u, const ProductWeights& w);
double weight_of(std::span<const std::size_t> u, const GeneralWeights& w);

// r_{alpha,gamma}(m) = gamma_{supp m}^{-1} prod_{j in supp m} |m_j|^alpha; infinite when gamma vanishes.
double r_alpha_gamma(std::span<const std::int64_t> m, double alpha, const ProductWeights& w);
double r_alpha_gamma(std::span<const std::int64_t> m, double alpha, const GeneralWeights& w);

// gamma_u -> gamma_u^alpha.
ProductWeights power_weights(const ProductWeights& w, double alpha);
GeneralWeights power_weights(const GeneralWeights& w, double alpha);

// sum over nonempty u of gamma_u a^{|u|}.
double subset_power_sum(const ProductWeights& w, double a);
double subset_power_sum(const GeneralWeights& w, double a);

// Influence of coordinate j relative to all subsets of earlier coordinates:
// max over v in {1..j-1} of gamma_{v + j} / gamma_v. Equals gamma_j for product weights.
// Diagnostic only; a fast-decaying sequence is what the error bounds need.
std::vector<double> summability_diagnostic(const ProductWeights& w);
std::vector<double> summability_diagnostic(const GeneralWeights& w);

// Parsed weight description, resolved against a dimension on demand.
struct WeightSpec {
  enum class Kind { inverse_square, inverse_cube, geometric, list, general_table };
  Kind kind = Kind::inverse_square;
  double parameter = 0.0;
  std::vector<double> list;
  std::size_t table_dims = 0;  // largest coordinate the table mentions
  std::map<GeneralWeights::Mask, double> table;
  std::string id;

  Weights resolve(std::size_t s) const;
};

}  // namespace latgen
