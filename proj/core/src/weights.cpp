#include "latgen/weights.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "latgen/compensated_sum.hpp"

namespace latgen {

namespace {

void check_gamma(double g, const std::string& where) {
  if (!(g >= 0.0) || !std::isfinite(g)) {
    throw std::invalid_argument(where + ": weight must be finite and non-negative, got " + std::to_string(g));
  }
}

}  // namespace

ProductWeights::ProductWeights(std::vector<double> gammas) : gammas_(std::move(gammas)) {
  for (std::size_t j = 0; j < gammas_.size(); ++j) check_gamma(gammas_[j], "gamma_" + std::to_string(j + 1));
}

double ProductWeights::max() const noexcept {
  double m = 0.0;
  for (double g : gammas_) m = std::max(m, g);
  return m;
}

ProductWeights ProductWeights::prefix(std::size_t s) const {
  if (s > gammas_.size()) throw std::out_of_range("ProductWeights::prefix: not enough coordinates");
  return ProductWeights(std::vector<double>(gammas_.begin(), gammas_.begin() + static_cast<std::ptrdiff_t>(s)));
}

GeneralWeights::GeneralWeights(std::size_t s, const std::function<double(Mask)>& generator) : dims_(s) {
  if (s > max_dims) throw std::invalid_argument("GeneralWeights: at most 20 coordinates supported");
  table_.resize(std::size_t{1} << s);
  table_[0] = 1.0;
  for (Mask u = 1; u < table_.size(); ++u) {
    table_[u] = generator(u);
    check_gamma(table_[u], "general weight");
  }
}

GeneralWeights GeneralWeights::from_table(std::size_t s, const std::map<Mask, double>& entries) {
  if (s > max_dims) throw std::invalid_argument("GeneralWeights: at most 20 coordinates supported");
  for (const auto& [mask, value] : entries) {
    if (mask >> s) throw std::invalid_argument("GeneralWeights: subset outside {1.." + std::to_string(s) + "}");
    (void)value;
  }
  return GeneralWeights(s, [&](Mask u) {
    const auto it = entries.find(u);
    return it == entries.end() ? 0.0 : it->second;
  });
}

GeneralWeights GeneralWeights::from_product(const ProductWeights& w) {
  return GeneralWeights(w.dims(), [&](Mask u) {
    double g = 1.0;
    for (std::size_t j = 0; j < w.dims(); ++j) {
      if (u & (Mask{1} << j)) g *= w[j];
    }
    return g;
  });
}

std::size_t dims(const Weights& w) {
  return std::visit([](const auto& x) { return x.dims(); }, w);
}

GeneralWeights::Mask subset_mask(std::span<const std::size_t> u) {
  GeneralWeights::Mask mask = 0;
  for (std::size_t j : u) {
    if (j < 1 || j > GeneralWeights::max_dims) throw std::out_of_range("subset index out of range");
    mask |= GeneralWeights::Mask{1} << (j - 1);
  }
  return mask;
}

double weight_of(std::span<const std::size_t> u, const ProductWeights& w) {
  double g = 1.0;
  for (std::size_t j : u) {
    if (j < 1 || j > w.dims()) throw std::out_of_range("weight_of: coordinate out of range");
    g *= w[j - 1];
  }
  return g;
}

double weight_of(std::span<const std::size_t> u, const GeneralWeights& w) {
  for (std::size_t j : u) {
    if (j < 1 || j > w.dims()) throw std::out_of_range("weight_of: coordinate out of range");
  }
  return w(subset_mask(u));
}

namespace {

template <class W, class GammaOf>
double r_alpha_impl(std::span<const std::int64_t> m, double alpha, const W& w, GammaOf gamma_of) {
  if (m.size() != w.dims()) throw std::invalid_argument("r_alpha_gamma: dimension mismatch");
  GeneralWeights::Mask support = 0;
  double prod = 1.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] != 0) {
      support |= GeneralWeights::Mask{1} << j;
      prod *= std::pow(std::fabs(static_cast<double>(m[j])), alpha);
    }
  }
  const double g = gamma_of(support);
  if (g == 0.0) return std::numeric_limits<double>::infinity();
  return prod / g;
}

}  // namespace

double r_alpha_gamma(std::span<const std::int64_t> m, double alpha, const ProductWeights& w) {
  return r_alpha_impl(m, alpha, w, [&](GeneralWeights::Mask u) {
    double g = 1.0;
    for (std::size_t j = 0; j < w.dims(); ++j) {
      if (u & (GeneralWeights::Mask{1} << j)) g *= w[j];
    }
    return g;
  });
}

double r_alpha_gamma(std::span<const std::int64_t> m, double alpha, const GeneralWeights& w) {
  return r_alpha_impl(m, alpha, w, [&](GeneralWeights::Mask u) { return w(u); });
}

ProductWeights power_weights(const ProductWeights& w, double alpha) {
  std::vector<double> g(w.dims());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = std::pow(w[j], alpha);
  return ProductWeights(std::move(g));
}

GeneralWeights power_weights(const GeneralWeights& w, double alpha) {
  return GeneralWeights(w.dims(), [&](GeneralWeights::Mask u) { return std::pow(w(u), alpha); });
}

double subset_power_sum(const ProductWeights& w, double a) {
  // prod (1 + a gamma_j) - 1 through logs so that tiny weights are not swamped by the 1.
  double log_sum = 0.0;
  for (double g : w.gammas()) log_sum += std::log1p(a * g);
  return std::expm1(log_sum);
}

double subset_power_sum(const GeneralWeights& w, double a) {
  CompensatedSum acc;
  const auto table = w.table();
  for (GeneralWeights::Mask u = 1; u < table.size(); ++u) {
    acc += table[u] * std::pow(a, std::popcount(u));
  }
  return acc.value();
}

std::vector<double> summability_diagnostic(const ProductWeights& w) {
  return std::vector<double>(w.gammas().begin(), w.gammas().end());
}

std::vector<double> summability_diagnostic(const GeneralWeights& w) {
  std::vector<double> out(w.dims(), 0.0);
  for (std::size_t j = 0; j < w.dims(); ++j) {
    const GeneralWeights::Mask bit = GeneralWeights::Mask{1} << j;
    double best = 0.0;
    for (GeneralWeights::Mask v = 0; v < bit; ++v) {
      const double num = w(v | bit);
      const double den = w(v);
      if (den > 0.0) {
        best = std::max(best, num / den);
      } else if (num > 0.0) {
        best = std::numeric_limits<double>::infinity();
      }
    }
    out[j] = best;
  }
  return out;
}

Weights WeightSpec::resolve(std::size_t s) const {
  std::vector<double> g(s);
  switch (kind) {
    case Kind::inverse_square:
      for (std::size_t j = 1; j <= s; ++j) g[j - 1] = 1.0 / (static_cast<double>(j) * static_cast<double>(j));
      return ProductWeights(std::move(g));
    case Kind::inverse_cube:
      for (std::size_t j = 1; j <= s; ++j) g[j - 1] = std::pow(static_cast<double>(j), -3.0);
      return ProductWeights(std::move(g));
    case Kind::geometric:
      for (std::size_t j = 1; j <= s; ++j) g[j - 1] = std::pow(parameter, static_cast<double>(j));
      return ProductWeights(std::move(g));
    case Kind::list:
      if (list.size() < s) {
        throw std::invalid_argument("weight list has " + std::to_string(list.size()) +
                                    " entries, dimension " + std::to_string(s) + " requested");
      }
      return ProductWeights(std::vector<double>(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(s)));
    case Kind::general_table:
      if (table_dims > s) {
        throw std::invalid_argument("general weight table mentions coordinate " + std::to_string(table_dims) +
                                    ", dimension " + std::to_string(s) + " requested");
      }
      return GeneralWeights::from_table(s, table);
  }
  throw std::logic_error("WeightSpec: unknown kind");
}

}  // namespace latgen
