#pragma once

#include <cstddef>
#include <vector>

#include "latgen/weights.hpp"

inline latgen::ProductWeights inverse_square_weights(std::size_t s) {
  std::vector<double> g(s);
  for (std::size_t j = 1; j <= s; ++j) g[j - 1] = 1.0 / static_cast<double>(j * j);
  return latgen::ProductWeights(std::move(g));
}
