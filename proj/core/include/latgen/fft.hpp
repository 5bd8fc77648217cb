#pragma once

#include <complex>
#include <span>
#include <vector>

namespace latgen {

using Complex = std::complex<double>;

enum class Direction { forward, inverse };

// Forward: X_k = sum_j x_j e^{-2 pi i jk/n}. Inverse applies the opposite sign and scales by 1/n.
// Any length; powers of two go radix-2, everything else through Bluestein.
std::vector<Complex> fft(std::span<const Complex> x, Direction dir);

// c_k = sum_j a_j b_{(k - j) mod n}, a and b of equal length.
std::vector<double> cyclic_convolution(std::span<const double> a, std::span<const double> b);
std::vector<double> cyclic_convolution_naive(std::span<const double> a, std::span<const double> b);

}  // namespace latgen
