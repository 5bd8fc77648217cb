#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "latgen/numtheory.hpp"
#include "latgen/weights.hpp"

namespace latgen::tools {

// Exit code 1.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text format:
//   # latgen v1
//   N=<modulus>
//   s=<dimension>
//   <j> <z_j>        (j = 1..s)
GeneratingVector parse_vector(std::istream& in);
GeneratingVector read_vector_file(const std::filesystem::path& path);
void write_vector(std::ostream& out, const GeneratingVector& z);
void write_vector_file(const std::filesystem::path& path, const GeneratingVector& z);

// product:1/j^2 | product:1/j^3 | product:c^j:<c> | product:list:<path> | general:<path>
// A list file has one gamma_j per line; a general file has lines "<j1,j2,...> <gamma>".
WeightSpec parse_weight_spec(const std::string& text);

// 17 significant digits, so every double round-trips.
std::string format_double(double x);

}  // namespace latgen::tools
