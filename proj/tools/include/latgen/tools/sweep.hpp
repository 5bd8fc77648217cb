#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "latgen/numtheory.hpp"
#include "latgen/weights.hpp"

namespace latgen::tools {

enum class Algorithm { cbc_dbd, korobov_cbc, std_cbc };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

// Builds a vector from the base weights. std-cbc raises them to alpha internally;
// the other two ignore alpha.
GeneratingVector construct(Algorithm algo, u64 N, std::size_t s, const Weights& base, double alpha);

struct SweepRow {
  u64 N = 0;
  std::size_t s = 0;
  double alpha = 0.0;
  std::string weights_id;
  Algorithm algorithm = Algorithm::cbc_dbd;
  double wce = 0.0;
  double construct_seconds = 0.0;
  double eval_seconds = 0.0;
};

struct SweepConfig {
  Algorithm algorithm = Algorithm::cbc_dbd;
  WeightSpec weights;
  std::vector<double> alphas;
  std::size_t s = 1;
  std::vector<u64> moduli;
  unsigned threads = 1;
};

// One row per (N, alpha), sorted by (alpha, N). The error uses gamma^alpha.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

inline constexpr const char* sweep_csv_header = "N,s,alpha,weights_id,algorithm,wce,construct_seconds,eval_seconds";
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// LATGEN_THREADS, where 0 or unset means one per hardware thread.
unsigned thread_count_from_env();

}  // namespace latgen::tools
