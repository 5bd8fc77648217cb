#include "latgen/tools/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <ostream>
#include <thread>

#include "latgen/cbc.hpp"
#include "latgen/cbc_dbd.hpp"
#include "latgen/error.hpp"
#include "latgen/tools/formats.hpp"

namespace latgen::tools {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const ProductWeights& require_product(const Weights& w, Algorithm algo) {
  if (const auto* p = std::get_if<ProductWeights>(&w)) return *p;
  throw UsageError(to_string(algo) + " needs product weights");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<SweepRow> sweep_one(const SweepConfig& cfg, u64 N) {
  const Weights base = cfg.weights.resolve(cfg.s);
  std::vector<SweepRow> rows;
  const bool alpha_free = cfg.algorithm != Algorithm::std_cbc;
  std::vector<u64> shared;
  double shared_seconds = 0.0;
  if (alpha_free) {
    const auto t0 = Clock::now();
    const auto z = construct(cfg.algorithm, N, cfg.s, base, 0.0);
    shared_seconds = seconds_since(t0);
    shared.assign(z.components().begin(), z.components().end());
  }
  for (double alpha : cfg.alphas) {
    SweepRow row;
    row.N = N;
    row.s = cfg.s;
    row.alpha = alpha;
    row.weights_id = cfg.weights.id;
    row.algorithm = cfg.algorithm;
    std::vector<u64> comps = shared;
    row.construct_seconds = shared_seconds;
    if (!alpha_free) {
      const auto t0 = Clock::now();
      const auto z = construct(cfg.algorithm, N, cfg.s, base, alpha);
      row.construct_seconds = seconds_since(t0);
      comps.assign(z.components().begin(), z.components().end());
    }
    const GeneratingVector z(N, std::move(comps));
    const auto t1 = Clock::now();
    const Weights powered = std::visit([&](const auto& w) -> Weights { return power_weights(w, alpha); }, base);
    row.wce = worst_case_error(z, alpha, powered);
    row.eval_seconds = seconds_since(t1);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::cbc_dbd:
      return "cbc-dbd";
    case Algorithm::korobov_cbc:
      return "korobov-cbc";
    case Algorithm::std_cbc:
      return "std-cbc";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "cbc-dbd") return Algorithm::cbc_dbd;
  if (name == "korobov-cbc") return Algorithm::korobov_cbc;
  if (name == "std-cbc") return Algorithm::std_cbc;
  throw UsageError("unknown algorithm '" + name + "' (expected cbc-dbd, korobov-cbc or std-cbc)");
}

GeneratingVector construct(Algorithm algo, u64 N, std::size_t s, const Weights& base, double alpha) {
  if (s < 1) throw UsageError("s must be >= 1");
  if (dims(base) < s) throw UsageError("weights cover fewer than s coordinates");
  switch (algo) {
    case Algorithm::cbc_dbd: {
      if (!is_power_of_two(N) || N < 2) throw UsageError("cbc-dbd needs N = 2^n with n >= 1");
      return construct_cbc_dbd(log2_exact(N), s, require_product(base, algo));
    }
    case Algorithm::korobov_cbc: {
      if (N < 3 || !is_prime(N)) throw UsageError("N must be prime");
      return construct_korobov_cbc(N, s, require_product(base, algo));
    }
    case Algorithm::std_cbc: {
      if (!(alpha > 1.0)) throw UsageError("std-cbc needs --alpha > 1");
      if (N < 2 || !(is_prime(N) || is_power_of_two(N))) throw UsageError("std-cbc needs N prime or a power of two");
      return construct_standard_cbc(N, s, alpha, power_weights(require_product(base, algo), alpha));
    }
  }
  throw UsageError("unknown algorithm");
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.alphas.empty()) throw UsageError("empty alpha list");
  if (cfg.moduli.empty()) throw UsageError("empty N range");
  for (double a : cfg.alphas) {
    if (!(a > 1.0)) throw UsageError("every alpha must exceed 1");
  }
  // Validate once up front so a bad configuration fails before any work starts.
  (void)cfg.weights.resolve(cfg.s);

  std::vector<std::vector<SweepRow>> per_n(cfg.moduli.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.moduli.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < cfg.moduli.size(); ++i) per_n[i] = sweep_one(cfg, cfg.moduli[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cfg.moduli.size();) {
          try {
            per_n[i] = sweep_one(cfg, cfg.moduli[i]);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<SweepRow> rows;
  for (auto& r : per_n) rows.insert(rows.end(), r.begin(), r.end());
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.alpha != b.alpha ? a.alpha < b.alpha : a.N < b.N;
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << sweep_csv_header << "\n";
  for (const auto& r : rows) {
    out << r.N << "," << r.s << "," << format_double(r.alpha) << "," << csv_field(r.weights_id) << ","
        << to_string(r.algorithm) << "," << format_double(r.wce) << "," << format_double(r.construct_seconds) << ","
        << format_double(r.eval_seconds) << "\n";
  }
}

unsigned thread_count_from_env() {
  const char* env = std::getenv("LATGEN_THREADS");
  unsigned n = 0;
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != nullptr && *end == '\0') n = static_cast<unsigned>(v);
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

}  // namespace latgen::tools
