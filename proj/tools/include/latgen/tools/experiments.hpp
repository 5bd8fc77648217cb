#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace latgen::tools {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  std::string relation;  // "<=", ">=" or "=="
  std::string source;    // "published", "derived" or "definition"
  bool passed = false;
};

struct ExperimentReport {
  std::string id;
  std::vector<CheckResult> checks;
  double seconds = 0.0;
  bool passed() const;
};

const std::vector<std::string>& experiment_ids();

// Writes <id>.csv and <id>.report.json under out_dir. Throws UsageError on an unknown id.
ExperimentReport run_experiment(const std::string& id, const std::filesystem::path& out_dir, std::ostream* log = nullptr);

void write_report_json(std::ostream& out, const ExperimentReport& report);

// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct ScalingFit {
  double constant = 0.0;       // t ~ constant * work
  double max_deviation = 0.0;  // max over cells of max(t/fit, fit/t)
};

// Fits t = c * work in log space.
ScalingFit fit_proportional(std::span<const double> work, std::span<const double> t);

// Median of three timed runs; each run repeats f until at least min_seconds have passed.
template <class F>
double median_seconds(F&& f, double min_seconds = 0.02);

}  // namespace latgen::tools

#include <algorithm>
#include <array>
#include <chrono>

template <class F>
double latgen::tools::median_seconds(F&& f, double min_seconds) {
  using Clock = std::chrono::steady_clock;
  std::array<double, 3> runs{};
  for (auto& r : runs) {
    const auto t0 = Clock::now();
    std::size_t reps = 0;
    double elapsed = 0.0;
    do {
      f();
      ++reps;
      elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    } while (elapsed < min_seconds);
    r = elapsed / static_cast<double>(reps);
  }
  std::sort(runs.begin(), runs.end());
  return runs[1];
}
