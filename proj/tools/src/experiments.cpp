#include "latgen/tools/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <random>

#include "json.hpp"

#include "latgen/latgen.hpp"
#include "latgen/tools/formats.hpp"
#include "latgen/tools/sweep.hpp"

namespace latgen::tools {

namespace {

using Clock = std::chrono::steady_clock;

CheckResult at_most(std::string name, double value, double limit, std::string source) {
  return {std::move(name), value, limit, "<=", std::move(source), value <= limit};
}

CheckResult equals(std::string name, double value, double expected, std::string source) {
  return {std::move(name), value, expected, "==", std::move(source), value == expected};
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

// Published series, restricted to N <= 2^14: least-squares slope and the value at N = 1024 (or 1021).
struct SeriesRef {
  double slope;
  double at_reference;
};

struct FigureSpec {
  const char* id;
  Algorithm circle;
  const char* weights;
  bool primes;
  std::array<SeriesRef, 3> circle_ref;  // alpha = 2, 3, 4
  std::array<SeriesRef, 3> std_ref;
};

// clang-format off
const std::array<FigureSpec, 8> figures{{
  {"fig2a", Algorithm::cbc_dbd, "product:1/j^2", false,
   {{{-1.722, 4.4138e-05}, {-2.674, 3.5188e-08}, {-3.625, 4.26011e-11}}},
   {{{-1.781, 3.04694e-05}, {-2.809, 1.33241e-08}, {-3.823, 8.69355e-12}}}},
  {"fig2b", Algorithm::cbc_dbd, "product:1/j^3", false,
   {{{-1.859, 8.96735e-06}, {-2.827, 5.25024e-09}, {-3.798, 4.03558e-12}}},
   {{{-1.921, 6.74206e-06}, {-2.960, 3.14335e-09}, {-3.982, 2.27877e-12}}}},
  {"fig2c", Algorithm::cbc_dbd, "product:c^j:0.95", false,
   {{{-1.000, 276067}, {-1.009, 23.9216}, {-1.081, 0.785734}}},
   {{{-1.002, 271767}, {-1.018, 22.1652}, {-1.170, 0.614997}}}},
  {"fig2d", Algorithm::cbc_dbd, "product:c^j:0.7", false,
   {{{-1.425, 0.000868313}, {-2.196, 1.74557e-06}, {-2.990, 6.28866e-09}}},
   {{{-1.502, 0.000649296}, {-2.349, 5.7975e-07}, {-3.183, 8.5331e-10}}}},
  {"fig3a", Algorithm::korobov_cbc, "product:1/j^2", true,
   {{{-1.785, 3.02304e-05}, {-2.808, 1.27916e-08}, {-3.834, 8.4835e-12}}},
   {{{-1.789, 3.03337e-05}, {-2.820, 1.2626e-08}, {-3.847, 7.93817e-12}}}},
  {"fig3b", Algorithm::korobov_cbc, "product:1/j^3", true,
   {{{-1.922, 6.71843e-06}, {-2.962, 3.15197e-09}, {-3.985, 2.30968e-12}}},
   {{{-1.924, 6.71067e-06}, {-2.963, 3.12822e-09}, {-3.984, 2.27775e-12}}}},
  {"fig3c", Algorithm::korobov_cbc, "product:c^j:0.95", true,
   {{{-1.000, 276871}, {-1.006, 24.0375}, {-1.056, 0.86207}}},
   {{{-1.000, 270900}, {-1.018, 22.2215}, {-1.170, 0.616963}}}},
  {"fig3d", Algorithm::korobov_cbc, "product:c^j:0.7", true,
   {{{-1.482, 0.000705641}, {-2.270, 8.74477e-07}, {-3.057, 1.94414e-09}}},
   {{{-1.495, 0.000634771}, {-2.328, 6.15556e-07}, {-3.182, 9.7876e-10}}}},
}};
// clang-format on

constexpr std::array<double, 3> figure_alphas{2.0, 3.0, 4.0};
constexpr std::size_t figure_dims = 100;
constexpr unsigned figure_min_bits = 6;
constexpr unsigned figure_max_bits = 14;
constexpr double slope_slack = 0.25;

std::vector<u64> figure_moduli(bool primes) {
  std::vector<u64> out;
  for (unsigned n = figure_min_bits; n <= figure_max_bits; ++n) {
    const u64 N = u64{1} << n;
    out.push_back(primes ? prev_prime(N) : N);
  }
  return out;
}

void check_series(std::vector<CheckResult>& checks, const std::vector<SweepRow>& rows, Algorithm algo, double alpha,
                  const SeriesRef& ref, u64 reference_N, double ratio_limit, bool symmetric) {
  std::vector<double> xs, ys;
  double at_ref = NAN;
  for (const auto& r : rows) {
    if (r.algorithm != algo || r.alpha != alpha) continue;
    xs.push_back(static_cast<double>(r.N));
    ys.push_back(r.wce);
    if (r.N == reference_N) at_ref = r.wce;
  }
  const std::string tag = to_string(algo) + " alpha=" + format_double(alpha);
  checks.push_back(at_most(tag + " slope", loglog_slope(xs, ys), ref.slope + slope_slack, "published"));
  if (ratio_limit > 0.0) {
    const double ratio = at_ref / ref.at_reference;
    const double dev = symmetric ? std::max(ratio, 1.0 / ratio) : std::abs(ratio - 1.0);
    checks.push_back(at_most(tag + (symmetric ? " factor vs published at N=" : " relative deviation at N=") +
                                 std::to_string(reference_N),
                             dev, ratio_limit, "published"));
  }
}

std::vector<CheckResult> run_figure(const FigureSpec& fig, const std::filesystem::path& csv, std::ostream* log) {
  SweepConfig cfg;
  cfg.weights = parse_weight_spec(fig.weights);
  cfg.alphas.assign(figure_alphas.begin(), figure_alphas.end());
  cfg.s = figure_dims;
  cfg.moduli = figure_moduli(fig.primes);
  cfg.threads = 1;

  cfg.algorithm = fig.circle;
  auto rows = run_sweep(cfg);
  cfg.algorithm = Algorithm::std_cbc;
  const auto std_rows = run_sweep(cfg);
  rows.insert(rows.end(), std_rows.begin(), std_rows.end());
  {
    auto out = open_out(csv);
    write_sweep_csv(out, rows);
  }
  if (log != nullptr) write_sweep_csv(*log, rows);

  const u64 reference_N = fig.primes ? 1021 : 1024;
  std::vector<CheckResult> checks;
  for (std::size_t i = 0; i < figure_alphas.size(); ++i) {
    const double a = figure_alphas[i];
    // Reference values are compared for alpha = 2: a factor of 2 for the log-kernel constructions,
    // 10% for the one that minimizes the error directly.
    check_series(checks, rows, fig.circle, a, fig.circle_ref[i], reference_N, i == 0 ? 2.0 : 0.0, true);
    check_series(checks, rows, Algorithm::std_cbc, a, fig.std_ref[i], reference_N, i == 0 ? 0.1 : 0.0, false);
  }
  if (std::string(fig.id) == "fig2a") {
    constexpr std::array<double, 3> ceilings{-1.6, -2.5, -3.3};
    for (std::size_t i = 0; i < figure_alphas.size(); ++i) {
      std::vector<double> xs, ys;
      for (const auto& r : rows) {
        if (r.algorithm == fig.circle && r.alpha == figure_alphas[i]) {
          xs.push_back(static_cast<double>(r.N));
          ys.push_back(r.wce);
        }
      }
      checks.push_back(at_most("cbc-dbd alpha=" + format_double(figure_alphas[i]) + " slope ceiling",
                               loglog_slope(xs, ys), ceilings[i], "derived"));
    }
  }
  return checks;
}

std::vector<CheckResult> run_table_shape(const std::filesystem::path& csv, std::ostream* log) {
  constexpr std::array<unsigned, 3> bits{10, 12, 14};
  constexpr std::array<std::size_t, 3> dims{50, 100, 200};
  const auto weights = std::get<ProductWeights>(parse_weight_spec("product:1/j^2").resolve(dims.back()));

  std::map<std::pair<unsigned, std::size_t>, double> t;
  std::vector<double> work, times;
  for (unsigned n : bits) {
    for (std::size_t s : dims) {
      const auto w = weights.prefix(s);
      const double sec = median_seconds([&] { (void)construct_cbc_dbd(n, s, w); });
      t[{n, s}] = sec;
      work.push_back(static_cast<double>(s) * std::ldexp(1.0, static_cast<int>(n)) * n);
      times.push_back(sec);
    }
  }
  const auto fit = fit_proportional(work, times);

  auto out = open_out(csv);
  out << "n,N,s,construct_seconds,fitted_seconds\n";
  std::size_t i = 0;
  for (unsigned n : bits) {
    for (std::size_t s : dims) {
      out << n << "," << (u64{1} << n) << "," << s << "," << format_double(times[i]) << ","
          << format_double(fit.constant * work[i]) << "\n";
      if (log != nullptr) *log << "n=" << n << " s=" << s << " t=" << times[i] << "\n";
      ++i;
    }
  }

  std::vector<CheckResult> checks;
  checks.push_back(at_most("max deviation from c*s*N*n", fit.max_deviation, 2.5, "derived"));
  for (std::size_t s : dims)
    checks.push_back(at_most("t(n=14)/t(n=12) at s=" + std::to_string(s), t[{14, s}] / t[{12, s}], 5.5, "derived"));
  for (unsigned n : bits)
    checks.push_back(at_most("t(s=200)/t(s=100) at n=" + std::to_string(n), t[{n, 200}] / t[{n, 100}], 2.6, "derived"));
  return checks;
}

std::vector<CheckResult> run_oracle_suite(const std::filesystem::path& csv, std::ostream* log) {
  std::vector<CheckResult> checks;
  const auto inv_sq = std::get<ProductWeights>(parse_weight_spec("product:1/j^2").resolve(8));
  const auto geo = std::get<ProductWeights>(parse_weight_spec("product:c^j:0.7").resolve(8));

  {
    double mismatches = 0;
    for (u64 N : {61, 127, 251})
      for (const auto* w : {&inv_sq, &geo})
        mismatches += construct_korobov_cbc(N, 8, *w, CbcMode::fast) != construct_korobov_cbc(N, 8, *w, CbcMode::naive);
    checks.push_back(equals("korobov-cbc fast vs naive mismatches", mismatches, 0, "definition"));
  }
  {
    double mismatches = 0;
    for (u64 N : {64, 127, 128, 251, 256})
      for (double a : {2.0, 3.0}) {
        const auto wa = power_weights(inv_sq, a);
        mismatches += construct_standard_cbc(N, 8, a, wa, CbcMode::fast) !=
                      construct_standard_cbc(N, 8, a, wa, CbcMode::naive);
      }
    checks.push_back(equals("std-cbc fast vs naive mismatches", mismatches, 0, "definition"));
  }
  {
    double mismatches = 0;
    const auto general = GeneralWeights::from_product(inv_sq.prefix(5));
    for (unsigned n = 3; n <= 7; ++n)
      mismatches += construct_cbc_dbd(n, 5, inv_sq.prefix(5)) != construct_cbc_dbd_reference(n, 5, general);
    checks.push_back(equals("cbc-dbd fast vs subset-sum mismatches", mismatches, 0, "definition"));
  }
  {
    // Folded pair evaluation against the direct score.
    double worst = 0.0;
    const unsigned n = 9;
    DigitState state(n);
    std::mt19937_64 rng(7);
    for (std::size_t r = 0; r < 4; ++r) incorporate_component(state, 2 * (rng() % (u64{1} << (n - 1))) + 1, inv_sq[r]);
    for (unsigned v = 2; v <= n; ++v)
      for (u64 x = 1; x < (u64{1} << (v - 1)); x += 2) {
        const auto [h0, h1] = digit_score_pair(state, v, x, inv_sq[4]);
        const double d0 = digit_score(state, v, x, inv_sq[4]);
        const double d1 = digit_score(state, v, x + (u64{1} << (v - 1)), inv_sq[4]);
        worst = std::max({worst, std::abs(h0 - d0) / std::abs(d0), std::abs(h1 - d1) / std::abs(d1)});
      }
    checks.push_back(at_most("digit pair vs direct score rel diff", worst, 1e-12, "derived"));
  }
  {
    // Subset-sum quality minus fast quality against the closed offset.
    double worst = 0.0;
    const auto general = GeneralWeights::from_product(inv_sq.prefix(4));
    const unsigned n = 6;
    const std::vector<u64> prev{1, 21, 45};
    DigitState state(n);
    for (std::size_t r = 0; r < prev.size(); ++r) incorporate_component(state, prev[r], inv_sq[r]);
    for (unsigned v = 2; v <= n; ++v)
      for (u64 x = 1; x < (u64{1} << v); x += 2) {
        const double naive = digit_quality_reference(4, n, v, x, prev, general);
        const double fast = digit_score(state, v, x, inv_sq[3]);
        worst = std::max(worst, std::abs(naive - fast - digit_score_offset(n, v)) / std::abs(naive));
      }
    checks.push_back(at_most("subset-sum minus fast quality vs offset", worst, 1e-10, "derived"));
  }
  {
    double worst = 0.0;
    std::mt19937_64 rng(11);
    for (u64 N : {8, 16}) {
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<u64> comps;
        for (int j = 0; j < 2; ++j) comps.push_back(2 * (rng() % (N / 2)) + 1);
        const GeneratingVector z(N, comps);
        const auto w = GeneralWeights::from_product(inv_sq.prefix(2));
        const auto box = worst_case_error_bruteforce(z, 2.0, w, 200);
        const double fast = worst_case_error(z, 2.0, inv_sq.prefix(2));
        worst = std::max(worst, std::abs(fast - box.value) - box.tail_bound);
      }
    }
    checks.push_back(at_most("wce minus brute force beyond tail bound", worst, 1e-12, "derived"));
  }
  {
    const GeneratingVector z(1024, {1, 433, 229, 283, 405, 87});
    const double a = worst_case_error(z, 2.0, inv_sq.prefix(6));
    const double b = worst_case_error(z, 2.0, GeneralWeights::from_product(inv_sq.prefix(6)));
    checks.push_back(at_most("wce product vs general weights rel diff", std::abs(a - b) / a, 1e-12, "derived"));
  }
  {
    double worst = 0.0;
    for (double alpha : {2.0, 3.0, 4.0}) {
      const u64 N = 64;
      const auto table = fourier_decay_table(alpha, N);
      for (u64 k = 0; k < N; ++k) {
        const double direct = fourier_decay_sum(alpha, static_cast<double>(k) / N);
        worst = std::max(worst, std::abs(table[k] - direct) / std::max(1.0, std::abs(direct)));
      }
    }
    checks.push_back(at_most("decay table vs scalar sum", worst, 1e-10, "derived"));
  }
  {
    double worst = 0.0;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t len : {7, 100, 128, 257}) {
      std::vector<double> a(len), b(len);
      for (auto& x : a) x = u(rng);
      for (auto& x : b) x = u(rng);
      const auto fa = cyclic_convolution(a, b);
      const auto na = cyclic_convolution_naive(a, b);
      for (std::size_t i = 0; i < len; ++i) worst = std::max(worst, std::abs(fa[i] - na[i]));
    }
    checks.push_back(at_most("fft convolution vs naive abs diff", worst, 1e-11, "derived"));
  }
  {
    double worst = 0.0;
    for (u64 N = 2; N <= 4096; N = N * 3 / 2 + 1) {
      CompensatedSum acc;
      for (u64 k = 1; k < N; ++k) acc += std::log(2.0 * std::sin(M_PI * static_cast<double>(k) / N));
      worst = std::max(worst, std::abs(acc.value() - std::log(static_cast<double>(N))));
    }
    checks.push_back(at_most("log-sine product identity", worst, 1e-9, "derived"));
  }

  auto out = open_out(csv);
  out << "check,value,limit,relation,passed\n";
  for (const auto& c : checks) {
    out << c.name << "," << format_double(c.value) << "," << format_double(c.limit) << "," << c.relation << ","
        << (c.passed ? "true" : "false") << "\n";
  }
  if (log != nullptr) *log << "oracle suite: " << checks.size() << " checks\n";
  return checks;
}

}  // namespace

bool ExperimentReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{"fig2a", "fig2b", "fig2c", "fig2d", "fig3a",
                                            "fig3b", "fig3c", "fig3d", "table1-shape", "oracle-suite"};
  return ids;
}

ExperimentReport run_experiment(const std::string& id, const std::filesystem::path& out_dir, std::ostream* log) {
  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw UsageError("unknown experiment '" + id + "'");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  ExperimentReport report;
  report.id = id;
  const auto t0 = Clock::now();
  const auto csv = out_dir / (id + ".csv");
  if (id == "table1-shape") {
    report.checks = run_table_shape(csv, log);
  } else if (id == "oracle-suite") {
    report.checks = run_oracle_suite(csv, log);
  } else {
    const auto it = std::find_if(figures.begin(), figures.end(), [&](const FigureSpec& f) { return id == f.id; });
    report.checks = run_figure(*it, csv, log);
  }
  report.seconds = std::chrono::duration<double>(Clock::now() - t0).count();

  auto out = open_out(out_dir / (id + ".report.json"));
  write_report_json(out, report);
  return report;
}

void write_report_json(std::ostream& out, const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["id"] = report.id;
  j["passed"] = report.passed();
  j["seconds"] = report.seconds;
  j["csv"] = report.id + ".csv";
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    arr.push_back({{"name", c.name},
                   {"value", c.value},
                   {"relation", c.relation},
                   {"limit", c.limit},
                   {"source", c.source},
                   {"passed", c.passed}});
  }
  out << j.dump(2) << "\n";
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("loglog_slope needs two or more points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ScalingFit fit_proportional(std::span<const double> work, std::span<const double> t) {
  if (work.empty() || work.size() != t.size()) throw std::invalid_argument("fit_proportional: size mismatch");
  double log_c = 0.0;
  for (std::size_t i = 0; i < work.size(); ++i) log_c += std::log(t[i] / work[i]);
  log_c /= static_cast<double>(work.size());
  ScalingFit fit;
  fit.constant = std::exp(log_c);
  for (std::size_t i = 0; i < work.size(); ++i)
    fit.max_deviation = std::max(fit.max_deviation, std::exp(std::abs(std::log(t[i] / work[i]) - log_c)));
  return fit;
}

}  // namespace latgen::tools
