#include "latgen/tools/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "latgen/latgen.hpp"
#include "latgen/tools/experiments.hpp"
#include "latgen/tools/formats.hpp"
#include "latgen/tools/sweep.hpp"

namespace latgen::tools {

namespace {

constexpr int exit_io = 1;
constexpr int exit_usage = 2;
constexpr int exit_checks = 3;

struct ConstructArgs {
  std::string algo;
  std::optional<unsigned> bits;
  std::optional<u64> modulus;
  std::size_t s = 0;
  std::string weights;
  std::optional<double> alpha;
  std::string out;
};

struct ErrorArgs {
  std::string vector;
  double alpha = 0.0;
  std::string weights;
  bool apply_power = false;
  bool with_t = false;
  bool with_bounds = false;
  std::string format = "text";
};

struct SweepArgs {
  std::string algo;
  std::string weights;
  std::string alphas;
  std::size_t s = 0;
  std::string n_range;
  std::string prime_range;
  std::string out;
};

struct PointsArgs {
  std::string vector;
  std::optional<u64> limit;
  std::string out;
};

struct ExperimentArgs {
  std::string id;
  std::string out_dir = ".";
};

std::pair<unsigned, unsigned> parse_bit_range(const std::string& text) {
  static const std::regex pattern(R"(^\s*(\d+)\s*\.\.\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw UsageError("expected a range a..b, got '" + text + "'");
  const unsigned long a = std::stoul(m[1]);
  const unsigned long b = std::stoul(m[2]);
  if (a > b) throw UsageError("empty range " + text);
  if (a < 1 || b > 40) throw UsageError("range bounds must lie in 1..40");
  return {static_cast<unsigned>(a), static_cast<unsigned>(b)};
}

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("invalid alpha '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw UsageError("invalid alpha '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty alpha list");
  return out;
}

// Writes to the named file, or to the fallback stream when the name is empty.
template <class F>
void emit(const std::string& path, std::ostream& fallback, F&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw IoError("write to '" + path + "' failed");
}

void cmd_construct(const ConstructArgs& a, std::ostream& out) {
  const Algorithm algo = parse_algorithm(a.algo);
  if (a.bits.has_value() == a.modulus.has_value()) throw UsageError("give exactly one of --n and --N");
  if (a.bits && (*a.bits < 1 || *a.bits > 40)) throw UsageError("--n must lie in 1..40");
  const u64 N = a.bits ? (u64{1} << *a.bits) : *a.modulus;
  if (a.alpha && algo != Algorithm::std_cbc) throw UsageError("--alpha only applies to std-cbc");
  if (!a.alpha && algo == Algorithm::std_cbc) throw UsageError("std-cbc needs --alpha");
  const Weights w = parse_weight_spec(a.weights).resolve(a.s);
  const auto z = construct(algo, N, a.s, w, a.alpha.value_or(0.0));
  emit(a.out, out, [&](std::ostream& o) { write_vector(o, z); });
}

void cmd_error(const ErrorArgs& a, std::ostream& out) {
  if (a.format != "text" && a.format != "json" && a.format != "csv") {
    throw UsageError("--format must be text, json or csv");
  }
  if (!(a.alpha > 1.0)) throw UsageError("--alpha must exceed 1");
  const auto z = read_vector_file(a.vector);
  const Weights base = parse_weight_spec(a.weights).resolve(z.dims());
  const Weights used =
      a.apply_power ? std::visit([&](const auto& w) -> Weights { return power_weights(w, a.alpha); }, base) : base;

  std::vector<std::pair<std::string, std::string>> fields;
  fields.emplace_back("N", std::to_string(z.modulus()));
  fields.emplace_back("s", std::to_string(z.dims()));
  fields.emplace_back("alpha", format_double(a.alpha));
  fields.emplace_back("wce", format_double(worst_case_error(z, a.alpha, used)));
  if (a.with_t) {
    const double t = std::visit([&](const auto& w) { return truncated_dual_sum(z, w); }, base);
    fields.emplace_back("T", format_double(t));
  }
  if (a.with_bounds) {
    const u64 N = z.modulus();
    const auto* product = std::get_if<ProductWeights>(&base);
    if (is_power_of_two(N) && product != nullptr) {
      fields.emplace_back("bound_cbcdbd", format_double(bound_cbc_dbd(N, *product)));
    } else if (is_prime(N)) {
      const double b = std::visit([&](const auto& w) { return bound_korobov_cbc(N, w); }, base);
      fields.emplace_back("bound_cbc", format_double(b));
    } else {
      throw UsageError("--with-bounds needs N prime, or N = 2^n with product weights");
    }
  }

  if (a.format == "text") {
    for (const auto& [k, v] : fields) out << k << " = " << v << "\n";
  } else if (a.format == "csv") {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].first;
    out << "\n";
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].second;
    out << "\n";
  } else {
    out << "{";
    for (std::size_t i = 0; i < fields.size(); ++i) {
      out << (i ? ", " : "") << "\"" << fields[i].first << "\": " << fields[i].second;
    }
    out << "}\n";
  }
}

void cmd_sweep(const SweepArgs& a, std::ostream& out) {
  SweepConfig cfg;
  cfg.algorithm = parse_algorithm(a.algo);
  cfg.weights = parse_weight_spec(a.weights);
  cfg.alphas = parse_alpha_list(a.alphas);
  cfg.s = a.s;
  cfg.threads = thread_count_from_env();
  if (a.n_range.empty() == a.prime_range.empty()) throw UsageError("give exactly one of --n-range and --prime-near-pow2");
  const bool primes = !a.prime_range.empty();
  const auto [lo, hi] = parse_bit_range(primes ? a.prime_range : a.n_range);
  for (unsigned n = lo; n <= hi; ++n) {
    const u64 N = u64{1} << n;
    cfg.moduli.push_back(primes ? prev_prime(N) : N);
  }
  if (primes && cfg.moduli.front() < 2) throw UsageError("no prime below 2^" + std::to_string(lo));
  const auto rows = run_sweep(cfg);
  emit(a.out, out, [&](std::ostream& o) { write_sweep_csv(o, rows); });
}

void cmd_points(const PointsArgs& a, std::ostream& out) {
  const auto z = read_vector_file(a.vector);
  const u64 count = std::min(z.modulus(), a.limit.value_or(z.modulus()));
  emit(a.out, out, [&](std::ostream& o) {
    std::string line;
    for (u64 k = 0; k < count; ++k) {
      line.clear();
      const auto x = lattice_point(z, k);
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (j) line += '\t';
        line += format_double(x[j]);
      }
      line += '\n';
      o << line;
    }
  });
}

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  const auto report = run_experiment(a.id, a.out_dir);
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name << ": " << format_double(c.value) << " " << c.relation << " "
        << format_double(c.limit) << " (" << c.source << ")\n";
  }
  out << report.id << ": " << (report.passed() ? "PASS" : "FAIL") << "\n";
  return report.passed() ? 0 : exit_checks;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-1 lattice rule generating vectors", "latgen"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "Build a generating vector");
  construct_cmd->add_option("--algo", ca.algo, "cbc-dbd, korobov-cbc or std-cbc")->required();
  construct_cmd->add_option("--n", ca.bits, "log2 of the modulus");
  construct_cmd->add_option("--N", ca.modulus, "Modulus");
  construct_cmd->add_option("--s", ca.s, "Dimension")->required()->check(CLI::PositiveNumber);
  construct_cmd->add_option("--weights", ca.weights, "Weight spec")->required();
  construct_cmd->add_option("--alpha", ca.alpha, "Smoothness (std-cbc)");
  construct_cmd->add_option("--out", ca.out, "Output file (default stdout)");

  ErrorArgs ea;
  auto* error_cmd = app.add_subcommand("error", "Evaluate a generating vector");
  error_cmd->add_option("--vector", ea.vector, "Vector file")->required();
  error_cmd->add_option("--alpha", ea.alpha, "Smoothness")->required();
  error_cmd->add_option("--weights", ea.weights, "Weight spec")->required();
  error_cmd->add_flag("--apply-power", ea.apply_power, "Evaluate with gamma^alpha");
  error_cmd->add_flag("--with-T", ea.with_t, "Also report T");
  error_cmd->add_flag("--with-bounds", ea.with_bounds, "Also report the construction bound on T");
  error_cmd->add_option("--format", ea.format, "text, json or csv");

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "Worst-case error over a range of moduli");
  sweep_cmd->add_option("--algo", sa.algo, "cbc-dbd, korobov-cbc or std-cbc")->required();
  sweep_cmd->add_option("--weights", sa.weights, "Weight spec")->required();
  sweep_cmd->add_option("--alpha-list", sa.alphas, "Comma-separated smoothness values")->required();
  sweep_cmd->add_option("--s", sa.s, "Dimension")->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--n-range", sa.n_range, "N = 2^a..2^b");
  sweep_cmd->add_option("--prime-near-pow2", sa.prime_range, "Largest prime below 2^a..2^b");
  sweep_cmd->add_option("--out", sa.out, "CSV file (default stdout)");

  PointsArgs pa;
  auto* points_cmd = app.add_subcommand("points", "Print the lattice points");
  points_cmd->add_option("--vector", pa.vector, "Vector file")->required();
  points_cmd->add_option("--limit", pa.limit, "Print only the first k points");
  points_cmd->add_option("--out", pa.out, "Output file (default stdout)");

  ExperimentArgs xa;
  auto* experiments_cmd = app.add_subcommand("experiments", "Pinned reproduction runs");
  experiments_cmd->require_subcommand(1);
  auto* run_cmd = experiments_cmd->add_subcommand("run", "Run one experiment");
  run_cmd->add_option("id", xa.id, "Experiment id")->required();
  run_cmd->add_option("--out-dir", xa.out_dir, "Directory for <id>.csv and <id>.report.json");
  auto* list_cmd = experiments_cmd->add_subcommand("list", "List experiment ids");

  std::vector<const char*> argv{"latgen"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_usage;
  }

  try {
    if (*construct_cmd) cmd_construct(ca, out);
    if (*error_cmd) cmd_error(ea, out);
    if (*sweep_cmd) cmd_sweep(sa, out);
    if (*points_cmd) cmd_points(pa, out);
    if (*list_cmd) {
      for (const auto& id : experiment_ids()) out << id << "\n";
    }
    if (*run_cmd) return cmd_experiment(xa, out);
    out.flush();
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return exit_io;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_io;
  }
}

}  // namespace latgen::tools
