#include "latgen/tools/formats.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace latgen::tools {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

u64 parse_unsigned(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("invalid " + what + ": '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw UsageError("invalid " + what + ": '" + text + "'");
  }
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("invalid " + what + ": '" + text + "'");
  }
  if (used != text.size()) throw UsageError("invalid " + what + ": '" + text + "'");
  return v;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

// Non-empty lines with '#' comments stripped.
std::vector<std::string> content_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::string expect_key(const std::string& line, const std::string& key) {
  const std::string prefix = key + "=";
  if (line.rfind(prefix, 0) != 0) throw UsageError("vector file: expected '" + prefix + "<int>', got '" + line + "'");
  return trim(line.substr(prefix.size()));
}

}  // namespace

GeneratingVector parse_vector(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "# latgen v1") {
    throw UsageError("vector file: first line must be '# latgen v1'");
  }
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.size() < 2) throw UsageError("vector file: missing N= or s= line");
  const u64 N = parse_unsigned(expect_key(lines[0], "N"), "N");
  const u64 s = parse_unsigned(expect_key(lines[1], "s"), "s");
  if (lines.size() != s + 2) {
    throw UsageError("vector file: s=" + std::to_string(s) + " but " + std::to_string(lines.size() - 2) +
                     " component lines");
  }
  std::vector<u64> z(s);
  for (u64 j = 1; j <= s; ++j) {
    std::istringstream row(lines[j + 1]);
    std::string idx, val, extra;
    if (!(row >> idx >> val) || (row >> extra)) throw UsageError("vector file: bad component line '" + lines[j + 1] + "'");
    if (parse_unsigned(idx, "component index") != j) {
      throw UsageError("vector file: expected component " + std::to_string(j) + ", got '" + idx + "'");
    }
    z[j - 1] = parse_unsigned(val, "component value");
  }
  try {
    return GeneratingVector(N, std::move(z));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("vector file: ") + e.what());
  }
}

GeneratingVector read_vector_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_vector(in);
}

void write_vector(std::ostream& out, const GeneratingVector& z) {
  out << "# latgen v1\n";
  out << "N=" << z.modulus() << "\n";
  out << "s=" << z.dims() << "\n";
  for (std::size_t j = 0; j < z.dims(); ++j) out << (j + 1) << " " << z[j] << "\n";
}

void write_vector_file(const std::filesystem::path& path, const GeneratingVector& z) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_vector(out, z);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

WeightSpec parse_weight_spec(const std::string& text) {
  WeightSpec spec;
  spec.id = text;
  if (text == "product:1/j^2") {
    spec.kind = WeightSpec::Kind::inverse_square;
  } else if (text == "product:1/j^3") {
    spec.kind = WeightSpec::Kind::inverse_cube;
  } else if (text.rfind("product:c^j:", 0) == 0) {
    spec.kind = WeightSpec::Kind::geometric;
    spec.parameter = parse_real(text.substr(12), "geometric weight base");
    if (!(spec.parameter >= 0.0)) throw UsageError("geometric weight base must be non-negative");
  } else if (text.rfind("product:list:", 0) == 0) {
    spec.kind = WeightSpec::Kind::list;
    auto in = open_input(text.substr(13));
    for (const auto& line : content_lines(in)) {
      const double g = parse_real(line, "weight");
      if (!(g >= 0.0)) throw UsageError("weights must be non-negative, got '" + line + "'");
      spec.list.push_back(g);
    }
  } else if (text.rfind("general:", 0) == 0) {
    spec.kind = WeightSpec::Kind::general_table;
    auto in = open_input(text.substr(8));
    for (const auto& line : content_lines(in)) {
      std::istringstream row(line);
      std::string subset, value, extra;
      if (!(row >> subset >> value) || (row >> extra)) throw UsageError("general weights: bad line '" + line + "'");
      std::vector<std::size_t> u;
      std::stringstream parts(subset);
      std::string part;
      while (std::getline(parts, part, ',')) {
        const u64 j = parse_unsigned(part, "subset index");
        if (j < 1 || j > GeneralWeights::max_dims) throw UsageError("general weights: index out of range in '" + line + "'");
        u.push_back(j);
        spec.table_dims = std::max<std::size_t>(spec.table_dims, j);
      }
      const double g = parse_real(value, "weight");
      if (!(g >= 0.0)) throw UsageError("weights must be non-negative, got '" + line + "'");
      spec.table[subset_mask(u)] = g;
    }
  } else {
    throw UsageError("unknown weight spec '" + text +
                     "' (expected product:1/j^2, product:1/j^3, product:c^j:<c>, product:list:<path> or general:<path>)");
  }
  return spec;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace latgen::tools
