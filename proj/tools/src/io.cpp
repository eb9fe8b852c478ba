#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "radial/errors.hpp"
#include "radial_cli/cli.hpp"

namespace radial::cli {
namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return fmt17(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::map<std::string, std::string> parse_header(const std::string& line) {
  std::map<std::string, std::string> out;
  std::istringstream ss(line.substr(1));
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    out[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return out;
}

}  // namespace

std::string format_sampleset(const SampleSet& samples) {
  const Manifold& m = samples.manifold;
  std::ostringstream os;
  os << "# manifold=" << m.kind_name() << " dim="
     << (m.kind() == ManifoldKind::kProduct ? m.dim() : m.parameter())
     << " profile=" << (samples.metadata.profile.empty() ? "none" : samples.metadata.profile)
     << " beta=" << fmt17(samples.metadata.beta) << " seed=" << samples.metadata.seed;
  if (!samples.metadata.source.empty()) os << " source=" << samples.metadata.source;
  if (samples.metadata.approximate) {
    os << " approximate=1 acceptance=" << fmt17(samples.metadata.acceptance_rate);
  }
  os << "\n";
  for (const Point& p : samples.points) {
    for (Eigen::Index k = 0; k < p.coords.size(); ++k) {
      if (k) os << ",";
      os << fmt17(p.coords[k]);
    }
    os << "\n";
  }
  return os.str();
}

void write_sampleset(const SampleSet& samples, const std::filesystem::path& path) {
  write_text_atomic(format_sampleset(samples), path);
}

SampleSet read_sampleset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open sample set");
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    have_header = line.rfind("# manifold=", 0) == 0;
    break;
  }
  if (!have_header) throw ConfigError(path.string() + ": missing manifold header");
  const auto header = parse_header(line);
  const auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = header.find(key);
    if (it == header.end()) return std::nullopt;
    return it->second;
  };
  const auto kind = get("manifold");
  const auto dim = get("dim");
  if (!kind || !dim) throw ConfigError(path.string() + ": missing manifold header");

  SampleSet out{Manifold::euclidean(1), {}, {}};
  try {
    out.manifold = kind->rfind("product(", 0) == 0 ? Manifold::parse(*kind)
                                                    : Manifold::parse(*kind + ":" + *dim);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path.string() + ": bad manifold header: " + e.what());
  }
  try {
    if (auto v = get("profile")) out.metadata.profile = *v;
    if (auto v = get("beta")) out.metadata.beta = std::stod(*v);
    if (auto v = get("seed")) out.metadata.seed = std::stoull(*v);
    if (auto v = get("source")) out.metadata.source = *v;
    if (auto v = get("approximate")) out.metadata.approximate = *v == "1";
    if (auto v = get("acceptance")) out.metadata.acceptance_rate = std::stod(*v);
  } catch (const std::exception&) {
    throw ConfigError(path.string() + ": malformed header value");
  }

  const int cols = out.manifold.ambient_size();
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line[0] == '#') continue;
    ++row;
    const std::string where = "row " + std::to_string(row) + ": ";
    Eigen::VectorXd x(cols);
    std::istringstream ss(line);
    std::string cell;
    int k = 0;
    while (std::getline(ss, cell, ',')) {
      if (k >= cols) throw ConfigError(where + "expected " + std::to_string(cols) + " columns");
      try {
        std::size_t used = 0;
        x[k] = std::stod(cell, &used);
        if (cell.find_first_not_of(" \t", used) != std::string::npos) {
          throw std::invalid_argument(cell);
        }
      } catch (const std::exception&) {
        throw ConfigError(where + "malformed number '" + cell + "'");
      }
      ++k;
    }
    if (k != cols) throw ConfigError(where + "expected " + std::to_string(cols) + " columns");
    Point p{std::move(x)};
    if (!out.manifold.contains(p)) throw ConfigError(where + "point off manifold");
    out.points.push_back(std::move(p));
  }
  return out;
}

std::string render_report(const Report& report, Format format) {
  if (format == Format::kJson) return report.json.dump(2) + "\n";
  if (report.columns.empty()) throw ConfigError("this command has no CSV table; use --format json");
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out += (i ? "," : "") + report.columns[i];
  }
  out += "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += "\n";
  }
  return out;
}

void write_report(const Report& report, const std::filesystem::path& path, Format format) {
  write_text_atomic(render_report(report, format), path);
}

void write_text_atomic(const std::string& text, const std::filesystem::path& path) {
  static std::atomic<unsigned> counter{0};
  const std::filesystem::path parent =
      path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  std::error_code ec;
  if (!std::filesystem::is_directory(parent, ec)) {
    throw IoError("output directory does not exist: " + parent.string());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    std::filesystem::remove(tmp, ignore);
    throw IoError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace radial::cli
