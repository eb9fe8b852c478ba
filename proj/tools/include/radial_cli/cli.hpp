#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "radial/distribution.hpp"
#include "radial/nets.hpp"

namespace radial::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitNonConvergence = 3,
  kExitIo = 4,
};

/// Invalid configuration or input data (exit 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Read or write failure (exit 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was requested; what() holds the usage text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kJson, kCsv };

struct ProfileSpec {
  ProfileKind kind = ProfileKind::kGaussian;
  double beta = 1.0;
  std::optional<double> p;
  std::optional<std::filesystem::path> csv;

  RadialProfile build() const;
};

struct ExperimentConfig {
  std::string command;
  std::optional<Manifold> manifold;
  std::optional<ProfileSpec> profile;
  std::optional<std::size_t> n;
  std::vector<std::size_t> n_grid;
  std::optional<std::size_t> replicates;
  std::vector<double> t_grid;
  std::optional<double> radius;
  NetMode mode = NetMode::kCover;
  std::optional<std::vector<double>> center;  // net ball center or rate alpha
  std::optional<double> ball_radius;
  std::optional<std::pair<double, double>> bounds;
  bool estimate_beta = false;
  std::vector<int> m_list;
  std::uint64_t seed = 42;
  std::optional<std::filesystem::path> input;
  std::optional<std::filesystem::path> output;
  Format format = Format::kJson;
};

/// Validates a JSON config object. Unknown keys are rejected.
ExperimentConfig parse_config_json(const nlohmann::json& j);

/// Parses command-line arguments (without the program name): an optional
/// positional command, --config <path>, and per-field overrides.
ExperimentConfig parse_config(const std::vector<std::string>& args);

/// Reads a SampleSet CSV; every row is re-validated against the manifold.
SampleSet read_sampleset(const std::filesystem::path& path);
void write_sampleset(const SampleSet& samples, const std::filesystem::path& path);
std::string format_sampleset(const SampleSet& samples);

struct Report {
  nlohmann::json json;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
};

std::string render_report(const Report& report, Format format);

/// Writes via a temporary file and rename; the parent directory must exist.
void write_report(const Report& report, const std::filesystem::path& path, Format format);
void write_text_atomic(const std::string& text, const std::filesystem::path& path);

/// Executes a validated config. Artifacts go to cfg.output, or to out when
/// no output path is set. Returns the exit code.
int run_command(const ExperimentConfig& cfg, std::ostream& out);

/// parse_config + run_command with exceptions mapped to exit codes.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace radial::cli
