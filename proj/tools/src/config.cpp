#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "radial/errors.hpp"
#include "radial_cli/cli.hpp"

namespace radial::cli {
namespace {

using nlohmann::json;

const std::set<std::string> kCommands = {"sample", "fit",  "kl",        "rate",
                                         "symmetry", "net", "sweep-dim", "check"};

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  std::vector<std::string> unknown;
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) unknown.push_back(key);
  }
  if (unknown.empty()) return;
  std::string list;
  for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
  throw ConfigError("unknown " + where + "key(s): " + list);
}

double as_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field + " must be finite");
  return v;
}

std::uint64_t as_count(const json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<std::uint64_t>();
  throw ConfigError(field + " must be a nonnegative integer");
}

std::string as_string(const json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field + " must be a string");
  return j.get<std::string>();
}

std::vector<double> as_number_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field + " must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

double parse_double(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(field + ": '" + text + "' is not a number");
  }
}

std::uint64_t parse_count(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text[0] == '-') throw std::invalid_argument(text);
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(field + ": '" + text + "' is not a nonnegative integer");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

Manifold parse_manifold_json(const json& j, const std::string& field) {
  try {
    if (j.is_string()) return Manifold::parse(j.get<std::string>());
    if (!j.is_object()) throw ConfigError(field + " must be a string or an object");
    const std::string kind = as_string(j.value("kind", json()), field + ".kind");
    if (kind == "product") {
      reject_unknown(j, {"kind", "factors"}, field + " ");
      if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].size() < 2) {
        throw ConfigError(field + ".factors must list at least 2 manifolds");
      }
      std::vector<Manifold> factors;
      for (std::size_t i = 0; i < j["factors"].size(); ++i) {
        factors.push_back(
            parse_manifold_json(j["factors"][i], field + ".factors[" + std::to_string(i) + "]"));
      }
      return Manifold::product(std::move(factors));
    }
    const std::string size_key = kind == "spd" ? "n" : "m";
    reject_unknown(j, {"kind", size_key}, field + " ");
    if (!j.contains(size_key)) throw ConfigError(field + "." + size_key + " is required");
    const int size = static_cast<int>(as_count(j[size_key], field + "." + size_key));
    if (kind == "euclidean") return Manifold::euclidean(size);
    if (kind == "sphere") return Manifold::sphere(size);
    if (kind == "hyperbolic") return Manifold::hyperbolic(size);
    if (kind == "spd") return Manifold::spd(size);
    throw ConfigError(field + ".kind: unknown manifold '" + kind + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field + ": " + e.what());
  }
}

ProfileSpec parse_profile_text(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty() || parts.size() > 3) {
    throw ConfigError("profile: expected kind:beta[:p], got '" + text + "'");
  }
  ProfileSpec spec;
  try {
    spec.kind = parse_profile_kind(parts[0]);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("profile.kind: ") + e.what());
  }
  if (parts.size() >= 2) spec.beta = parse_double(parts[1], "profile.beta");
  if (parts.size() == 3) spec.p = parse_double(parts[2], "profile.p");
  return spec;
}

ProfileSpec parse_profile_json(const json& j) {
  if (j.is_string()) return parse_profile_text(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("profile must be a string or an object");
  reject_unknown(j, {"kind", "beta", "p", "path"}, "profile ");
  ProfileSpec spec;
  try {
    spec.kind = parse_profile_kind(as_string(j.value("kind", json()), "profile.kind"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("profile.kind: ") + e.what());
  }
  if (j.contains("beta")) spec.beta = as_number(j["beta"], "profile.beta");
  if (j.contains("p")) spec.p = as_number(j["p"], "profile.p");
  if (j.contains("path")) spec.csv = as_string(j["path"], "profile.path");
  return spec;
}

void validate_profile(const ProfileSpec& spec) {
  if (!(spec.beta > 0.0)) throw ConfigError("profile.beta must be > 0");
  if (spec.kind == ProfileKind::kPower && (!spec.p || !(*spec.p > 1.0))) {
    throw ConfigError("profile.p must be > 1 for the power profile");
  }
  if (spec.kind != ProfileKind::kPower && spec.p) {
    throw ConfigError("profile.p is only valid for the power profile");
  }
  if (spec.kind == ProfileKind::kCustom) {
    if (!spec.csv) throw ConfigError("profile.path is required for a custom profile");
    if (!std::filesystem::is_regular_file(*spec.csv)) {
      throw ConfigError("profile.path: file not found: " + spec.csv->string());
    }
  } else if (spec.csv) {
    throw ConfigError("profile.path is only valid for a custom profile");
  }
}

void require(bool present, const std::string& command, const std::string& field) {
  if (!present) throw ConfigError(command + ": " + field + " is required");
}

void validate(ExperimentConfig& cfg) {
  if (cfg.command.empty()) throw ConfigError("command is required");
  if (!kCommands.count(cfg.command)) throw ConfigError("unknown command '" + cfg.command + "'");
  const std::string& c = cfg.command;
  if (cfg.profile) {
    validate_profile(*cfg.profile);
    // Surfaces table errors (file:line) at parse time.
    try {
      (void)cfg.profile->build();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (cfg.input && !std::filesystem::is_regular_file(*cfg.input)) {
    throw IoError("input: file not found: " + cfg.input->string());
  }
  const auto need_manifold_profile = [&] {
    require(cfg.manifold.has_value(), c, "manifold");
    require(cfg.profile.has_value(), c, "profile");
  };
  const auto check_t_grid = [&](double lo, double hi) {
    require(!cfg.t_grid.empty(), c, "t_grid");
    for (double t : cfg.t_grid) {
      if (!(t >= lo) || !(t <= hi)) {
        std::ostringstream os;
        os << "t_grid values must lie in [" << lo << ", " << hi << "]";
        throw ConfigError(os.str());
      }
    }
  };
  if (c == "sample") {
    need_manifold_profile();
    require(cfg.n.has_value(), c, "n");
  } else if (c == "fit") {
    require(cfg.input.has_value(), c, "input");
  } else if (c == "kl") {
    need_manifold_profile();
    check_t_grid(1e-12, 0.2);
    if (cfg.t_grid.size() < 3) throw ConfigError("t_grid needs at least 3 values for a slope");
  } else if (c == "symmetry") {
    need_manifold_profile();
    check_t_grid(0.0, 1e6);
  } else if (c == "rate") {
    need_manifold_profile();
    require(!cfg.n_grid.empty(), c, "n_grid");
    require(cfg.replicates.has_value(), c, "replicates");
    if (*cfg.replicates == 0) throw ConfigError("replicates must be > 0");
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
      if (cfg.n_grid[i] == 0 || (i > 0 && cfg.n_grid[i] <= cfg.n_grid[i - 1])) {
        throw ConfigError("n_grid must be positive and strictly increasing");
      }
    }
  } else if (c == "net") {
    require(cfg.manifold.has_value(), c, "manifold");
    require(cfg.radius.has_value(), c, "radius");
    if (cfg.manifold->kind() != ManifoldKind::kSphere) throw ConfigError("net: manifold must be a sphere");
    if (cfg.center.has_value() != cfg.ball_radius.has_value()) {
      throw ConfigError("net: center and ball_radius must be given together");
    }
    if (cfg.ball_radius && !(*cfg.ball_radius > 0.0)) throw ConfigError("ball_radius must be > 0");
  } else if (c == "sweep-dim") {
    require(!cfg.m_list.empty(), c, "m_list");
    require(cfg.n.has_value(), c, "n");
    require(cfg.replicates.has_value(), c, "replicates");
    if (*cfg.replicates == 0) throw ConfigError("replicates must be > 0");
    if (*cfg.n == 0) throw ConfigError("n must be > 0");
    for (int m : cfg.m_list) {
      if (m < 2 || m > 32) throw ConfigError("m_list values must lie in [2, 32]");
    }
    if (cfg.profile && cfg.profile->kind != ProfileKind::kVonMisesFisher) {
      throw ConfigError("sweep-dim: profile must be vmf");
    }
  } else if (c == "check") {
    need_manifold_profile();
  }
  if (cfg.radius && !(*cfg.radius > 0.0)) throw ConfigError("radius must be > 0");
  if (cfg.bounds && !(cfg.bounds->first > 0.0 && cfg.bounds->second > cfg.bounds->first)) {
    throw ConfigError("bounds must satisfy 0 < lo < hi");
  }
}

}  // namespace

RadialProfile ProfileSpec::build() const {
  if (kind == ProfileKind::kCustom) {
    if (!csv) throw ConfigError("profile.path is required for a custom profile");
    return RadialProfile::custom_from_csv(*csv, beta);
  }
  return RadialProfile::make(kind, beta, p);
}

ExperimentConfig parse_config_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"command", "manifold", "profile", "n", "n_grid", "replicates", "t_grid",
                  "radius", "mode", "center", "ball_radius", "bounds", "estimate_beta", "m_list",
                  "seed", "input", "output", "format"},
                 "config ");
  ExperimentConfig cfg;
  if (j.contains("command")) cfg.command = as_string(j["command"], "command");
  if (j.contains("manifold")) cfg.manifold = parse_manifold_json(j["manifold"], "manifold");
  if (j.contains("profile")) cfg.profile = parse_profile_json(j["profile"]);
  if (j.contains("n")) cfg.n = as_count(j["n"], "n");
  if (j.contains("n_grid")) {
    if (!j["n_grid"].is_array()) throw ConfigError("n_grid must be an array of integers");
    for (std::size_t i = 0; i < j["n_grid"].size(); ++i) {
      cfg.n_grid.push_back(as_count(j["n_grid"][i], "n_grid[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("replicates")) cfg.replicates = as_count(j["replicates"], "replicates");
  if (j.contains("t_grid")) cfg.t_grid = as_number_list(j["t_grid"], "t_grid");
  if (j.contains("radius")) cfg.radius = as_number(j["radius"], "radius");
  if (j.contains("mode")) {
    const std::string mode = as_string(j["mode"], "mode");
    if (mode == "cover") {
      cfg.mode = NetMode::kCover;
    } else if (mode == "pack") {
      cfg.mode = NetMode::kPack;
    } else {
      throw ConfigError("mode must be 'cover' or 'pack'");
    }
  }
  if (j.contains("center")) cfg.center = as_number_list(j["center"], "center");
  if (j.contains("ball_radius")) cfg.ball_radius = as_number(j["ball_radius"], "ball_radius");
  if (j.contains("bounds")) {
    const auto b = as_number_list(j["bounds"], "bounds");
    if (b.size() != 2) throw ConfigError("bounds must be [lo, hi]");
    cfg.bounds = std::make_pair(b[0], b[1]);
  }
  if (j.contains("estimate_beta")) {
    if (!j["estimate_beta"].is_boolean()) throw ConfigError("estimate_beta must be a boolean");
    cfg.estimate_beta = j["estimate_beta"].get<bool>();
  }
  if (j.contains("m_list")) {
    if (!j["m_list"].is_array()) throw ConfigError("m_list must be an array of integers");
    for (std::size_t i = 0; i < j["m_list"].size(); ++i) {
      cfg.m_list.push_back(
          static_cast<int>(as_count(j["m_list"][i], "m_list[" + std::to_string(i) + "]")));
    }
  }
  if (j.contains("seed")) cfg.seed = as_count(j["seed"], "seed");
  if (j.contains("input")) cfg.input = as_string(j["input"], "input");
  if (j.contains("output")) cfg.output = as_string(j["output"], "output");
  if (j.contains("format")) {
    const std::string f = as_string(j["format"], "format");
    if (f == "json") {
      cfg.format = Format::kJson;
    } else if (f == "csv") {
      cfg.format = Format::kCsv;
    } else {
      throw ConfigError("format must be 'json' or 'csv'");
    }
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"radial: Riemannian radial distributions"};
  std::string command;
  std::string config_path;
  std::string manifold;
  std::string profile;
  std::string profile_csv;
  std::string n;
  std::string n_grid;
  std::string replicates;
  std::string t_grid;
  std::string radius;
  std::string mode;
  std::string center;
  std::string ball_radius;
  std::string bounds;
  bool estimate_beta = false;
  std::string m_list;
  std::string seed;
  std::string input;
  std::string output;
  std::string format;
  app.add_option("command", command, "sample|fit|kl|rate|symmetry|net|sweep-dim|check");
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--manifold", manifold, "e.g. sphere:2, product(sphere:2,hyperbolic:2)");
  app.add_option("--profile", profile, "kind:beta[:p], e.g. vmf:1.0");
  app.add_option("--profile-csv", profile_csv, "r,phi table for a custom profile");
  app.add_option("--n", n, "sample size");
  app.add_option("--n-grid", n_grid, "comma-separated sample sizes");
  app.add_option("--replicates", replicates, "replicates per grid cell");
  app.add_option("--t-grid", t_grid, "comma-separated geodesic offsets");
  app.add_option("--radius", radius, "net radius");
  app.add_option("--mode", mode, "cover|pack");
  app.add_option("--center", center, "comma-separated ambient coordinates");
  app.add_option("--ball-radius", ball_radius, "net region ball radius");
  app.add_option("--bounds", bounds, "beta_lo,beta_hi");
  app.add_flag("--estimate-beta", estimate_beta, "also estimate the temperature");
  app.add_option("--m-list", m_list, "comma-separated sphere dimensions");
  app.add_option("--seed", seed, "u64 seed (default 42)");
  app.add_option("--input", input, "input SampleSet CSV");
  app.add_option("--out", output, "output path");
  app.add_option("--format", format, "json|csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  json j = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("config: cannot open " + config_path);
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config: invalid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
  }
  const auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("command")) j["command"] = command;
  if (given("--manifold")) j["manifold"] = manifold;
  if (given("--profile")) {
    const ProfileSpec spec = parse_profile_text(profile);
    json pj = {{"kind", to_string(spec.kind)}, {"beta", spec.beta}};
    if (spec.p) pj["p"] = *spec.p;
    j["profile"] = pj;
  }
  if (given("--profile-csv")) {
    if (!j.contains("profile")) j["profile"] = {{"kind", "custom"}};
    if (j["profile"].is_string()) {
      const ProfileSpec spec = parse_profile_text(j["profile"].get<std::string>());
      j["profile"] = {{"kind", to_string(spec.kind)}, {"beta", spec.beta}};
    }
    j["profile"]["path"] = profile_csv;
  }
  if (given("--n")) j["n"] = parse_count(n, "n");
  if (given("--n-grid")) {
    j["n_grid"] = json::array();
    for (const auto& s : split(n_grid, ',')) j["n_grid"].push_back(parse_count(s, "n_grid"));
  }
  if (given("--replicates")) j["replicates"] = parse_count(replicates, "replicates");
  if (given("--t-grid")) {
    j["t_grid"] = json::array();
    for (const auto& s : split(t_grid, ',')) j["t_grid"].push_back(parse_double(s, "t_grid"));
  }
  if (given("--radius")) j["radius"] = parse_double(radius, "radius");
  if (given("--mode")) j["mode"] = mode;
  if (given("--center")) {
    j["center"] = json::array();
    for (const auto& s : split(center, ',')) j["center"].push_back(parse_double(s, "center"));
  }
  if (given("--ball-radius")) j["ball_radius"] = parse_double(ball_radius, "ball_radius");
  if (given("--bounds")) {
    const auto parts = split(bounds, ',');
    if (parts.size() != 2) throw ConfigError("bounds: expected lo,hi");
    j["bounds"] = {parse_double(parts[0], "bounds"), parse_double(parts[1], "bounds")};
  }
  if (estimate_beta) j["estimate_beta"] = true;
  if (given("--m-list")) {
    j["m_list"] = json::array();
    for (const auto& s : split(m_list, ',')) j["m_list"].push_back(parse_count(s, "m_list"));
  }
  if (given("--seed")) j["seed"] = parse_count(seed, "seed");
  if (given("--input")) j["input"] = input;
  if (given("--out")) j["output"] = output;
  if (given("--format")) j["format"] = format;
  return parse_config_json(j);
}

}  // namespace radial::cli
