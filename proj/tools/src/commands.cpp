#include <cmath>
#include <ostream>

#include "radial/errors.hpp"
#include "radial/estimation.hpp"
#include "radial/experiments.hpp"
#include "radial_cli/cli.hpp"

namespace radial::cli {
namespace {

using nlohmann::json;

json quantiles_json(const Quantiles& q) {
  return {{"q25", q.q25}, {"median", q.median}, {"q75", q.q75}};
}

json fit_json(const SlopeFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}};
}

json coords_json(const Point& p) {
  json a = json::array();
  for (Eigen::Index k = 0; k < p.coords.size(); ++k) a.push_back(p.coords[k]);
  return a;
}

Point point_from(const Manifold& manifold, const std::vector<double>& coords,
                 const std::string& field) {
  if (static_cast<int>(coords.size()) != manifold.ambient_size()) {
    throw ConfigError(field + " must have " + std::to_string(manifold.ambient_size()) +
                      " coordinates");
  }
  Point p{Eigen::Map<const Eigen::VectorXd>(coords.data(), static_cast<Eigen::Index>(coords.size()))};
  if (!manifold.contains(p)) throw ConfigError(field + ": point off manifold");
  return p;
}

void emit(const Report& report, const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.output) {
    write_report(report, *cfg.output, cfg.format);
  } else {
    out << render_report(report, cfg.format);
  }
}

json header(const ExperimentConfig& cfg) {
  json j = {{"command", cfg.command}, {"seed", cfg.seed}};
  if (cfg.manifold) j["manifold"] = cfg.manifold->name();
  if (cfg.profile) j["profile"] = cfg.profile->build().name();
  return j;
}

int cmd_sample(const ExperimentConfig& cfg, std::ostream& out) {
  const Manifold& m = *cfg.manifold;
  const Point center = cfg.center ? point_from(m, *cfg.center, "center") : m.origin();
  const RadialDistribution dist(m, center, cfg.profile->build());
  const SampleSet s = dist.sample(*cfg.n, cfg.seed);
  if (cfg.output) {
    write_sampleset(s, *cfg.output);
  } else {
    out << format_sampleset(s);
  }
  return kExitOk;
}

int cmd_fit(const ExperimentConfig& cfg, std::ostream& out) {
  const SampleSet s = read_sampleset(*cfg.input);
  if (cfg.manifold && !(*cfg.manifold == s.manifold)) {
    throw ConfigError("manifold " + cfg.manifold->name() + " does not match the sample set (" +
                      s.manifold.name() + ")");
  }
  if (s.points.empty()) throw ConfigError("fit: sample set is empty");
  RadialProfile profile = RadialProfile::make(ProfileKind::kGaussian, 1.0);
  if (cfg.profile) {
    profile = cfg.profile->build();
  } else {
    const ProfileKind kind = parse_profile_kind(s.metadata.profile);
    if (kind == ProfileKind::kCustom || kind == ProfileKind::kPower) {
      throw ConfigError("fit: profile is required for " + s.metadata.profile + " samples");
    }
    profile = RadialProfile::make(kind, s.metadata.beta > 0.0 ? s.metadata.beta : 1.0);
  }
  const EstimationResult res = mle_location(s, profile);
  json j = header(cfg);
  j["manifold"] = s.manifold.name();
  j["profile"] = profile.name();
  j["alpha_hat"] = coords_json(res.alpha_hat);
  j["objective"] = res.objective;
  j["iterations"] = res.iterations;
  j["grad_norm"] = res.grad_norm;
  j["converged"] = res.converged;
  j["distance_to_init"] = res.distance_to_init;
  j["beta_hat"] = nullptr;
  bool ok = res.converged;
  if (cfg.estimate_beta || cfg.bounds) {
    const auto [lo, hi] = cfg.bounds.value_or(std::make_pair(1e-3, 1e3));
    const TemperatureResult t = mle_temperature(s, res.alpha_hat, profile, lo, hi);
    j["beta_hat"] = t.beta_hat;
    j["beta_at_boundary"] = t.at_boundary;
    ok = ok && !t.at_boundary;
  }
  Report report{j, {}, {}};
  report.columns = {"coordinate", "alpha_hat"};
  for (Eigen::Index k = 0; k < res.alpha_hat.coords.size(); ++k) {
    report.rows.push_back({k, res.alpha_hat.coords[k]});
  }
  emit(report, cfg, out);
  return ok ? kExitOk : kExitNonConvergence;
}

int cmd_kl(const ExperimentConfig& cfg, std::ostream& out) {
  const KlScan scan = kl_local_scan(*cfg.manifold, cfg.profile->build(), cfg.t_grid);
  Report report{header(cfg), {"t", "kl", "converged"}, {}};
  json rows = json::array();
  bool ok = true;
  for (const KlRow& r : scan.rows) {
    rows.push_back({{"t", r.t}, {"kl", r.kl}, {"converged", r.converged}});
    report.rows.push_back({r.t, r.kl, r.converged});
    ok = ok && r.converged;
  }
  report.json["rows"] = rows;
  report.json["fit"] = fit_json(scan.fit);
  emit(report, cfg, out);
  return ok ? kExitOk : kExitNonConvergence;
}

int cmd_symmetry(const ExperimentConfig& cfg, std::ostream& out) {
  const auto rows = symmetry_scan(*cfg.manifold, cfg.profile->build(), cfg.t_grid);
  Report report{header(cfg), {"t", "i_plus", "i_minus", "delta", "converged"}, {}};
  json arr = json::array();
  double max_delta = 0.0;
  bool ok = true;
  for (const SymmetryRow& r : rows) {
    arr.push_back({{"t", r.t}, {"i_plus", r.i_plus}, {"i_minus", r.i_minus}, {"delta", r.delta},
                   {"converged", r.converged}});
    report.rows.push_back({r.t, r.i_plus, r.i_minus, r.delta, r.converged});
    max_delta = std::max(max_delta, r.delta);
    ok = ok && r.converged;
  }
  report.json["rows"] = arr;
  report.json["max_delta"] = max_delta;
  emit(report, cfg, out);
  return ok ? kExitOk : kExitNonConvergence;
}

int cmd_rate(const ExperimentConfig& cfg, std::ostream& out) {
  const Manifold& m = *cfg.manifold;
  RateConfig rc{m,
                cfg.profile->build(),
                cfg.center ? point_from(m, *cfg.center, "center") : m.origin(),
                cfg.n_grid,
                *cfg.replicates,
                cfg.estimate_beta};
  if (cfg.bounds) {
    rc.beta_lo = cfg.bounds->first;
    rc.beta_hi = cfg.bounds->second;
  }
  rc.seed = cfg.seed;
  const RateReport r = run_rate_experiment(rc);
  Report report{header(cfg), {"n", "geodesic_q25", "geodesic_median", "geodesic_q75"}, {}};
  if (cfg.estimate_beta) {
    for (const char* c : {"combined_q25", "combined_median", "combined_q75"}) {
      report.columns.push_back(c);
    }
  }
  report.columns.push_back("failures");
  json rows = json::array();
  for (const RateRow& row : r.rows) {
    json jr = {{"n", row.n}, {"geodesic", quantiles_json(row.geodesic)}, {"failures", row.failures}};
    std::vector<json> cells = {row.n, row.geodesic.q25, row.geodesic.median, row.geodesic.q75};
    if (row.combined) {
      jr["combined"] = quantiles_json(*row.combined);
      jr["beta_error"] = quantiles_json(*row.beta_error);
      cells.insert(cells.end(), {row.combined->q25, row.combined->median, row.combined->q75});
    }
    cells.push_back(row.failures);
    rows.push_back(jr);
    report.rows.push_back(cells);
  }
  report.json["rows"] = rows;
  report.json["replicates"] = r.replicates;
  report.json["geodesic_fit"] = fit_json(r.geodesic_fit);
  if (r.combined_fit) report.json["combined_fit"] = fit_json(*r.combined_fit);
  report.json["failures"] = r.failures;
  report.json["flagged"] = r.flagged;
  emit(report, cfg, out);
  return r.flagged ? kExitNonConvergence : kExitOk;
}

int cmd_net(const ExperimentConfig& cfg, std::ostream& out) {
  const Manifold& m = *cfg.manifold;
  const NetRegion region = cfg.center
                               ? NetRegion::ball(point_from(m, *cfg.center, "center"), *cfg.ball_radius)
                               : NetRegion::full();
  const NetResult net = greedy_net(m, region, *cfg.radius, cfg.mode, cfg.seed);
  Report report{header(cfg), {}, {}};
  report.json["mode"] = cfg.mode == NetMode::kCover ? "cover" : "pack";
  report.json["radius"] = net.radius;
  report.json["count"] = net.count;
  report.json["probes"] = net.probes;
  report.json["saturated"] = net.saturated;
  if (cfg.mode == NetMode::kCover) {
    report.json["cover_probes"] = net.cover_probes;
    report.json["cover_misses"] = net.cover_misses;
  }
  json pts = json::array();
  for (const Point& p : net.points) pts.push_back(coords_json(p));
  report.json["points"] = pts;
  for (int k = 0; k < m.ambient_size(); ++k) report.columns.push_back("x" + std::to_string(k));
  for (const Point& p : net.points) {
    std::vector<json> row;
    for (Eigen::Index k = 0; k < p.coords.size(); ++k) row.push_back(p.coords[k]);
    report.rows.push_back(row);
  }
  emit(report, cfg, out);
  return kExitOk;
}

int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out) {
  SweepConfig sc;
  sc.m_list = cfg.m_list;
  sc.beta = cfg.profile ? cfg.profile->beta : 2.0;
  sc.n = *cfg.n;
  sc.replicates = *cfg.replicates;
  sc.seed = cfg.seed;
  const auto rows = dimension_sweep(sc);
  Report report{header(cfg),
                {"m", "q25", "median", "q75", "sqrt_m_normalized", "m_normalized"},
                {}};
  report.json["beta"] = sc.beta;
  report.json["n"] = sc.n;
  report.json["replicates"] = sc.replicates;
  json arr = json::array();
  for (const SweepRow& r : rows) {
    arr.push_back({{"m", r.m},
                   {"error", quantiles_json(r.error)},
                   {"sqrt_m_normalized", r.sqrt_m_normalized},
                   {"m_normalized", r.m_normalized}});
    report.rows.push_back(
        {r.m, r.error.q25, r.error.median, r.error.q75, r.sqrt_m_normalized, r.m_normalized});
  }
  report.json["rows"] = arr;
  emit(report, cfg, out);
  return kExitOk;
}

int cmd_check(const ExperimentConfig& cfg, std::ostream& out) {
  const Manifold& m = *cfg.manifold;
  const RadialProfile profile = cfg.profile->build();
  const auto verdict_text = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  std::string integrability;
  std::string reason;
  try {
    const IntegrabilityVerdict v = check_integrability(profile, m);
    integrability = verdict_text(v.pass);
    reason = v.reason;
  } catch (const IndeterminateError& e) {
    integrability = "INDETERMINATE";
    reason = e.what();
  }
  const RegularityReport reg = check_regularity(profile, m);
  out << "manifold: " << m.name() << "\n";
  out << "profile: " << profile.name() << "\n";
  out << "integrability: " << integrability << "\n";
  out << "  reason: " << reason << "\n";
  out << "lipschitz: " << verdict_text(reg.lipschitz_ok) << "\n";
  out << "strictly_increasing: " << verdict_text(reg.strictly_increasing_ok) << "\n";
  out << "differentiable: " << verdict_text(reg.differentiable_ok) << "\n";
  if (!reg.note.empty()) out << "  note: " << reg.note << "\n";
  if (cfg.output) {
    Report report{header(cfg), {"condition", "verdict"}, {}};
    report.json["integrability"] = integrability;
    report.json["integrability_reason"] = reason;
    report.json["lipschitz"] = reg.lipschitz_ok;
    report.json["strictly_increasing"] = reg.strictly_increasing_ok;
    report.json["differentiable"] = reg.differentiable_ok;
    report.json["note"] = reg.note;
    report.rows = {{"integrability", integrability},
                   {"lipschitz", verdict_text(reg.lipschitz_ok)},
                   {"strictly_increasing", verdict_text(reg.strictly_increasing_ok)},
                   {"differentiable", verdict_text(reg.differentiable_ok)}};
    write_report(report, *cfg.output, cfg.format);
  }
  return kExitOk;
}

}  // namespace

int run_command(const ExperimentConfig& cfg, std::ostream& out) {
  const std::string& c = cfg.command;
  if (c == "sample") return cmd_sample(cfg, out);
  if (c == "fit") return cmd_fit(cfg, out);
  if (c == "kl") return cmd_kl(cfg, out);
  if (c == "symmetry") return cmd_symmetry(cfg, out);
  if (c == "rate") return cmd_rate(cfg, out);
  if (c == "net") return cmd_net(cfg, out);
  if (c == "sweep-dim") return cmd_sweep(cfg, out);
  if (c == "check") return cmd_check(cfg, out);
  throw ConfigError("unknown command '" + c + "'");
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_command(parse_config(args), out);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IndeterminateError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace radial::cli
