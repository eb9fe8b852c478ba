#include "radial/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parallel.hpp"
#include "radial/errors.hpp"

namespace radial {
namespace {

Tangent first_unit_tangent(const Manifold& manifold, const Point& x) {
  const int n = manifold.ambient_size();
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[k] = 1.0;
    const Tangent v = manifold.project_tangent(x, e);
    const double norm = manifold.tangent_norm(v);
    if (norm > 0.5) return v.scaled(1.0 / norm);
  }
  throw DomainError("no tangent direction at point");
}

void require_scan_manifold(const Manifold& manifold) {
  if (!manifold.has_constant_curvature()) {
    throw UnsupportedError("scan needs a constant-curvature manifold, got " + manifold.name());
  }
}

}  // namespace

SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw UsageError("slope fit needs at least 3 points");
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) throw UsageError("slope fit needs positive coordinates");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double k = static_cast<double>(points.size());
  const double mx = sx / k;
  const double my = sy / k;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    const double dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw UsageError("slope fit needs distinct x values");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return fit;
}

Quantiles quantiles(std::vector<double> values) {
  if (values.empty()) throw UsageError("quantiles of an empty sample");
  std::sort(values.begin(), values.end());
  const auto at = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  return {at(0.25), at(0.5), at(0.75)};
}

RateReport run_rate_experiment(const RateConfig& cfg) {
  if (cfg.replicates == 0) throw UsageError("rate experiment: replicates must be > 0");
  if (cfg.n_grid.empty()) throw UsageError("rate experiment: n_grid is empty");
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    if (cfg.n_grid[i] == 0 || (i > 0 && cfg.n_grid[i] <= cfg.n_grid[i - 1])) {
      throw UsageError("rate experiment: n_grid must be positive and strictly increasing");
    }
  }
  const auto verdict = check_integrability(cfg.profile, cfg.manifold);
  if (!verdict.pass) throw DomainError("rate experiment: " + verdict.reason);
  const RegularityReport reg = check_regularity(cfg.profile, cfg.manifold);
  if (!reg.strictly_increasing_ok) throw ParameterError("rate experiment: " + reg.note);

  const RadialDistribution truth(cfg.manifold, cfg.alpha_true, cfg.profile);
  const std::size_t cells = cfg.n_grid.size() * cfg.replicates;
  std::vector<double> geo(cells, 0.0);
  std::vector<double> beta_err(cells, 0.0);
  std::vector<double> hell(cells, 0.0);
  std::vector<char> failed(cells, 0);
  std::vector<char> usable(cells, 0);

  EstimationOptions est_opts;
  est_opts.override_regularity = true;

  detail::parallel_for(cells, [&](std::size_t cell) {
    const std::size_t ni = cell / cfg.replicates;
    const std::size_t rep = cell % cfg.replicates;
    const std::uint64_t seed = derive_seed(cfg.seed, ni, rep);
    try {
      const SampleSet s = truth.sample(cfg.n_grid[ni], seed);
      const EstimationResult fit = mle_location(s, cfg.profile, est_opts);
      geo[cell] = cfg.manifold.distance(fit.alpha_hat, cfg.alpha_true);
      bool ok = fit.converged;
      double beta_hat = cfg.profile.beta();
      if (cfg.estimate_beta) {
        const TemperatureResult t =
            mle_temperature(s, fit.alpha_hat, cfg.profile, cfg.beta_lo, cfg.beta_hi);
        beta_hat = t.beta_hat;
        beta_err[cell] = std::abs(t.beta_hat - cfg.profile.beta());
        ok = ok && !t.at_boundary;
      }
      if (cfg.hellinger_error) {
        const RadialDistribution fitted(cfg.manifold, fit.alpha_hat,
                                        cfg.profile.with_beta(beta_hat));
        hell[cell] = hellinger_distance(truth, fitted).value;
      }
      failed[cell] = ok ? 0 : 1;
      usable[cell] = 1;
    } catch (const std::exception&) {
      failed[cell] = 1;
    }
  });

  RateReport report;
  report.replicates = cfg.replicates;
  report.seed = cfg.seed;
  std::vector<std::pair<double, double>> geo_pts;
  std::vector<std::pair<double, double>> comb_pts;
  std::vector<std::pair<double, double>> hell_pts;
  for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
    RateRow row;
    row.n = cfg.n_grid[ni];
    std::vector<double> g;
    std::vector<double> b;
    std::vector<double> c;
    std::vector<double> h;
    for (std::size_t rep = 0; rep < cfg.replicates; ++rep) {
      const std::size_t cell = ni * cfg.replicates + rep;
      row.failures += failed[cell];
      if (!usable[cell]) continue;
      g.push_back(geo[cell]);
      b.push_back(beta_err[cell]);
      c.push_back(geo[cell] + beta_err[cell]);
      h.push_back(hell[cell]);
    }
    report.failures += row.failures;
    if (g.empty()) throw DomainError("rate experiment: every replicate failed at n = " +
                                     std::to_string(row.n));
    row.geodesic = quantiles(g);
    geo_pts.emplace_back(static_cast<double>(row.n), row.geodesic.median);
    if (cfg.estimate_beta) {
      row.beta_error = quantiles(b);
      row.combined = quantiles(c);
      comb_pts.emplace_back(static_cast<double>(row.n), row.combined->median);
    }
    if (cfg.hellinger_error) {
      row.hellinger = quantiles(h);
      hell_pts.emplace_back(static_cast<double>(row.n), row.hellinger->median);
    }
    report.rows.push_back(std::move(row));
  }
  report.flagged = static_cast<double>(report.failures) > 0.05 * static_cast<double>(cells);
  if (geo_pts.size() >= 3) report.geodesic_fit = fit_loglog_slope(geo_pts);
  if (comb_pts.size() >= 3) report.combined_fit = fit_loglog_slope(comb_pts);
  if (hell_pts.size() >= 3) report.hellinger_fit = fit_loglog_slope(hell_pts);
  return report;
}

std::vector<SymmetryRow> symmetry_scan(const Manifold& manifold, const RadialProfile& profile,
                                       const std::vector<double>& t_grid) {
  require_scan_manifold(manifold);
  const Point alpha = manifold.origin();
  const RadialDistribution dist(manifold, alpha, profile);
  const Tangent u = first_unit_tangent(manifold, alpha);
  const auto G = [&](double da, double db) { return profile(db) * std::exp(-profile(da)); };
  std::vector<SymmetryRow> rows;
  rows.reserve(t_grid.size());
  for (double t : t_grid) {
    SymmetryRow row;
    row.t = t;
    const double rho_max =
        manifold.is_compact() ? manifold.r_max() : dist.r_cut() + std::abs(t);
    const QuadResult plus =
        two_center_integral(manifold, alpha, manifold.exp_map(alpha, u.scaled(t)), rho_max, G);
    const QuadResult minus =
        two_center_integral(manifold, alpha, manifold.exp_map(alpha, u.scaled(-t)), rho_max, G);
    row.i_plus = plus.value;
    row.i_minus = minus.value;
    row.delta = std::abs(plus.value - minus.value);
    row.converged = plus.converged && minus.converged;
    rows.push_back(row);
  }
  return rows;
}

KlScan kl_local_scan(const Manifold& manifold, const RadialProfile& profile,
                     const std::vector<double>& t_grid) {
  require_scan_manifold(manifold);
  const Point alpha = manifold.origin();
  const RadialDistribution p(manifold, alpha, profile);
  const Tangent u = first_unit_tangent(manifold, alpha);
  KlScan scan;
  std::vector<std::pair<double, double>> pts;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw UsageError("kl scan offsets must be > 0");
    const RadialDistribution q(manifold, manifold.exp_map(alpha, u.scaled(t)), profile);
    const DivergenceResult kl = kl_divergence(p, q);
    scan.rows.push_back({t, kl.value, kl.converged});
    if (kl.converged && kl.value > 0.0) pts.emplace_back(t, kl.value);
  }
  if (pts.size() >= 3) scan.fit = fit_loglog_slope(pts);
  return scan;
}

double fano_lower_bound(double delta, double kl_max, std::size_t set_size, std::size_t n) {
  if (!(delta > 0.0)) throw ParameterError("fano: delta must be > 0");
  if (!(kl_max >= 0.0)) throw ParameterError("fano: kl_max must be >= 0");
  if (set_size < 2) throw ParameterError("fano: set size must be >= 2");
  if (n == 0) throw ParameterError("fano: n must be > 0");
  const double ratio = (static_cast<double>(n) * kl_max + std::numbers::ln2) /
                       std::log(static_cast<double>(set_size));
  return std::max(0.0, delta * (1.0 - ratio));
}

FanoReport fano_vmf_pipeline(int m, std::size_t n, double beta, std::uint64_t seed) {
  if (m < 2 || m > 30) throw ParameterError("fano pipeline: m must lie in [2, 30]");
  if (n == 0) throw ParameterError("fano pipeline: n must be > 0");
  if (!(beta > 0.0)) throw ParameterError("fano pipeline: beta must be > 0");
  FanoReport r;
  r.m = m;
  r.n = n;
  r.beta = beta;
  const double md = static_cast<double>(m);
  r.delta = md * std::sqrt(0.01 * std::numbers::ln2 / (128.0 * beta * beta * static_cast<double>(n)));
  r.kl_max = beta * beta * std::pow(16.0 * r.delta, 2) / (2.0 * md);

  const Manifold sphere = Manifold::sphere(m);
  const std::size_t target = std::size_t{1} << m;
  NetOptions opts;
  opts.max_points = target;
  const NetResult net = greedy_net(sphere, NetRegion::ball(sphere.origin(), 8.0 * r.delta),
                                   2.0 * r.delta, NetMode::kPack, seed, opts);
  r.set_size = net.count;
  r.net_complete = net.count >= target;
  r.bound = net.count >= 2 ? fano_lower_bound(r.delta, r.kl_max, net.count, n) : 0.0;
  r.normalized = r.bound / (md / std::sqrt(static_cast<double>(n)));
  return r;
}

std::vector<SweepRow> dimension_sweep(const SweepConfig& cfg) {
  if (cfg.m_list.empty()) throw UsageError("dimension sweep: m_list is empty");
  for (int m : cfg.m_list) {
    if (m < 2 || m > 32) throw UsageError("dimension sweep: m must lie in [2, 32]");
  }
  if (cfg.replicates == 0) throw UsageError("dimension sweep: replicates must be > 0");
  if (cfg.n == 0) throw UsageError("dimension sweep: n must be > 0");
  const RadialProfile vmf = RadialProfile::make(ProfileKind::kVonMisesFisher, cfg.beta);
  std::vector<SweepRow> rows;
  for (std::size_t mi = 0; mi < cfg.m_list.size(); ++mi) {
    const int m = cfg.m_list[mi];
    const Manifold sphere = Manifold::sphere(m);
    const RadialDistribution dist(sphere, sphere.origin(), vmf);
    std::vector<double> err(cfg.replicates);
    detail::parallel_for(cfg.replicates, [&](std::size_t rep) {
      const SampleSet s = dist.sample(cfg.n, derive_seed(cfg.seed, mi, rep));
      err[rep] = sphere.distance(vmf_resultant_mean(s), dist.center());
    });
    SweepRow row;
    row.m = m;
    row.error = quantiles(err);
    const double root_n = std::sqrt(static_cast<double>(cfg.n));
    row.sqrt_m_normalized = row.error.median * root_n / std::sqrt(static_cast<double>(m));
    row.m_normalized = row.error.median * root_n / m;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace radial
