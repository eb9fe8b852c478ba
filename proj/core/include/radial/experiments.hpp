#pragma once

// Seeded Monte Carlo and quadrature experiments: convergence rates,
// symmetry and local KL scans, Fano bounds and a dimension sweep.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "radial/distribution.hpp"
#include "radial/estimation.hpp"
#include "radial/nets.hpp"

namespace radial {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least squares on (ln x, ln y). Needs >= 3 points with positive coordinates.
SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

struct Quantiles {
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
};

/// Linear-interpolation quantiles of a nonempty sample.
Quantiles quantiles(std::vector<double> values);

struct RateConfig {
  Manifold manifold;
  RadialProfile profile;
  Point alpha_true;
  std::vector<std::size_t> n_grid;
  std::size_t replicates = 0;
  bool estimate_beta = false;
  double beta_lo = 1e-3;
  double beta_hi = 1e3;
  bool hellinger_error = false;
  std::uint64_t seed = 42;
};

struct RateRow {
  std::size_t n = 0;
  Quantiles geodesic;
  std::optional<Quantiles> beta_error;
  std::optional<Quantiles> combined;  // geodesic + |beta_hat - beta|
  std::optional<Quantiles> hellinger;
  std::size_t failures = 0;
};

struct RateReport {
  std::vector<RateRow> rows;
  std::size_t replicates = 0;
  SlopeFit geodesic_fit;
  std::optional<SlopeFit> combined_fit;
  std::optional<SlopeFit> hellinger_fit;
  std::size_t failures = 0;
  bool flagged = false;  // more than 5% of replicates failed
  std::uint64_t seed = 0;
};

/// Samples, fits and records errors for every (n, replicate) cell. Replicate
/// seeds derive from (seed, n index, replicate index).
RateReport run_rate_experiment(const RateConfig& cfg);

struct SymmetryRow {
  double t = 0.0;
  double i_plus = 0.0;
  double i_minus = 0.0;
  double delta = 0.0;
  bool converged = true;
};

/// I(t) = int phi(d(x, alpha(t))) exp(-phi(d(x, alpha))) dvol along a
/// unit-speed geodesic alpha(t) through the origin.
std::vector<SymmetryRow> symmetry_scan(const Manifold& manifold, const RadialProfile& profile,
                                       const std::vector<double>& t_grid);

struct KlRow {
  double t = 0.0;
  double kl = 0.0;
  bool converged = true;
};

struct KlScan {
  std::vector<KlRow> rows;
  SlopeFit fit;
};

/// KL(P_alpha || P_alpha(t)) by two-center quadrature, with a log-log fit.
KlScan kl_local_scan(const Manifold& manifold, const RadialProfile& profile,
                     const std::vector<double>& t_grid);

/// delta (1 - (n kl_max + log 2) / log set_size), clamped at 0.
double fano_lower_bound(double delta, double kl_max, std::size_t set_size, std::size_t n);

struct FanoReport {
  int m = 0;
  std::size_t n = 0;
  double beta = 0.0;
  double delta = 0.0;
  double kl_max = 0.0;
  std::size_t set_size = 0;
  bool net_complete = false;  // the packing reached 2^m points
  double bound = 0.0;
  double normalized = 0.0;  // bound / (m / sqrt(n))
};

/// vMF construction on S^m: delta chosen so n * kl_max = 0.01 m log 2, a
/// 2 delta packing of 2^m points in B(alpha, 8 delta), kl_max = beta^2 (16 delta)^2 / (2m).
FanoReport fano_vmf_pipeline(int m, std::size_t n, double beta, std::uint64_t seed);

struct SweepConfig {
  std::vector<int> m_list;
  double beta = 2.0;
  std::size_t n = 0;
  std::size_t replicates = 0;
  std::uint64_t seed = 42;
};

struct SweepRow {
  int m = 0;
  Quantiles error;
  double sqrt_m_normalized = 0.0;  // median error * sqrt(n) / sqrt(m)
  double m_normalized = 0.0;       // median error * sqrt(n) / m
};

/// vMF location error of the resultant estimator across sphere dimensions.
std::vector<SweepRow> dimension_sweep(const SweepConfig& cfg);

}  // namespace radial
