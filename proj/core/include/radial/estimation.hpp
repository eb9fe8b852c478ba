#pragma once

// Maximum-likelihood estimation of the location and temperature of a radial
// law, and Monte Carlo L^p center-of-mass objectives.

#include <cstdint>
#include <optional>
#include <vector>

#include "radial/distribution.hpp"

namespace radial {

struct EstimationOptions {
  std::optional<Point> init;  // empty: automatic
  int max_iter = 10000;
  std::optional<double> grad_tol;  // default 1e-8 * n
  /// Skip the strict-monotonicity precondition.
  bool override_regularity = false;
};

struct EstimationResult {
  Point alpha_hat;
  std::optional<double> beta_hat;
  double objective = 0.0;  // sum of phi(d(x_i, alpha_hat))
  int iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
  std::vector<double> trace;  // objective per iterate, starting at the initial point
  double distance_to_init = 0.0;
};

/// Riemannian gradient descent with Armijo backtracking on
/// F(alpha) = sum phi(d(x_i, alpha)). The Laplacian profile is smoothed to
/// beta sqrt(d^2 + eps^2) with eps = 1e-6 times the data scale.
EstimationResult mle_location(const SampleSet& samples, const RadialProfile& profile,
                              const EstimationOptions& opts = {});

/// Automatic starting point: normalized extrinsic mean on spheres, ambient
/// mean lifted back on Euclidean and hyperbolic spaces, first sample on SPD.
Point initial_location(const SampleSet& samples);

struct TemperatureResult {
  double beta_hat = 0.0;
  bool at_boundary = false;
  double sample_moment = 0.0;  // mean of base(d_i)
  double model_moment = 0.0;   // E_{beta_hat}[base(d)]
};

/// Solves E_beta[base(d)] = mean base(d(x_i, alpha_hat)) over [beta_lo, beta_hi].
/// Returns the nearer bound, flagged, when the sample moment is out of range.
TemperatureResult mle_temperature(const SampleSet& samples, const Point& alpha_hat,
                                  const RadialProfile& family, double beta_lo, double beta_hi);

/// Left-to-right sum of phi(d(x_i, alpha)).
double objective_eval(const SampleSet& samples, const RadialProfile& profile, const Point& alpha);

/// Closed-form vMF location MLE on a sphere: the normalized resultant.
Point vmf_resultant_mean(const SampleSet& samples);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// E[d(X, b)^p] under dist, estimated from sample(dist, n, seed).
McEstimate lp_objective(const RadialDistribution& dist, const Point& b, double p, std::size_t n,
                        std::uint64_t seed);

/// E[d(X, b1)^p - d(X, b2)^p] on one shared sample, so the standard error
/// accounts for the correlation between the two objectives.
McEstimate lp_objective_difference(const RadialDistribution& dist, const Point& b1,
                                   const Point& b2, double p, std::size_t n, std::uint64_t seed);

}  // namespace radial
