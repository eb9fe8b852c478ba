#pragma once

// Riemannian radial distributions f(x; alpha, phi) = exp(-phi(d(x, alpha))) / Z,
// their normalizers, samplers and divergences.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "radial/geometry.hpp"
#include "radial/profiles.hpp"
#include "radial/quadrature.hpp"

namespace radial {

struct SampleMetadata {
  std::uint64_t seed = 0;
  std::string source;
  std::string profile;
  double beta = 0.0;
  bool approximate = false;     // MCMC output
  double acceptance_rate = 0.0;  // MCMC only
};

struct SampleSet {
  Manifold manifold;
  std::vector<Point> points;
  SampleMetadata metadata;
};

/// log Z(phi) = log( vol(S^{m-1}) * int_0^{r_cut} exp(-phi(r)) sn_kappa(r)^{m-1} dr ).
/// Constant-curvature manifolds only; UnsupportedError otherwise, DomainError
/// when the profile is not integrable.
double normalizing_constant(const Manifold& manifold, const RadialProfile& profile);

/// E[g(d(X, alpha))] under the radial law; the same constant-curvature
/// restriction as the normalizer. Independent of alpha.
QuadResult radial_expectation(const Manifold& manifold, const RadialProfile& profile,
                              const std::function<double(double)>& g, double rel_tol = 1e-12);

enum class Normalization { kNormalized, kUnnormalized };

struct CdfValue {
  double probability = 0.0;
  bool clamped = false;
};

namespace detail {
struct RadialTable;
}

class RadialDistribution {
 public:
  /// Validates the center, checks integrability and, on constant-curvature
  /// manifolds, tabulates the radial CDF (4096 nodes) and log Z.
  RadialDistribution(Manifold manifold, Point center, RadialProfile profile);

  const Manifold& manifold() const { return manifold_; }
  const Point& center() const { return center_; }
  const RadialProfile& profile() const { return profile_; }

  bool has_normalizer() const { return table_ != nullptr; }
  double log_z() const;
  /// Radius covered by the CDF table; r_max on compact spaces.
  double r_cut() const;

  double log_density(const Point& x, Normalization mode = Normalization::kNormalized) const;

  /// P(d(X, alpha) <= r); out-of-range r is clamped and flagged.
  CdfValue radial_cdf(double r) const;
  /// Inverse of radial_cdf for u in [0, 1].
  double radial_quantile(double u) const;

  /// Exact polar sampler on constant curvature; Metropolis-Hastings on SPD.
  /// Deterministic in (n, seed).
  SampleSet sample(std::size_t n, std::uint64_t seed) const;

 private:
  Manifold manifold_;
  Point center_;
  RadialProfile profile_;
  std::shared_ptr<const detail::RadialTable> table_;
};

/// int_M G(d(x, a), d(x, b)) dvol(x) on a constant-curvature manifold,
/// reduced to polar coordinates (rho, psi) around a, with psi measured from
/// the geodesic through a and b. rho runs over [0, rho_max].
QuadResult two_center_integral(const Manifold& manifold, const Point& a, const Point& b,
                               double rho_max, const std::function<double(double, double)>& G,
                               double rel_tol = 1e-10, int rho_pieces = 32);

enum class DivergenceMethod { kQuadrature2d, kMonteCarlo };

struct DivergenceOptions {
  DivergenceMethod method = DivergenceMethod::kQuadrature2d;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 42;
  double rel_tol = 1e-10;
};

struct DivergenceResult {
  double value = 0.0;
  double std_error = 0.0;  // zero for quadrature
  bool converged = true;
};

DivergenceResult kl_divergence(const RadialDistribution& p, const RadialDistribution& q,
                               const DivergenceOptions& opts = {});

/// sqrt( int (sqrt f_p - sqrt f_q)^2 dvol ), in [0, sqrt 2].
DivergenceResult hellinger_distance(const RadialDistribution& p, const RadialDistribution& q,
                                    const DivergenceOptions& opts = {});

/// Mean resultant A_m(beta) = E[cos d] of the vMF law on S^m.
double vmf_mean_resultant(double beta, int m);

/// Exact KL between vMF laws on S^m whose centers are r0 apart:
/// beta (1 - cos r0) A_m(beta).
double vmf_kl_closed_form(double beta, int m, double r0);

}  // namespace radial
