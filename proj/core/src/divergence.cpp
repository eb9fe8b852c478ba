#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "radial/distribution.hpp"
#include "radial/errors.hpp"

namespace radial {
namespace {

Tangent unit(const Manifold& manifold, const Tangent& v) {
  return v.scaled(1.0 / manifold.tangent_norm(v));
}

// Unit tangent at a pointing to b, or any unit tangent when b is a or lies
// on the cut locus of a.
Tangent axis_direction(const Manifold& manifold, const Point& a, const Point& b,
                       std::vector<Tangent>& frame) {
  try {
    const Tangent v = manifold.log_map(a, b);
    if (manifold.tangent_norm(v) > 1e-300) return unit(manifold, v);
  } catch (const CutLocusError&) {
  }
  return frame.front();
}

// Orthonormal tangents at a, Gram-Schmidt over projected ambient basis
// vectors, starting from the given seed directions.
std::vector<Tangent> complete_frame(const Manifold& manifold, const Point& a,
                                    std::vector<Tangent> frame, std::size_t want) {
  const int n = manifold.ambient_size();
  for (int k = 0; k < n && frame.size() < want; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[k] = 1.0;
    Tangent v = manifold.project_tangent(a, e);
    for (const Tangent& f : frame) {
      v.coords -= manifold.tangent_inner(v, f) * f.coords;
    }
    const double norm = manifold.tangent_norm(v);
    if (norm > 1e-3) frame.push_back(v.scaled(1.0 / norm));
  }
  if (frame.size() < want) throw DomainError("could not build a tangent frame");
  return frame;
}

void require_pair(const RadialDistribution& p, const RadialDistribution& q) {
  if (!(p.manifold() == q.manifold())) {
    throw UnsupportedError("divergence between laws on different manifolds");
  }
  if (p.profile().kind() != q.profile().kind()) {
    throw UnsupportedError("divergence between different profile families");
  }
}

double quadrature_radius(const RadialDistribution& p, const RadialDistribution& q) {
  const Manifold& manifold = p.manifold();
  if (manifold.is_compact()) return manifold.r_max();
  const double gap = manifold.distance(p.center(), q.center());
  return std::max(p.r_cut(), gap + q.r_cut());
}

}  // namespace

QuadResult two_center_integral(const Manifold& manifold, const Point& a, const Point& b,
                               double rho_max, const std::function<double(double, double)>& G,
                               double rel_tol, int rho_pieces) {
  if (!manifold.has_constant_curvature()) {
    throw UnsupportedError("two-center reduction needs constant curvature, got " +
                           manifold.name());
  }
  if (rho_pieces < 1) throw UsageError("rho_pieces must be >= 1");
  const int m = manifold.dim();
  std::vector<Tangent> frame = complete_frame(manifold, a, {}, 1);
  const Tangent u = axis_direction(manifold, a, b, frame);
  frame = complete_frame(manifold, a, {u}, m >= 2 ? 2 : 1);

  const auto at = [&](double rho, double c, double s) {
    Tangent dir = u.scaled(c);
    if (m >= 2) dir.coords += s * frame[1].coords;
    return manifold.distance(manifold.exp_map(a, dir.scaled(rho)), b);
  };

  bool inner_ok = true;
  std::function<double(double)> radial;
  if (m == 1) {
    radial = [&](double rho) { return G(rho, at(rho, 1.0, 0.0)) + G(rho, at(rho, -1.0, 0.0)); };
  } else {
    const double sphere = unit_sphere_volume(m - 2);
    radial = [&, sphere](double rho) {
      const double w = std::pow(sn(manifold.kappa_max(), rho), m - 1);
      if (w == 0.0) return 0.0;
      const auto angular = [&](double psi) {
        const double s = std::sin(psi);
        const double jac = m == 2 ? 1.0 : std::pow(s, m - 2);
        return G(rho, at(rho, std::cos(psi), s)) * jac;
      };
      const QuadResult inner = integrate(angular, 0.0, std::numbers::pi, rel_tol * 0.1, 12);
      if (!inner.converged) inner_ok = false;
      return sphere * w * inner.value;
    };
  }
  std::vector<double> breaks(rho_pieces + 1);
  for (int k = 0; k <= rho_pieces; ++k) breaks[k] = rho_max * k / rho_pieces;
  QuadResult out = integrate_pieces(radial, breaks, rel_tol, 12);
  out.converged = out.converged && inner_ok;
  return out;
}

DivergenceResult kl_divergence(const RadialDistribution& p, const RadialDistribution& q,
                               const DivergenceOptions& opts) {
  require_pair(p, q);
  if (opts.method == DivergenceMethod::kMonteCarlo) {
    if (opts.mc_samples < 2) throw UsageError("monte carlo KL needs at least 2 samples");
    const SampleSet s = p.sample(opts.mc_samples, opts.seed);
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t k = 0;
    for (const Point& x : s.points) {
      const double v = p.log_density(x) - q.log_density(x);
      ++k;
      const double delta = v - mean;
      mean += delta / k;
      m2 += delta * (v - mean);
    }
    return {mean, std::sqrt(m2 / (k - 1) / k), true};
  }
  if (!p.has_normalizer() || !q.has_normalizer()) {
    throw UnsupportedError("quadrature KL needs normalizers on " + p.manifold().name());
  }
  const double lzp = p.log_z();
  const double lzq = q.log_z();
  const auto G = [&](double da, double db) {
    const double lp = -p.profile()(da) - lzp;
    const double lq = -q.profile()(db) - lzq;
    return std::exp(lp) * (lp - lq);
  };
  const QuadResult r = two_center_integral(p.manifold(), p.center(), q.center(),
                                           quadrature_radius(p, q), G, opts.rel_tol);
  return {std::max(r.value, 0.0), 0.0, r.converged};
}

DivergenceResult hellinger_distance(const RadialDistribution& p, const RadialDistribution& q,
                                    const DivergenceOptions& opts) {
  require_pair(p, q);
  if (opts.method == DivergenceMethod::kMonteCarlo) {
    if (opts.mc_samples < 2) throw UsageError("monte carlo Hellinger needs at least 2 samples");
    const SampleSet s = p.sample(opts.mc_samples, opts.seed);
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t k = 0;
    for (const Point& x : s.points) {
      const double ratio = std::exp(0.5 * (q.log_density(x) - p.log_density(x)));
      const double v = (1.0 - ratio) * (1.0 - ratio);
      ++k;
      const double delta = v - mean;
      mean += delta / k;
      m2 += delta * (v - mean);
    }
    const double h2 = std::clamp(mean, 0.0, 2.0);
    const double se2 = std::sqrt(m2 / (k - 1) / k);
    const double h = std::sqrt(h2);
    return {h, h > 0.0 ? se2 / (2.0 * h) : std::sqrt(se2), true};
  }
  if (!p.has_normalizer() || !q.has_normalizer()) {
    throw UnsupportedError("quadrature Hellinger needs normalizers on " + p.manifold().name());
  }
  const double lzp = p.log_z();
  const double lzq = q.log_z();
  const auto G = [&](double da, double db) {
    const double d = std::exp(0.5 * (-p.profile()(da) - lzp)) -
                     std::exp(0.5 * (-q.profile()(db) - lzq));
    return d * d;
  };
  const QuadResult r = two_center_integral(p.manifold(), p.center(), q.center(),
                                           quadrature_radius(p, q), G, opts.rel_tol);
  return {std::sqrt(std::clamp(r.value, 0.0, 2.0)), 0.0, r.converged};
}

double vmf_mean_resultant(double beta, int m) {
  if (!(beta > 0.0)) throw ParameterError("beta must be > 0");
  if (m < 2) throw ParameterError("vmf requires m >= 2");
  const auto w = [&](double t) { return std::exp(beta * (std::cos(t) - 1.0)) * std::pow(std::sin(t), m - 1); };
  std::vector<double> breaks(33);
  for (int k = 0; k <= 32; ++k) breaks[k] = std::numbers::pi * k / 32;
  const QuadResult num =
      integrate_pieces([&](double t) { return std::cos(t) * w(t); }, breaks, 1e-12, 15);
  const QuadResult den = integrate_pieces(w, breaks, 1e-12, 15);
  return num.value / den.value;
}

double vmf_kl_closed_form(double beta, int m, double r0) {
  if (!(r0 >= 0.0) || r0 > std::numbers::pi) throw ParameterError("r0 must lie in [0, pi]");
  return beta * (1.0 - std::cos(r0)) * vmf_mean_resultant(beta, m);
}

}  // namespace radial
