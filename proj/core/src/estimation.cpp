#include "radial/estimation.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>

#include "radial/errors.hpp"

namespace radial {
namespace {

constexpr double kDropRadius = 1e-8;
constexpr double kArmijo = 1e-4;
constexpr double kWolfeDelta = 0.1;
constexpr int kMaxHalvings = 60;
constexpr double kNoise = 1e-13;

Eigen::VectorXd init_coords(const Manifold& manifold, const std::vector<Eigen::VectorXd>& xs) {
  switch (manifold.kind()) {
    case ManifoldKind::kEuclidean: {
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(xs.front().size());
      for (const auto& x : xs) sum += x;
      return sum / static_cast<double>(xs.size());
    }
    case ManifoldKind::kSphere: {
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(xs.front().size());
      for (const auto& x : xs) sum += x;
      const double norm = sum.norm();
      if (norm < 1e-12 * static_cast<double>(xs.size())) return xs.front();
      return sum / norm;
    }
    case ManifoldKind::kHyperbolic: {
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(xs.front().size());
      for (const auto& x : xs) sum += x;
      sum /= static_cast<double>(xs.size());
      return sum / std::sqrt(-minkowski_inner(sum, sum));
    }
    case ManifoldKind::kSpd:
      return xs.front();
    case ManifoldKind::kProduct: {
      Eigen::VectorXd out(manifold.ambient_size());
      Eigen::Index offset = 0;
      for (const Manifold& f : manifold.factors()) {
        const Eigen::Index len = f.ambient_size();
        std::vector<Eigen::VectorXd> part;
        part.reserve(xs.size());
        for (const auto& x : xs) part.push_back(x.segment(offset, len));
        out.segment(offset, len) = init_coords(f, part);
        offset += len;
      }
      return out;
    }
  }
  return xs.front();
}

// Objective terms and gradient, with the Laplacian smoothed by eps.
class Objective {
 public:
  Objective(const SampleSet& samples, const RadialProfile& profile, double eps)
      : samples_(samples), profile_(profile), eps_(eps),
        smooth_(profile.kind() == ProfileKind::kLaplacian) {}

  double phi(double d) const {
    if (smooth_) return profile_.beta() * std::sqrt(d * d + eps_ * eps_);
    return profile_(d);
  }

  // phi(dn) - phi(d0) without cancellation against the larger magnitudes.
  double phi_diff(double dn, double d0) const {
    switch (profile_.kind()) {
      case ProfileKind::kGaussian:
        return profile_.beta() * (dn - d0) * (dn + d0);
      case ProfileKind::kLaplacian: {
        if (!smooth_) return profile_.beta() * (dn - d0);
        const double sn = std::sqrt(dn * dn + eps_ * eps_);
        const double s0 = std::sqrt(d0 * d0 + eps_ * eps_);
        return profile_.beta() * (dn - d0) * (dn + d0) / (sn + s0);
      }
      case ProfileKind::kVonMisesFisher:
        return 2.0 * profile_.beta() * std::sin(0.5 * (dn - d0)) * std::sin(0.5 * (dn + d0));
      default:
        return profile_(dn) - profile_(d0);
    }
  }

  void distances(const Point& alpha, std::vector<double>& out) const {
    const Manifold& manifold = samples_.manifold;
    out.resize(samples_.points.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = manifold.distance(samples_.points[i], alpha);
    }
  }

  double value(const std::vector<double>& d) const {
    double sum = 0.0;
    for (double di : d) sum += phi(di);
    return sum;
  }

  Tangent gradient(const Point& alpha, const std::vector<double>& d) const {
    const Manifold& manifold = samples_.manifold;
    Tangent g{alpha, Eigen::VectorXd::Zero(alpha.coords.size())};
    for (std::size_t i = 0; i < d.size(); ++i) {
      double weight = 0.0;
      if (smooth_) {
        weight = profile_.beta() / std::sqrt(d[i] * d[i] + eps_ * eps_);
      } else {
        if (d[i] < kDropRadius) continue;
        weight = profile_.derivative(d[i]) / d[i];
      }
      if (d[i] == 0.0) continue;
      g.coords -= weight * manifold.log_map(alpha, samples_.points[i]).coords;
    }
    return g;
  }

 private:
  const SampleSet& samples_;
  const RadialProfile& profile_;
  double eps_;
  bool smooth_;
};

}  // namespace

Point initial_location(const SampleSet& samples) {
  if (samples.points.empty()) throw UsageError("empty sample set");
  std::vector<Eigen::VectorXd> xs;
  xs.reserve(samples.points.size());
  for (const Point& p : samples.points) xs.push_back(p.coords);
  return Point{init_coords(samples.manifold, xs)};
}

EstimationResult mle_location(const SampleSet& samples, const RadialProfile& profile,
                              const EstimationOptions& opts) {
  if (samples.points.empty()) throw UsageError("mle_location: empty sample set");
  if (opts.max_iter < 0) throw UsageError("mle_location: max_iter must be >= 0");
  const Manifold& manifold = samples.manifold;
  if (!opts.override_regularity) {
    const RegularityReport reg = check_regularity(profile, manifold);
    if (!reg.strictly_increasing_ok) {
      throw ParameterError("mle_location: profile " + profile.name() +
                           " is not strictly increasing (" + reg.note + ")");
    }
  }
  const double n = static_cast<double>(samples.points.size());
  const double grad_tol = opts.grad_tol.value_or(1e-8 * n);

  const Point init = opts.init ? *opts.init : initial_location(samples);
  manifold.validate(init);

  double eps = 0.0;
  if (profile.kind() == ProfileKind::kLaplacian) {
    double spread = 0.0;
    for (const Point& x : samples.points) spread = std::max(spread, manifold.distance(x, init));
    eps = 1e-6 * std::max(2.0 * spread, 1e-300);
  }
  const Objective obj(samples, profile, eps);

  EstimationResult res;
  Point alpha = init;
  std::vector<double> d;
  std::vector<double> dn;
  obj.distances(alpha, d);
  double f = obj.value(d);
  res.trace.push_back(f);
  Tangent g = obj.gradient(alpha, d);
  double gnorm = manifold.tangent_norm(g);
  double step = gnorm > 0.0 ? 1.0 / gnorm : 1.0;

  int iter = 0;
  bool stalled = false;
  while (gnorm >= grad_tol && iter < opts.max_iter) {
    const double g2 = gnorm * gnorm;
    bool accepted = false;
    Point next;
    double decrease = 0.0;
    const double noise = kNoise * (std::abs(f) + n);
    for (int h = 0; h <= kMaxHalvings; ++h) {
      next = manifold.exp_map(alpha, g.scaled(-step));
      obj.distances(next, dn);
      decrease = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) decrease += obj.phi_diff(dn[i], d[i]);
      if (decrease <= -kArmijo * step * g2) {
        accepted = true;
        break;
      }
      // Approximate Wolfe slope test once decreases drop below roundoff.
      if (step * g2 < noise && decrease <= noise) {
        const Tangent gn = obj.gradient(next, dn);
        const Tangent back = manifold.log_map(next, alpha);
        const double slope = -manifold.tangent_inner(gn, back) / step;
        if (slope <= (2.0 * kWolfeDelta - 1.0) * -g2) {
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) {
      stalled = true;
      break;
    }
    alpha = std::move(next);
    std::swap(d, dn);
    f += decrease;
    res.trace.push_back(f);
    g = obj.gradient(alpha, d);
    gnorm = manifold.tangent_norm(g);
    step *= 2.0;
    ++iter;
  }

  res.objective = 0.0;
  for (double di : d) res.objective += profile(di);
  res.iterations = iter;
  res.grad_norm = gnorm;
  res.converged = !stalled && gnorm < grad_tol;
  res.distance_to_init = manifold.distance(alpha, init);
  res.alpha_hat = std::move(alpha);
  return res;
}

TemperatureResult mle_temperature(const SampleSet& samples, const Point& alpha_hat,
                                  const RadialProfile& family, double beta_lo, double beta_hi) {
  if (samples.points.empty()) throw UsageError("mle_temperature: empty sample set");
  if (!(beta_lo > 0.0) || !(beta_hi > beta_lo) || !std::isfinite(beta_hi)) {
    throw BracketError("mle_temperature: bounds must satisfy 0 < beta_lo < beta_hi");
  }
  const Manifold& manifold = samples.manifold;
  if (!manifold.has_constant_curvature()) {
    throw UnsupportedError("mle_temperature needs a normalizer; unsupported on " +
                           manifold.name());
  }
  double moment = 0.0;
  for (const Point& x : samples.points) moment += family.base(manifold.distance(x, alpha_hat));
  moment /= static_cast<double>(samples.points.size());

  const auto model = [&](double beta) {
    return radial_expectation(manifold, family.with_beta(beta),
                              [&](double r) { return family.base(r); })
        .value;
  };
  TemperatureResult out;
  out.sample_moment = moment;
  const double m_lo = model(beta_lo);
  const double m_hi = model(beta_hi);
  if (moment >= m_lo) {
    out.beta_hat = beta_lo;
    out.model_moment = m_lo;
    out.at_boundary = true;
    return out;
  }
  if (moment <= m_hi) {
    out.beta_hat = beta_hi;
    out.model_moment = m_hi;
    out.at_boundary = true;
    return out;
  }
  // E_beta[base] decreases in beta; bracketed root in log beta.
  const auto f = [&](double lb) { return model(std::exp(lb)) - moment; };
  boost::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(
      f, std::log(beta_lo), std::log(beta_hi), m_lo - moment, m_hi - moment,
      [](double a, double b) { return std::abs(a - b) < 1e-13; }, iters);
  out.beta_hat = std::exp(0.5 * (root.first + root.second));
  out.model_moment = model(out.beta_hat);
  return out;
}

double objective_eval(const SampleSet& samples, const RadialProfile& profile, const Point& alpha) {
  double sum = 0.0;
  for (const Point& x : samples.points) sum += profile(samples.manifold.distance(x, alpha));
  return sum;
}

Point vmf_resultant_mean(const SampleSet& samples) {
  if (samples.manifold.kind() != ManifoldKind::kSphere) {
    throw UnsupportedError("resultant mean needs a sphere");
  }
  if (samples.points.empty()) throw UsageError("empty sample set");
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(samples.manifold.ambient_size());
  for (const Point& x : samples.points) sum += x.coords;
  const double norm = sum.norm();
  if (norm == 0.0) throw DomainError("resultant vanishes; mean direction undefined");
  return Point{sum / norm};
}

namespace {

void check_moment(const RadialDistribution& dist, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("p must be > 0");
  if (dist.manifold().is_compact() || !dist.has_normalizer()) return;
  const QuadResult q = radial_expectation(dist.manifold(), dist.profile(),
                                          [p](double r) { return std::pow(r, p); });
  if (!std::isfinite(q.value)) throw DomainError("L^p moment is not finite");
}

McEstimate mean_and_se(const std::vector<double>& v) {
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double x : v) {
    ++k;
    const double delta = x - mean;
    mean += delta / k;
    m2 += delta * (x - mean);
  }
  const double se = k > 1 ? std::sqrt(m2 / (k - 1) / k) : 0.0;
  return {mean, se};
}

}  // namespace

McEstimate lp_objective(const RadialDistribution& dist, const Point& b, double p, std::size_t n,
                        std::uint64_t seed) {
  check_moment(dist, p);
  if (n == 0) throw UsageError("lp_objective: n must be > 0");
  const Manifold& manifold = dist.manifold();
  manifold.validate(b);
  const SampleSet s = dist.sample(n, seed);
  std::vector<double> v;
  v.reserve(n);
  for (const Point& x : s.points) v.push_back(std::pow(manifold.distance(x, b), p));
  return mean_and_se(v);
}

McEstimate lp_objective_difference(const RadialDistribution& dist, const Point& b1,
                                   const Point& b2, double p, std::size_t n, std::uint64_t seed) {
  check_moment(dist, p);
  if (n == 0) throw UsageError("lp_objective: n must be > 0");
  const Manifold& manifold = dist.manifold();
  manifold.validate(b1);
  manifold.validate(b2);
  const SampleSet s = dist.sample(n, seed);
  std::vector<double> v;
  v.reserve(n);
  for (const Point& x : s.points) {
    v.push_back(std::pow(manifold.distance(x, b1), p) - std::pow(manifold.distance(x, b2), p));
  }
  return mean_and_se(v);
}

}  // namespace radial
