#include "radial/distribution.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "monotone_cubic.hpp"
#include "radial/errors.hpp"
#include "radial_integrand.hpp"

namespace radial {
namespace detail {

double RadialIntegrand::log_value(double r) const {
  const double lphi = -(*profile)(r);
  if (m == 1) return lphi;
  return lphi + (m - 1) * log_sn(kappa, r);
}

std::optional<double> find_tail_cutoff(const RadialIntegrand& g, double r_limit,
                                       double tail_rel) {
  const double log_tail_rel = std::log(tail_rel);
  double r = 0.0;
  double prev = g.log_value(0.0);
  double log_mass = -std::numeric_limits<double>::infinity();
  while (r < r_limit) {
    const double h = 0.01 + 0.01 * r;
    const double next_r = r + h;
    const double cur = g.log_value(next_r);
    const double piece = std::log(h) + std::max(prev, cur);
    if (std::isfinite(piece)) {
      log_mass = std::isfinite(log_mass)
                     ? std::max(log_mass, piece) + std::log1p(std::exp(-std::abs(log_mass - piece)))
                     : piece;
    }
    if (std::isfinite(prev) && std::isfinite(cur) && cur < prev && std::isfinite(log_mass)) {
      // Tail mass estimate: exp(cur) / decay rate.
      const double decay = (prev - cur) / h;
      if (cur - std::log(decay) < log_mass + log_tail_rel) return next_r;
    }
    prev = cur;
    r = next_r;
  }
  return std::nullopt;
}

struct RadialTable {
  double kappa = 0.0;
  int m = 1;
  double r_cut = 0.0;
  double log_mass = 0.0;  // log int_0^{r_cut} exp(-phi) sn^{m-1}
  std::vector<double> r;
  std::vector<double> cdf;
  std::unique_ptr<MonotoneCubic> spline;
};

}  // namespace detail

namespace {

constexpr int kTableNodes = 4096;
constexpr double kBuiltinTailLimit = 2000.0;
constexpr double kCustomTailLimit = 200.0;
constexpr int kBurnIn = 500;
constexpr int kThinning = 10;
constexpr int kAdaptWindow = 50;

double constant_kappa(const Manifold& manifold) {
  switch (manifold.kind()) {
    case ManifoldKind::kSphere:
      return 1.0;
    case ManifoldKind::kHyperbolic:
      return -1.0;
    default:
      return 0.0;
  }
}

void require_normalizable(const Manifold& manifold, const RadialProfile& profile) {
  if (!manifold.has_constant_curvature()) {
    throw UnsupportedError("normalizing constant unsupported on " + manifold.name() +
                           " (volume density is not radial)");
  }
  const auto verdict = check_integrability(profile, manifold);
  if (!verdict.pass) {
    throw DomainError("profile " + profile.name() + " is not integrable on " + manifold.name() +
                      ": " + verdict.reason);
  }
}

double radial_cutoff(const Manifold& manifold, const detail::RadialIntegrand& g) {
  if (manifold.is_compact()) return manifold.r_max();
  const double limit =
      g.profile->kind() == ProfileKind::kCustom ? kCustomTailLimit : kBuiltinTailLimit;
  const auto cut = detail::find_tail_cutoff(g, limit);
  if (!cut) {
    throw UnsupportedError("radial tail of " + g.profile->name() +
                           " does not resolve within r <= " + std::to_string(limit));
  }
  return *cut;
}

std::shared_ptr<const detail::RadialTable> build_table(const Manifold& manifold,
                                                       const RadialProfile& profile) {
  auto table = std::make_shared<detail::RadialTable>();
  table->kappa = constant_kappa(manifold);
  table->m = manifold.dim();
  const detail::RadialIntegrand g{&profile, table->kappa, table->m};
  table->r_cut = radial_cutoff(manifold, g);

  table->r.resize(kTableNodes);
  for (int k = 0; k < kTableNodes; ++k) {
    table->r[k] = table->r_cut * k / (kTableNodes - 1);
  }
  table->r.back() = table->r_cut;

  double shift = -std::numeric_limits<double>::infinity();
  for (double r : table->r) shift = std::max(shift, g.log_value(r));
  if (!std::isfinite(shift)) throw DomainError("radial integrand vanishes identically");

  const auto w = [&](double r) { return std::exp(g.log_value(r) - shift); };
  table->cdf.assign(kTableNodes, 0.0);
  double cum = 0.0;
  for (int k = 0; k + 1 < kTableNodes; ++k) {
    cum += integrate(w, table->r[k], table->r[k + 1], 1e-13, 2).value;
    table->cdf[k + 1] = cum;
  }
  if (!(cum > 0.0) || !std::isfinite(cum)) throw DomainError("radial mass is not finite");
  for (double& c : table->cdf) c /= cum;
  table->cdf.back() = 1.0;
  table->log_mass = std::log(cum) + shift;
  table->spline = std::make_unique<detail::MonotoneCubic>(table->r, table->cdf);
  return table;
}

}  // namespace

double normalizing_constant(const Manifold& manifold, const RadialProfile& profile) {
  require_normalizable(manifold, profile);
  const auto table = build_table(manifold, profile);
  return std::log(unit_sphere_volume(manifold.dim() - 1)) + table->log_mass;
}

QuadResult radial_expectation(const Manifold& manifold, const RadialProfile& profile,
                              const std::function<double(double)>& g, double rel_tol) {
  require_normalizable(manifold, profile);
  const detail::RadialIntegrand w{&profile, constant_kappa(manifold), manifold.dim()};
  const double r_cut = radial_cutoff(manifold, w);
  constexpr int kPieces = 64;
  std::vector<double> breaks(kPieces + 1);
  double shift = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kPieces; ++k) {
    breaks[k] = r_cut * k / kPieces;
    shift = std::max(shift, w.log_value(breaks[k]));
  }
  const auto weight = [&](double r) { return std::exp(w.log_value(r) - shift); };
  const QuadResult num = integrate_pieces([&](double r) { return g(r) * weight(r); },
                                          breaks, rel_tol, 12);
  const QuadResult den = integrate_pieces(weight, breaks, rel_tol, 12);
  return {num.value / den.value,
          std::abs(num.error / den.value) + std::abs(num.value * den.error / (den.value * den.value)),
          num.converged && den.converged};
}

// ---------------------------------------------------------------------------

RadialDistribution::RadialDistribution(Manifold manifold, Point center, RadialProfile profile)
    : manifold_(std::move(manifold)), center_(std::move(center)), profile_(std::move(profile)) {
  manifold_.validate(center_);
  const auto verdict = check_integrability(profile_, manifold_);
  if (!verdict.pass) {
    throw DomainError("profile " + profile_.name() + " is not integrable on " +
                      manifold_.name() + ": " + verdict.reason);
  }
  if (manifold_.has_constant_curvature()) table_ = build_table(manifold_, profile_);
}

double RadialDistribution::log_z() const {
  if (!table_) {
    throw UnsupportedError("normalizing constant unsupported on " + manifold_.name());
  }
  return std::log(unit_sphere_volume(manifold_.dim() - 1)) + table_->log_mass;
}

double RadialDistribution::r_cut() const {
  if (!table_) return manifold_.r_max();
  return table_->r_cut;
}

double RadialDistribution::log_density(const Point& x, Normalization mode) const {
  const double unnormalized = -profile_(manifold_.distance(x, center_));
  if (mode == Normalization::kUnnormalized) return unnormalized;
  return unnormalized - log_z();
}

CdfValue RadialDistribution::radial_cdf(double r) const {
  if (!table_) throw UnsupportedError("radial CDF unavailable on " + manifold_.name());
  if (!(r >= 0.0)) return {0.0, true};
  if (r > table_->r_cut) return {1.0, true};
  if (r == table_->r_cut) return {1.0, false};
  return {std::clamp((*table_->spline)(r), 0.0, 1.0), false};
}

double RadialDistribution::radial_quantile(double u) const {
  if (!table_) throw UnsupportedError("radial quantile unavailable on " + manifold_.name());
  const auto& cdf = table_->cdf;
  const auto& r = table_->r;
  if (!(u > 0.0)) return 0.0;
  if (u >= 1.0) return table_->r_cut;
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  std::size_t k = static_cast<std::size_t>(std::distance(cdf.begin(), it));
  k = std::clamp<std::size_t>(k, 1, cdf.size() - 1) - 1;
  const auto f = [&](double t) { return (*table_->spline)(t) - u; };
  double lo = r[k];
  double hi = r[k + 1];
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo >= 0.0) return lo;
  if (fhi <= 0.0) return hi;
  boost::uintmax_t iters = 60;
  const auto root = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (root.first + root.second);
}

SampleSet RadialDistribution::sample(std::size_t n, std::uint64_t seed) const {
  SampleSet out{manifold_, {}, {}};
  out.metadata.seed = seed;
  out.metadata.profile = to_string(profile_.kind());
  out.metadata.beta = profile_.beta();
  out.points.reserve(n);
  Rng rng(seed);

  if (table_) {
    out.metadata.source = "polar-inverse-cdf";
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = radial_quantile(unif(rng));
      const Tangent dir = manifold_.random_unit_tangent(center_, rng);
      out.points.push_back(manifold_.exp_map(center_, dir.scaled(r)));
    }
    return out;
  }

  if (manifold_.kind() != ManifoldKind::kSpd) {
    throw UnsupportedError("no sampler for " + manifold_.name());
  }
  out.metadata.source = "metropolis-hastings";
  out.metadata.approximate = true;
  if (n == 0) return out;

  // Random-walk Metropolis, tangent Gaussian proposals, step size adapted in burn-in.
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Point x = center_;
  double lx = log_density(x, Normalization::kUnnormalized);
  double log_sigma = -0.5 * std::log(profile_.beta() * manifold_.dim());
  int window_accepts = 0;
  const auto step = [&]() {
    const Tangent v = manifold_.random_gaussian_tangent(x, rng).scaled(std::exp(log_sigma));
    Point y = manifold_.exp_map(x, v);
    const double ly = log_density(y, Normalization::kUnnormalized);
    if (std::log(unif(rng)) < ly - lx) {
      x = std::move(y);
      lx = ly;
      return true;
    }
    return false;
  };
  for (int t = 1; t <= kBurnIn; ++t) {
    window_accepts += step() ? 1 : 0;
    if (t % kAdaptWindow == 0) {
      const double rate = static_cast<double>(window_accepts) / kAdaptWindow;
      log_sigma += 2.0 * (rate - 0.3);
      window_accepts = 0;
    }
  }
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int t = 0; t < kThinning; ++t) accepted += step() ? 1 : 0;
    out.points.push_back(x);
  }
  out.metadata.acceptance_rate = static_cast<double>(accepted) / (n * kThinning);
  return out;
}

}  // namespace radial
