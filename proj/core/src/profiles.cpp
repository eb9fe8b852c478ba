#include "radial/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "monotone_cubic.hpp"
#include "radial/errors.hpp"
#include "radial_integrand.hpp"

namespace radial {

class CustomTable {
 public:
  CustomTable(std::vector<double> r, std::vector<double> phi)
      : spline(std::move(r), std::move(phi)) {}
  detail::MonotoneCubic spline;
};

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCustomTailLimit = 200.0;
constexpr int kRegularityGrid = 10000;
constexpr double kLipschitzCeiling = 1e12;

void validate_table(const std::vector<double>& r, const std::vector<double>& phi) {
  if (r.size() != phi.size()) throw ParameterError("custom profile: column lengths differ");
  if (r.size() < 4) throw ParameterError("custom profile: need at least 4 nodes");
  if (r.front() != 0.0) throw ParameterError("custom profile: r must start at 0");
  if (phi.front() < 0.0) throw ParameterError("custom profile: phi(0) must be >= 0");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(phi[i])) {
      throw ParameterError("custom profile: non-finite value at node " + std::to_string(i));
    }
    if (i > 0 && !(r[i] > r[i - 1])) {
      throw ParameterError("custom profile: r not strictly increasing at node " +
                           std::to_string(i));
    }
    if (i > 0 && phi[i] < phi[i - 1]) {
      throw ParameterError("custom profile: phi decreases at node " + std::to_string(i) +
                           " (check_regularity requires a nondecreasing profile)");
    }
  }
}

}  // namespace

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::kGaussian:
      return "gaussian";
    case ProfileKind::kLaplacian:
      return "laplacian";
    case ProfileKind::kPower:
      return "power";
    case ProfileKind::kVonMisesFisher:
      return "vmf";
    case ProfileKind::kCustom:
      return "custom";
  }
  return "unknown";
}

ProfileKind parse_profile_kind(std::string_view name) {
  if (name == "gaussian") return ProfileKind::kGaussian;
  if (name == "laplacian") return ProfileKind::kLaplacian;
  if (name == "power") return ProfileKind::kPower;
  if (name == "vmf") return ProfileKind::kVonMisesFisher;
  if (name == "custom") return ProfileKind::kCustom;
  throw ParameterError("unknown profile kind '" + std::string(name) + "'");
}

RadialProfile::RadialProfile(ProfileKind kind, double beta, std::optional<double> p,
                             std::shared_ptr<const CustomTable> table)
    : kind_(kind), beta_(beta), p_(p), table_(std::move(table)) {}

RadialProfile RadialProfile::make(ProfileKind kind, double beta, std::optional<double> p) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be > 0");
  if (kind == ProfileKind::kCustom) {
    throw ParameterError("custom profiles are built from a table");
  }
  if (kind == ProfileKind::kPower) {
    if (!p || !(*p > 1.0) || !std::isfinite(*p)) {
      throw ParameterError("power profile requires exponent p > 1");
    }
    return RadialProfile(kind, beta, p, nullptr);
  }
  return RadialProfile(kind, beta, std::nullopt, nullptr);
}

RadialProfile RadialProfile::custom(std::vector<double> r, std::vector<double> phi, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be > 0");
  validate_table(r, phi);
  auto table = std::make_shared<const CustomTable>(std::move(r), std::move(phi));
  RadialProfile out(ProfileKind::kCustom, beta, std::nullopt, std::move(table));
  // The interpolant must stay nondecreasing between nodes as well.
  const double hi = out.table_->spline.x_back();
  double prev = out.base(0.0);
  for (int k = 1; k <= kRegularityGrid; ++k) {
    const double v = out.base(hi * k / kRegularityGrid);
    if (v < prev - 1e-12 * (1.0 + std::abs(prev))) {
      throw ParameterError("custom profile: interpolant decreases near r = " +
                           std::to_string(hi * k / kRegularityGrid));
    }
    prev = v;
  }
  return out;
}

RadialProfile RadialProfile::custom_from_csv(const std::filesystem::path& path, double beta) {
  std::ifstream in(path);
  if (!in) throw ParameterError(path.string() + ": cannot open custom profile");
  std::vector<double> r;
  std::vector<double> phi;
  std::string line;
  int lineno = 0;
  bool header_allowed = true;
  const auto where = [&](int l) { return path.string() + ":" + std::to_string(l) + ": "; };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParameterError(where(lineno) + "expected two columns r,phi");
    double a = 0.0;
    double b = 0.0;
    try {
      std::size_t ua = 0;
      std::size_t ub = 0;
      const std::string sa = line.substr(0, comma);
      const std::string sb = line.substr(comma + 1);
      a = std::stod(sa, &ua);
      b = std::stod(sb, &ub);
      if (sb.find_first_not_of(" \t", ub) != std::string::npos) throw std::invalid_argument("x");
    } catch (const std::exception&) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw ParameterError(where(lineno) + "malformed row");
    }
    header_allowed = false;
    if (r.empty() && a != 0.0) throw ParameterError(where(lineno) + "r must start at 0");
    if (!r.empty() && !(a > r.back())) {
      throw ParameterError(where(lineno) + "r must be strictly increasing");
    }
    if (!phi.empty() && b < phi.back()) {
      throw ParameterError(where(lineno) +
                           "phi decreases (check_regularity: profile must be nondecreasing)");
    }
    r.push_back(a);
    phi.push_back(b);
  }
  try {
    return custom(std::move(r), std::move(phi), beta);
  } catch (const ParameterError& e) {
    throw ParameterError(path.string() + ": " + e.what());
  }
}

RadialProfile RadialProfile::with_beta(double beta) const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be > 0");
  RadialProfile out = *this;
  out.beta_ = beta;
  return out;
}

double RadialProfile::base(double r) const {
  switch (kind_) {
    case ProfileKind::kGaussian:
      return r * r;
    case ProfileKind::kLaplacian:
      return r;
    case ProfileKind::kPower:
      return std::pow(r, *p_);
    case ProfileKind::kVonMisesFisher:
      return 1.0 - std::cos(r);
    case ProfileKind::kCustom:
      return table_->spline(r);
  }
  return 0.0;
}

double RadialProfile::base_derivative(double r) const {
  switch (kind_) {
    case ProfileKind::kGaussian:
      return 2.0 * r;
    case ProfileKind::kLaplacian:
      return 1.0;  // right derivative at 0
    case ProfileKind::kPower:
      return *p_ * std::pow(r, *p_ - 1.0);
    case ProfileKind::kVonMisesFisher:
      return std::sin(r);
    case ProfileKind::kCustom:
      return table_->spline.prime(r);
  }
  return 0.0;
}

std::optional<double> RadialProfile::second_derivative(double r) const {
  switch (kind_) {
    case ProfileKind::kGaussian:
      return 2.0 * beta_;
    case ProfileKind::kLaplacian:
      return 0.0;
    case ProfileKind::kPower:
      return beta_ * *p_ * (*p_ - 1.0) * std::pow(r, *p_ - 2.0);
    case ProfileKind::kVonMisesFisher:
      return beta_ * std::cos(r);
    case ProfileKind::kCustom:
      return std::nullopt;
  }
  return std::nullopt;
}

double RadialProfile::domain_max() const {
  return kind_ == ProfileKind::kVonMisesFisher ? std::numbers::pi : kInf;
}

std::string RadialProfile::name() const {
  std::ostringstream os;
  os << to_string(kind_) << "(beta=" << beta_;
  if (p_) os << ",p=" << *p_;
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

IntegrabilityVerdict check_integrability(const RadialProfile& profile, const Manifold& manifold) {
  if (profile.kind() == ProfileKind::kVonMisesFisher &&
      manifold.kind() != ManifoldKind::kSphere) {
    return {false, "vmf profile is defined on [0, pi] and needs a sphere"};
  }
  if (manifold.is_compact()) return {true, "compact manifold"};

  const double kappa = manifold.kappa_min();
  const int m = manifold.dim();
  if (profile.kind() != ProfileKind::kCustom) {
    if (kappa == 0.0) return {true, "polynomial volume growth, profile grows at least linearly"};
    if (profile.kind() == ProfileKind::kLaplacian) {
      const double threshold = std::sqrt(-kappa) * (m - 1);
      if (profile.beta() > threshold) {
        return {true, "laplacian beta exceeds sqrt(-kappa_min)(m-1) = " + std::to_string(threshold)};
      }
      return {false, "laplacian on negative curvature requires beta > sqrt(-kappa_min)(m-1) = " +
                         std::to_string(threshold)};
    }
    return {true, "superlinear profile dominates exponential volume growth"};
  }

  const detail::RadialIntegrand g{&profile, kappa, m};
  if (detail::find_tail_cutoff(g, kCustomTailLimit)) {
    return {true, "tail decay resolved by quadrature"};
  }
  throw IndeterminateError("custom profile: no tail decay detectable within r <= 200");
}

RegularityReport check_regularity(const RadialProfile& profile, const Manifold& manifold) {
  RegularityReport report;
  const double hi = std::min({manifold.r_max(), profile.domain_max(), kCustomTailLimit});
  double sup_lip = 0.0;
  double min_slope = kInf;
  double prev = profile(0.0);
  for (int k = 0; k <= kRegularityGrid; ++k) {
    const double r = hi * k / kRegularityGrid;
    const double v = profile(r);
    sup_lip = std::max(sup_lip, std::abs(profile.derivative(r) * std::exp(-v)));
    if (k > 0) min_slope = std::min(min_slope, (v - prev) / (hi / kRegularityGrid));
    prev = v;
  }
  report.lipschitz_ok = std::isfinite(sup_lip) && sup_lip < kLipschitzCeiling;
  report.strictly_increasing_ok = min_slope > 0.0;
  report.differentiable_ok = profile.differentiable();
  if (report.strictly_increasing_ok && profile.derivative(hi) == 0.0) {
    report.note = "derivative vanishes at r = " + std::to_string(hi) +
                  "; strictly increasing on the half-open interval";
  } else if (report.strictly_increasing_ok && std::abs(profile.derivative(hi)) < 1e-12) {
    report.note = "derivative vanishes at the right endpoint; strict on the half-open interval";
  }
  if (!report.strictly_increasing_ok) {
    report.note = "profile is flat somewhere; the location parameter is not identifiable";
  }
  return report;
}

}  // namespace radial
