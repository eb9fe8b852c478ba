#include "radial/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "radial/errors.hpp"
#include "spd_math.hpp"

namespace radial {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
// log_map refuses sphere points closer than this to the antipode.
constexpr double kCutLocusMargin = 1e-9;

Eigen::Map<const Eigen::MatrixXd> as_matrix(const Eigen::VectorXd& v, int n) {
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), n, n);
}

Eigen::VectorXd flatten(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

// sin(t)/t and sinh(t)/t, accurate near zero.
double sinc(double t) {
  return std::abs(t) < 1e-4 ? 1.0 - t * t / 6.0 : std::sin(t) / t;
}
double sinhc(double t) {
  return std::abs(t) < 1e-4 ? 1.0 + t * t / 6.0 : std::sinh(t) / t;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction and descriptors

Manifold::Manifold(ManifoldKind kind, int param, std::vector<Manifold> factors)
    : kind_(kind), param_(param), factors_(std::move(factors)) {}

Manifold Manifold::euclidean(int m) {
  if (m < 1) throw ParameterError("euclidean dimension must be >= 1");
  return Manifold(ManifoldKind::kEuclidean, m);
}

Manifold Manifold::sphere(int m) {
  if (m < 2) throw ParameterError("sphere dimension must be >= 2");
  return Manifold(ManifoldKind::kSphere, m);
}

Manifold Manifold::hyperbolic(int m) {
  if (m < 1) throw ParameterError("hyperbolic dimension must be >= 1");
  return Manifold(ManifoldKind::kHyperbolic, m);
}

Manifold Manifold::spd(int n) {
  if (n < 1) throw ParameterError("spd matrix size must be >= 1");
  return Manifold(ManifoldKind::kSpd, n);
}

Manifold Manifold::product(std::vector<Manifold> factors) {
  if (factors.empty()) throw ParameterError("product needs at least one factor");
  return Manifold(ManifoldKind::kProduct, 0, std::move(factors));
}

Manifold Manifold::parse(std::string_view spec) {
  const std::string s = trim(spec);
  if (s.rfind("product(", 0) == 0) {
    if (s.back() != ')') throw ParameterError("malformed product manifold: " + s);
    std::vector<Manifold> factors;
    for (const auto& part : split_top_level(std::string_view(s).substr(8, s.size() - 9))) {
      factors.push_back(parse(part));
    }
    return product(std::move(factors));
  }
  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    throw ParameterError("manifold must look like kind:dim, got '" + s + "'");
  }
  const std::string kind = trim(std::string_view(s).substr(0, colon));
  int value = 0;
  try {
    std::size_t used = 0;
    const std::string tail = trim(std::string_view(s).substr(colon + 1));
    value = std::stoi(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ParameterError("manifold dimension is not an integer in '" + s + "'");
  }
  if (kind == "euclidean") return euclidean(value);
  if (kind == "sphere") return sphere(value);
  if (kind == "hyperbolic") return hyperbolic(value);
  if (kind == "spd") return spd(value);
  throw ParameterError("unknown manifold kind '" + kind + "'");
}

int Manifold::dim() const {
  switch (kind_) {
    case ManifoldKind::kSpd:
      return param_ * (param_ + 1) / 2;
    case ManifoldKind::kProduct: {
      int d = 0;
      for (const auto& f : factors_) d += f.dim();
      return d;
    }
    default:
      return param_;
  }
}

int Manifold::ambient_size() const {
  switch (kind_) {
    case ManifoldKind::kEuclidean:
      return param_;
    case ManifoldKind::kSphere:
    case ManifoldKind::kHyperbolic:
      return param_ + 1;
    case ManifoldKind::kSpd:
      return param_ * param_;
    case ManifoldKind::kProduct: {
      int d = 0;
      for (const auto& f : factors_) d += f.ambient_size();
      return d;
    }
  }
  return 0;
}

double Manifold::kappa_min() const {
  switch (kind_) {
    case ManifoldKind::kEuclidean:
      return 0.0;
    case ManifoldKind::kSphere:
      return 1.0;
    case ManifoldKind::kHyperbolic:
      return -1.0;
    case ManifoldKind::kSpd:
      return -0.5;
    case ManifoldKind::kProduct: {
      // Mixed planes between factors are flat.
      double k = factors_.size() > 1 ? 0.0 : kInf;
      for (const auto& f : factors_) k = std::min(k, f.kappa_min());
      return k;
    }
  }
  return 0.0;
}

double Manifold::kappa_max() const {
  switch (kind_) {
    case ManifoldKind::kEuclidean:
    case ManifoldKind::kSpd:
      return 0.0;
    case ManifoldKind::kSphere:
      return 1.0;
    case ManifoldKind::kHyperbolic:
      return -1.0;
    case ManifoldKind::kProduct: {
      double k = factors_.size() > 1 ? 0.0 : -kInf;
      for (const auto& f : factors_) k = std::max(k, f.kappa_max());
      return k;
    }
  }
  return 0.0;
}

double Manifold::r_max() const {
  switch (kind_) {
    case ManifoldKind::kSphere:
      return kPi;
    case ManifoldKind::kProduct: {
      double sq = 0.0;
      for (const auto& f : factors_) sq += f.r_max() * f.r_max();
      return std::sqrt(sq);
    }
    default:
      return kInf;
  }
}

double Manifold::injectivity_radius() const {
  switch (kind_) {
    case ManifoldKind::kSphere:
      return kPi;
    case ManifoldKind::kProduct: {
      double r = kInf;
      for (const auto& f : factors_) r = std::min(r, f.injectivity_radius());
      return r;
    }
    default:
      return kInf;
  }
}

bool Manifold::is_compact() const { return std::isfinite(r_max()); }

bool Manifold::has_constant_curvature() const {
  switch (kind_) {
    case ManifoldKind::kEuclidean:
    case ManifoldKind::kSphere:
    case ManifoldKind::kHyperbolic:
      return true;
    case ManifoldKind::kSpd:
      return false;
    case ManifoldKind::kProduct:
      return std::all_of(factors_.begin(), factors_.end(), [](const Manifold& f) {
        return f.kind() == ManifoldKind::kEuclidean;
      });
  }
  return false;
}

std::string Manifold::kind_name() const {
  switch (kind_) {
    case ManifoldKind::kEuclidean:
      return "euclidean";
    case ManifoldKind::kSphere:
      return "sphere";
    case ManifoldKind::kHyperbolic:
      return "hyperbolic";
    case ManifoldKind::kSpd:
      return "spd";
    case ManifoldKind::kProduct:
      return name();
  }
  return "unknown";
}

std::string Manifold::name() const {
  if (kind_ != ManifoldKind::kProduct) {
    return kind_name() + ":" + std::to_string(param_);
  }
  std::string out = "product(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += ",";
    out += factors_[i].name();
  }
  return out + ")";
}

bool Manifold::operator==(const Manifold& other) const {
  return kind_ == other.kind_ && param_ == other.param_ && factors_ == other.factors_;
}

// ---------------------------------------------------------------------------
// Point and tangent checks

Point Manifold::origin() const {
  const int n = ambient_size();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  switch (kind_) {
    case ManifoldKind::kSphere:
    case ManifoldKind::kHyperbolic:
      c(0) = 1.0;
      break;
    case ManifoldKind::kSpd:
      c = flatten(Eigen::MatrixXd::Identity(param_, param_));
      break;
    case ManifoldKind::kProduct: {
      Eigen::Index off = 0;
      for (const auto& f : factors_) {
        const auto p = f.origin();
        c.segment(off, p.coords.size()) = p.coords;
        off += p.coords.size();
      }
      break;
    }
    default:
      break;
  }
  return {std::move(c)};
}

void Manifold::check_point_size(const Point& x, const char* what) const {
  if (x.coords.size() != ambient_size()) {
    throw UsageError(std::string(what) + ": point has " + std::to_string(x.coords.size()) +
                     " coordinates, " + name() + " expects " +
                     std::to_string(ambient_size()));
  }
}

void Manifold::check_base(const Point& x, const Tangent& v, const char* what) const {
  check_point_size(x, what);
  if (v.coords.size() != x.coords.size() || v.base.coords.size() != x.coords.size()) {
    throw UsageError(std::string(what) + ": tangent size does not match the point");
  }
  const double scale = 1.0 + x.coords.lpNorm<Eigen::Infinity>();
  if ((v.base.coords - x.coords).lpNorm<Eigen::Infinity>() > 1e-12 * scale) {
    throw UsageError(std::string(what) + ": tangent is based at a different point");
  }
}

Eigen::Index Manifold::factor_offset(std::size_t i) const {
  Eigen::Index off = 0;
  for (std::size_t j = 0; j < i; ++j) off += factors_[j].ambient_size();
  return off;
}

Point Manifold::factor_point(const Point& x, std::size_t i) const {
  return {x.coords.segment(factor_offset(i), factors_[i].ambient_size())};
}

bool Manifold::contains(const Point& x, double tol) const {
  if (x.coords.size() != ambient_size() || !x.coords.allFinite()) return false;
  switch (kind_) {
    case ManifoldKind::kEuclidean:
      return true;
    case ManifoldKind::kSphere:
      return std::abs(x.coords.squaredNorm() - 1.0) < tol;
    case ManifoldKind::kHyperbolic: {
      const double q = minkowski_inner(x.coords, x.coords);
      return x.coords(0) > 0.0 && std::abs(q + 1.0) < tol * std::max(1.0, x.coords(0) * x.coords(0));
    }
    case ManifoldKind::kSpd: {
      const auto m = as_matrix(x.coords, param_);
      const double scale = std::max(1.0, m.lpNorm<Eigen::Infinity>());
      if ((m - m.transpose()).lpNorm<Eigen::Infinity>() > tol * scale) return false;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(spd::symmetrize(m),
                                                         Eigen::EigenvaluesOnly);
      return eig.info() == Eigen::Success && eig.eigenvalues().minCoeff() > 0.0;
    }
    case ManifoldKind::kProduct:
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (!factors_[i].contains(factor_point(x, i), tol)) return false;
      }
      return true;
  }
  return false;
}

void Manifold::validate(const Point& x) const {
  check_point_size(x, "validate");
  if (!x.coords.allFinite()) throw DomainError("point has non-finite coordinates");
  if (!contains(x)) throw DomainError("point off manifold " + name());
}

bool Manifold::is_tangent(const Tangent& v, double tol) const {
  if (v.coords.size() != ambient_size() || v.base.coords.size() != ambient_size()) {
    return false;
  }
  const double scale = 1.0 + v.coords.norm();
  switch (kind_) {
    case ManifoldKind::kEuclidean:
      return true;
    case ManifoldKind::kSphere:
      return std::abs(v.base.coords.dot(v.coords)) < tol * scale;
    case ManifoldKind::kHyperbolic:
      return std::abs(minkowski_inner(v.base.coords, v.coords)) <
             tol * scale * (1.0 + std::abs(v.base.coords(0)));
    case ManifoldKind::kSpd: {
      const auto m = as_matrix(v.coords, param_);
      return (m - m.transpose()).lpNorm<Eigen::Infinity>() < tol * scale;
    }
    case ManifoldKind::kProduct: {
      Eigen::Index off = 0;
      for (const auto& f : factors_) {
        const Eigen::Index n = f.ambient_size();
        Tangent part{{v.base.coords.segment(off, n)}, v.coords.segment(off, n)};
        if (!f.is_tangent(part, tol)) return false;
        off += n;
      }
      return true;
    }
  }
  return false;
}

Tangent Manifold::project_tangent(const Point& x, const Eigen::VectorXd& a) const {
  check_point_size(x, "project_tangent");
  if (a.size() != x.coords.size()) throw UsageError("project_tangent: size mismatch");
  switch (kind_) {
    case ManifoldKind::kEuclidean:
      return {x, a};
    case ManifoldKind::kSphere:
      return {x, a - a.dot(x.coords) * x.coords};
    case ManifoldKind::kHyperbolic:
      return {x, a + minkowski_inner(a, x.coords) * x.coords};
    case ManifoldKind::kSpd:
      return {x, flatten(spd::symmetrize(as_matrix(a, param_)))};
    case ManifoldKind::kProduct: {
      Eigen::VectorXd out(a.size());
      Eigen::Index off = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Eigen::Index n = factors_[i].ambient_size();
        out.segment(off, n) =
            factors_[i].project_tangent(factor_point(x, i), a.segment(off, n)).coords;
        off += n;
      }
      return {x, std::move(out)};
    }
  }
  return {x, a};
}

// ---------------------------------------------------------------------------
// Kernels

Point Manifold::exp_map(const Point& x, const Tangent& v) const {
  check_base(x, v, "exp_map");
  if (!x.coords.allFinite() || !v.coords.allFinite()) {
    throw DomainError("exp_map: non-finite coordinates");
  }
  switch (kind_) {
    case ManifoldKind::kEuclidean:
      return {x.coords + v.coords};
    case ManifoldKind::kSphere: {
      const double n = v.coords.norm();
      Eigen::VectorXd y = std::cos(n) * x.coords + sinc(n) * v.coords;
      y /= y.norm();
      return {std::move(y)};
    }
    case ManifoldKind::kHyperbolic: {
      const double n = std::sqrt(std::max(minkowski_inner(v.coords, v.coords), 0.0));
      Eigen::VectorXd y = std::cosh(n) * x.coords + sinhc(n) * v.coords;
      y /= std::sqrt(-minkowski_inner(y, y));
      return {std::move(y)};
    }
    case ManifoldKind::kSpd: {
      const Eigen::MatrixXd xm = as_matrix(x.coords, param_);
      const Eigen::MatrixXd s = spd::sqrtm(xm);
      const Eigen::MatrixXd is = spd::inv_sqrtm(xm);
      const Eigen::MatrixXd inner = spd::expm_sym(is * as_matrix(v.coords, param_) * is);
      return {flatten(spd::symmetrize(s * inner * s))};
    }
    case ManifoldKind::kProduct: {
      Eigen::VectorXd out(x.coords.size());
      Eigen::Index off = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Eigen::Index n = factors_[i].ambient_size();
        Point xi = factor_point(x, i);
        Tangent vi{xi, v.coords.segment(off, n)};
        out.segment(off, n) = factors_[i].exp_map(xi, vi).coords;
        off += n;
      }
      return {std::move(out)};
    }
  }
  return x;
}

Tangent Manifold::log_map(const Point& x, const Point& y) const {
  check_point_size(x, "log_map");
  check_point_size(y, "log_map");
  switch (kind_) {
    case ManifoldKind::kEuclidean:
      return {x, y.coords - x.coords};
    case ManifoldKind::kSphere: {
      const double d = distance(x, y);
      if (d > kPi - kCutLocusMargin) {
        throw CutLocusError("log_map: points are antipodal (cut locus)");
      }
      Eigen::VectorXd u = y.coords - x.coords.dot(y.coords) * x.coords;
      const double un = u.norm();
      if (un == 0.0 || d == 0.0) return {x, Eigen::VectorXd::Zero(x.coords.size())};
      return {x, (d / un) * u};
    }
    case ManifoldKind::kHyperbolic: {
      const double d = distance(x, y);
      Eigen::VectorXd u = y.coords + minkowski_inner(x.coords, y.coords) * x.coords;
      double un = std::sqrt(std::max(minkowski_inner(u, u), 0.0));
      if (d == 0.0) return {x, Eigen::VectorXd::Zero(x.coords.size())};
      if (un == 0.0) un = std::sinh(d);
      return {x, (d / un) * u};
    }
    case ManifoldKind::kSpd: {
      const Eigen::MatrixXd xm = as_matrix(x.coords, param_);
      const Eigen::MatrixXd s = spd::sqrtm(xm);
      const Eigen::MatrixXd is = spd::inv_sqrtm(xm);
      const Eigen::MatrixXd inner = spd::logm(is * as_matrix(y.coords, param_) * is);
      return {x, flatten(spd::symmetrize(s * inner * s))};
    }
    case ManifoldKind::kProduct: {
      Eigen::VectorXd out(x.coords.size());
      Eigen::Index off = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Eigen::Index n = factors_[i].ambient_size();
        out.segment(off, n) =
            factors_[i].log_map(factor_point(x, i), factor_point(y, i)).coords;
        off += n;
      }
      return {x, std::move(out)};
    }
  }
  return {x, Eigen::VectorXd::Zero(x.coords.size())};
}

double Manifold::distance(const Point& x, const Point& y) const {
  check_point_size(x, "distance");
  check_point_size(y, "distance");
  switch (kind_) {
    case ManifoldKind::kEuclidean:
      return (x.coords - y.coords).norm();
    case ManifoldKind::kSphere:
      // 2 atan2(|x-y|, |x+y|) equals arccos<x,y> and stays accurate near 0 and pi.
      return 2.0 * std::atan2((x.coords - y.coords).norm(), (x.coords + y.coords).norm());
    case ManifoldKind::kHyperbolic: {
      // |x-y|_L^2 = 2(cosh d - 1) = 4 sinh^2(d/2).
      const Eigen::VectorXd diff = x.coords - y.coords;
      const double q = std::max(minkowski_inner(diff, diff), 0.0);
      return 2.0 * std::asinh(0.5 * std::sqrt(q));
    }
    case ManifoldKind::kSpd: {
      const Eigen::MatrixXd xm = spd::symmetrize(as_matrix(x.coords, param_));
      const Eigen::MatrixXd ym = spd::symmetrize(as_matrix(y.coords, param_));
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(ym, xm,
                                                                    Eigen::EigenvaluesOnly);
      if (eig.info() != Eigen::Success) throw DomainError("distance: SPD eigensolve failed");
      const Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(1e-300);
      return std::sqrt(lam.array().log().square().sum());
    }
    case ManifoldKind::kProduct: {
      double sq = 0.0;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const double d = factors_[i].distance(factor_point(x, i), factor_point(y, i));
        sq += d * d;
      }
      return std::sqrt(sq);
    }
  }
  return 0.0;
}

double Manifold::tangent_inner(const Tangent& u, const Tangent& v) const {
  check_base(u.base, v, "tangent_inner");
  check_point_size(u.base, "tangent_inner");
  if (u.coords.size() != ambient_size()) throw UsageError("tangent_inner: size mismatch");
  switch (kind_) {
    case ManifoldKind::kEuclidean:
    case ManifoldKind::kSphere:
      return u.coords.dot(v.coords);
    case ManifoldKind::kHyperbolic:
      return minkowski_inner(u.coords, v.coords);
    case ManifoldKind::kSpd: {
      Eigen::LLT<Eigen::MatrixXd> llt(as_matrix(u.base.coords, param_));
      if (llt.info() != Eigen::Success) throw DomainError("tangent_inner: base not SPD");
      const Eigen::MatrixXd a = llt.solve(Eigen::MatrixXd(as_matrix(u.coords, param_)));
      const Eigen::MatrixXd b = llt.solve(Eigen::MatrixXd(as_matrix(v.coords, param_)));
      return (a.array() * b.transpose().array()).sum();
    }
    case ManifoldKind::kProduct: {
      double s = 0.0;
      Eigen::Index off = 0;
      for (const auto& f : factors_) {
        const Eigen::Index n = f.ambient_size();
        Point b{u.base.coords.segment(off, n)};
        s += f.tangent_inner({b, u.coords.segment(off, n)}, {b, v.coords.segment(off, n)});
        off += n;
      }
      return s;
    }
  }
  return 0.0;
}

double Manifold::tangent_norm(const Tangent& v) const {
  return std::sqrt(std::max(tangent_inner(v, v), 0.0));
}

Tangent Manifold::random_gaussian_tangent(const Point& x, Rng& rng) const {
  check_point_size(x, "random_gaussian_tangent");
  std::normal_distribution<double> normal;
  auto draw = [&](Eigen::Index n) {
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
    return z;
  };
  switch (kind_) {
    case ManifoldKind::kEuclidean:
      return {x, draw(param_)};
    case ManifoldKind::kSphere:
      return project_tangent(x, draw(param_ + 1));
    case ManifoldKind::kHyperbolic: {
      // Isotropic at the origin, then the Lorentz boost taking origin to x.
      const Eigen::VectorXd z = draw(param_);
      const double x0 = x.coords(0);
      const auto xb = x.coords.tail(param_);
      const double s = xb.dot(z);
      Eigen::VectorXd v(param_ + 1);
      v(0) = s;
      v.tail(param_) = z + (s / (1.0 + x0)) * xb;
      return {x, std::move(v)};
    }
    case ManifoldKind::kSpd: {
      const Eigen::VectorXd a = draw(static_cast<Eigen::Index>(param_) * param_);
      const Eigen::MatrixXd sym = spd::symmetrize(as_matrix(a, param_));
      const Eigen::MatrixXd root = spd::sqrtm(as_matrix(x.coords, param_));
      return {x, flatten(spd::symmetrize(root * sym * root))};
    }
    case ManifoldKind::kProduct: {
      Eigen::VectorXd out(x.coords.size());
      Eigen::Index off = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Eigen::Index n = factors_[i].ambient_size();
        out.segment(off, n) = factors_[i].random_gaussian_tangent(factor_point(x, i), rng).coords;
        off += n;
      }
      return {x, std::move(out)};
    }
  }
  return {x, Eigen::VectorXd::Zero(x.coords.size())};
}

Tangent Manifold::random_unit_tangent(const Point& x, Rng& rng) const {
  for (;;) {
    Tangent g = random_gaussian_tangent(x, rng);
    const double n = tangent_norm(g);
    if (n > 1e-150 && std::isfinite(n)) {
      g.coords /= n;
      return g;
    }
  }
}

Point Manifold::random_point(Rng& rng, double spread) const {
  switch (kind_) {
    case ManifoldKind::kSphere: {
      std::normal_distribution<double> normal;
      for (;;) {
        Eigen::VectorXd z(param_ + 1);
        for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
        const double n = z.norm();
        if (n > 1e-150) return {z / n};
      }
    }
    case ManifoldKind::kProduct: {
      Eigen::VectorXd out(ambient_size());
      Eigen::Index off = 0;
      for (const auto& f : factors_) {
        const auto p = f.random_point(rng, spread);
        out.segment(off, p.coords.size()) = p.coords;
        off += p.coords.size();
      }
      return {std::move(out)};
    }
    default: {
      const Point o = origin();
      return exp_map(o, random_gaussian_tangent(o, rng).scaled(spread));
    }
  }
}

// ---------------------------------------------------------------------------
// Free functions

double sn(double kappa, double r) {
  if (!(r >= 0.0)) throw DomainError("sn: radius must be nonnegative");
  if (std::abs(kappa) * r * r < 1e-8) return r * (1.0 - kappa * r * r / 6.0);
  const double s = std::sqrt(std::abs(kappa));
  if (kappa > 0.0) {
    if (r > kPi / s) return 0.0;
    return std::sin(s * r) / s;
  }
  return std::sinh(s * r) / s;
}

double log_sn(double kappa, double r) {
  if (!(r >= 0.0)) throw DomainError("log_sn: radius must be nonnegative");
  if (kappa < 0.0) {
    const double s = std::sqrt(-kappa);
    const double t = s * r;
    if (t > 20.0) return t + std::log1p(-std::exp(-2.0 * t)) - std::log(2.0) - std::log(s);
  }
  const double v = sn(kappa, r);
  return v > 0.0 ? std::log(v) : -kInf;
}

double unit_sphere_volume(int k) {
  if (k < 0) throw DomainError("unit_sphere_volume: negative dimension");
  const double h = 0.5 * (k + 1);
  return 2.0 * std::pow(kPi, h) / std::tgamma(h);
}

double minkowski_inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return -a(0) * b(0) + a.tail(a.size() - 1).dot(b.tail(b.size() - 1));
}

}  // namespace radial
