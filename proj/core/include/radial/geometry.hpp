#pragma once

// Closed-form Riemannian kernels for the supported spaces.
//
// Points and tangent vectors live in an ambient coordinate representation:
//   Euclidean(m)   plain vector in R^m
//   Sphere(m)      unit vector in R^{m+1}
//   Hyperbolic(m)  hyperboloid vector in R^{m+1}, <x,x>_L = -1, x_0 > 0
//   SPD(n)         n x n symmetric positive-definite matrix, column-major
//   Product        concatenation of the factor representations
//
// Tangent vectors carry their base point; all kernels check that the base
// matches the point they are applied at.

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

#include "radial/rng.hpp"

namespace radial {

enum class ManifoldKind { kEuclidean, kSphere, kHyperbolic, kSpd, kProduct };

struct Point {
  Eigen::VectorXd coords;
};

struct Tangent {
  Point base;
  Eigen::VectorXd coords;

  Tangent scaled(double s) const { return {base, s * coords}; }
};

class Manifold {
 public:
  static Manifold euclidean(int m);
  static Manifold sphere(int m);
  static Manifold hyperbolic(int m);
  static Manifold spd(int n);
  static Manifold product(std::vector<Manifold> factors);

  /// Parses "sphere:2", "euclidean:3", "hyperbolic:2", "spd:3" and
  /// "product(sphere:2,hyperbolic:2)".
  static Manifold parse(std::string_view spec);

  ManifoldKind kind() const { return kind_; }
  /// m for Euclidean/Sphere/Hyperbolic, n for SPD, 0 for products.
  int parameter() const { return param_; }
  const std::vector<Manifold>& factors() const { return factors_; }

  int dim() const;
  int ambient_size() const;
  double kappa_min() const;
  double kappa_max() const;
  /// sup d(x, y); infinity for noncompact spaces.
  double r_max() const;
  double injectivity_radius() const;
  bool is_compact() const;
  /// True for Euclidean, Sphere, Hyperbolic and products of Euclidean factors.
  bool has_constant_curvature() const;

  std::string name() const;
  std::string kind_name() const;

  bool operator==(const Manifold& other) const;

  /// Canonical base point: zero, the first basis vector, or the identity.
  Point origin() const;

  bool contains(const Point& x, double tol = 1e-10) const;
  /// Throws DomainError naming the violated invariant.
  void validate(const Point& x) const;
  bool is_tangent(const Tangent& v, double tol = 1e-10) const;

  /// Orthogonal (metric) projection of an ambient vector onto T_x.
  Tangent project_tangent(const Point& x, const Eigen::VectorXd& ambient) const;

  Point exp_map(const Point& x, const Tangent& v) const;
  Tangent log_map(const Point& x, const Point& y) const;
  double distance(const Point& x, const Point& y) const;
  double tangent_inner(const Tangent& u, const Tangent& v) const;
  double tangent_norm(const Tangent& v) const;

  /// Standard Gaussian in T_x with respect to the Riemannian metric.
  Tangent random_gaussian_tangent(const Point& x, Rng& rng) const;
  /// Uniform on the unit sphere of T_x.
  Tangent random_unit_tangent(const Point& x, Rng& rng) const;
  /// A point exp(origin, spread * g) with g a Gaussian tangent; uniform on
  /// spheres regardless of spread.
  Point random_point(Rng& rng, double spread = 1.0) const;

 private:
  Manifold(ManifoldKind kind, int param, std::vector<Manifold> factors = {});

  Point factor_point(const Point& x, std::size_t i) const;
  Eigen::Index factor_offset(std::size_t i) const;
  void check_point_size(const Point& x, const char* what) const;
  void check_base(const Point& x, const Tangent& v, const char* what) const;

  ManifoldKind kind_;
  int param_;
  std::vector<Manifold> factors_;
};

/// Comparison function sn_kappa(r): sin, identity or sinh scaled by curvature.
/// Zero beyond the first conjugate radius pi/sqrt(kappa) when kappa > 0.
double sn(double kappa, double r);

/// log sn_kappa(r), finite for large r on negative curvature; -inf where
/// sn vanishes.
double log_sn(double kappa, double r);

/// Surface measure of the unit k-sphere S^k in R^{k+1}; vol(S^0) = 2.
double unit_sphere_volume(int k);

/// Minkowski product -a_0 b_0 + sum a_i b_i.
double minkowski_inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace radial
