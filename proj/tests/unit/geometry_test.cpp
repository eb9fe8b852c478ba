#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "radial/errors.hpp"
#include "radial/geometry.hpp"

using namespace radial;

namespace {

std::vector<Manifold> all_spaces() {
  return {Manifold::euclidean(3), Manifold::sphere(2),     Manifold::sphere(5),
          Manifold::hyperbolic(2), Manifold::hyperbolic(4), Manifold::spd(2),
          Manifold::spd(3),        Manifold::product({Manifold::sphere(2), Manifold::hyperbolic(2)})};
}

}  // namespace

TEST(Geometry, ParseAndNames) {
  EXPECT_EQ(Manifold::parse("sphere:2").name(), "sphere:2");
  EXPECT_EQ(Manifold::parse("hyperbolic:3").dim(), 3);
  EXPECT_EQ(Manifold::parse("spd:3").dim(), 6);
  EXPECT_EQ(Manifold::parse("spd:3").ambient_size(), 9);
  const Manifold p = Manifold::parse("product(sphere:2,hyperbolic:2)");
  EXPECT_EQ(p.dim(), 4);
  EXPECT_EQ(p.ambient_size(), 6);
  EXPECT_THROW(Manifold::parse("torus:2"), std::invalid_argument);
  EXPECT_THROW(Manifold::parse("sphere:0"), std::invalid_argument);
}

TEST(Geometry, CurvatureBounds) {
  EXPECT_EQ(Manifold::sphere(2).kappa_max(), 1.0);
  EXPECT_EQ(Manifold::hyperbolic(2).kappa_min(), -1.0);
  EXPECT_DOUBLE_EQ(Manifold::sphere(3).r_max(), std::numbers::pi);
  EXPECT_TRUE(Manifold::sphere(3).is_compact());
  EXPECT_FALSE(Manifold::spd(2).has_constant_curvature());
}

TEST(Geometry, ExpLogRoundTrip) {
  for (const Manifold& m : all_spaces()) {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
      const Point x = m.random_point(rng);
      ASSERT_TRUE(m.contains(x)) << m.name();
      const Tangent v = m.random_unit_tangent(x, rng).scaled(0.1 + 2.8 * (i % 10) / 10.0);
      const Point y = m.exp_map(x, v);
      ASSERT_TRUE(m.contains(y)) << m.name();
      const Tangent w = m.log_map(x, y);
      EXPECT_LT((w.coords - v.coords).norm(), 1e-9 * (1.0 + v.coords.norm())) << m.name();
      EXPECT_NEAR(m.distance(x, y), m.tangent_norm(v), 1e-9) << m.name();
    }
  }
}

TEST(Geometry, DistanceAxioms) {
  for (const Manifold& m : all_spaces()) {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
      const Point a = m.random_point(rng);
      const Point b = m.random_point(rng);
      const Point c = m.random_point(rng);
      EXPECT_NEAR(m.distance(a, a), 0.0, 1e-7) << m.name();
      EXPECT_NEAR(m.distance(a, b), m.distance(b, a), 1e-9) << m.name();
      EXPECT_LE(m.distance(a, c), m.distance(a, b) + m.distance(b, c) + 1e-9) << m.name();
    }
  }
}

TEST(Geometry, SphereAntipodalLogThrows) {
  const Manifold s = Manifold::sphere(2);
  const Point x = s.origin();
  const Point y{-x.coords};
  EXPECT_THROW(s.log_map(x, y), CutLocusError);
  EXPECT_NEAR(s.distance(x, y), std::numbers::pi, 1e-12);
}

TEST(Geometry, TangentBaseMismatchThrows) {
  const Manifold s = Manifold::sphere(2);
  Rng rng(3);
  const Point x = s.random_point(rng);
  const Point y = s.random_point(rng);
  const Tangent v = s.random_unit_tangent(x, rng);
  EXPECT_ANY_THROW(s.exp_map(y, v));
}

TEST(Geometry, RejectsOffManifoldPoints) {
  EXPECT_FALSE(Manifold::sphere(2).contains(Point{Eigen::Vector3d(1.1, 0, 0)}));
  EXPECT_FALSE(Manifold::hyperbolic(2).contains(Point{Eigen::Vector3d(0.5, 0, 0)}));
  Eigen::VectorXd not_pd(4);
  not_pd << 1, 0, 0, -1;
  EXPECT_FALSE(Manifold::spd(2).contains(Point{not_pd}));
  EXPECT_ANY_THROW(Manifold::spd(2).validate(Point{not_pd}));
}

TEST(Geometry, SpdAffineInvariantDistance) {
  const Manifold spd = Manifold::spd(2);
  Eigen::VectorXd a(4);
  a << 2, 0, 0, 3;
  const double expected = std::hypot(std::log(2.0), std::log(3.0));
  EXPECT_NEAR(spd.distance(spd.origin(), Point{a}), expected, 1e-12);
}

TEST(Geometry, ProductDistanceIsPythagorean) {
  const Manifold s2 = Manifold::sphere(2);
  const Manifold h2 = Manifold::hyperbolic(2);
  const Manifold p = Manifold::product({s2, h2});
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Point x = p.random_point(rng);
    const Point y = p.random_point(rng);
    const double ds = s2.distance(Point{x.coords.head(3)}, Point{y.coords.head(3)});
    const double dh = h2.distance(Point{x.coords.tail(3)}, Point{y.coords.tail(3)});
    EXPECT_NEAR(p.distance(x, y), std::hypot(ds, dh), 1e-10);
  }
}

TEST(Geometry, SnAndSphereVolume) {
  EXPECT_NEAR(sn(1.0, 0.3), std::sin(0.3), 1e-15);
  EXPECT_NEAR(sn(-1.0, 0.3), std::sinh(0.3), 1e-15);
  EXPECT_EQ(sn(0.0, 0.3), 0.3);
  EXPECT_NEAR(unit_sphere_volume(1), 2.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(unit_sphere_volume(2), 4.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(log_sn(-1.0, 50.0), std::log(std::sinh(50.0)), 1e-12);
}
