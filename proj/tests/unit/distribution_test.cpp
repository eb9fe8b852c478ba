#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "radial/distribution.hpp"
#include "radial/errors.hpp"
#include "radial/quadrature.hpp"

using namespace radial;

namespace {

RadialProfile gaussian(double b) { return RadialProfile::make(ProfileKind::kGaussian, b); }
RadialProfile vmf(double b) { return RadialProfile::make(ProfileKind::kVonMisesFisher, b); }

}  // namespace

TEST(Quadrature, PolynomialAndZeroIntegrands) {
  const QuadResult r = integrate([](double x) { return x * x * x; }, 0.0, 2.0);
  EXPECT_NEAR(r.value, 4.0, 1e-13);
  EXPECT_TRUE(r.converged);
  const QuadResult z = integrate([](double) { return 0.0; }, 0.0, 1.0);
  EXPECT_EQ(z.value, 0.0);
  EXPECT_TRUE(z.converged);
}

TEST(Normalizer, ClosedForms) {
  EXPECT_NEAR(normalizing_constant(Manifold::euclidean(1), gaussian(1.0)),
              0.5 * std::log(std::numbers::pi), 1e-12);
  EXPECT_NEAR(normalizing_constant(Manifold::euclidean(3), gaussian(2.0)),
              1.5 * std::log(std::numbers::pi / 2.0), 1e-11);
  for (double b : {0.5, 1.0, 2.0, 5.0}) {
    const double exact = std::log(2.0 * std::numbers::pi * -std::expm1(-2.0 * b) / b);
    EXPECT_NEAR(normalizing_constant(Manifold::sphere(2), vmf(b)), exact, 1e-12);
  }
}

TEST(Normalizer, UnsupportedAndNonIntegrable) {
  EXPECT_THROW(normalizing_constant(Manifold::spd(2), gaussian(1.0)), UnsupportedError);
  EXPECT_THROW(normalizing_constant(Manifold::hyperbolic(2),
                                    RadialProfile::make(ProfileKind::kLaplacian, 0.5)),
               DomainError);
}

TEST(Distribution, CdfQuantileInverse) {
  const Manifold h2 = Manifold::hyperbolic(2);
  const RadialDistribution d(h2, h2.origin(), gaussian(1.0));
  for (double u : {0.01, 0.1, 0.5, 0.9, 0.999}) {
    EXPECT_NEAR(d.radial_cdf(d.radial_quantile(u)).probability, u, 1e-9);
  }
  EXPECT_TRUE(d.radial_cdf(1e6).clamped);
  EXPECT_EQ(d.radial_cdf(1e6).probability, 1.0);
}

TEST(Distribution, DensityIntegratesToOne) {
  const Manifold s2 = Manifold::sphere(2);
  Rng rng(1);
  const RadialDistribution d(s2, s2.random_point(rng), vmf(2.0));
  const auto G = [&](double ra, double) { return std::exp(-d.profile()(ra) - d.log_z()); };
  const QuadResult r = two_center_integral(s2, d.center(), s2.random_point(rng),
                                           std::numbers::pi, G, 1e-10);
  EXPECT_NEAR(r.value, 1.0, 1e-9);
}

TEST(Distribution, SamplingIsDeterministic) {
  const Manifold s3 = Manifold::sphere(3);
  const RadialDistribution d(s3, s3.origin(), vmf(1.5));
  const SampleSet a = d.sample(100, 9);
  const SampleSet b = d.sample(100, 9);
  const SampleSet c = d.sample(100, 10);
  ASSERT_EQ(a.points.size(), 100u);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].coords, b.points[i].coords);
    EXPECT_TRUE(s3.contains(a.points[i]));
  }
  EXPECT_NE(a.points[0].coords, c.points[0].coords);
  EXPECT_FALSE(a.metadata.approximate);
}

TEST(Distribution, EuclideanGaussianVariance) {
  const Manifold e3 = Manifold::euclidean(3);
  const SampleSet s = RadialDistribution(e3, e3.origin(), gaussian(1.0)).sample(100000, 21);
  for (int k = 0; k < 3; ++k) {
    double sum = 0.0;
    double sq = 0.0;
    for (const Point& x : s.points) {
      sum += x.coords[k];
      sq += x.coords[k] * x.coords[k];
    }
    const double n = static_cast<double>(s.points.size());
    const double var = (sq - sum * sum / n) / (n - 1.0);
    EXPECT_GT(var, 0.48);
    EXPECT_LT(var, 0.52);
  }
}

TEST(Distribution, SpdUsesFlaggedMcmc) {
  const Manifold spd = Manifold::spd(2);
  const RadialDistribution d(spd, spd.origin(), gaussian(1.0));
  EXPECT_FALSE(d.has_normalizer());
  EXPECT_THROW(d.log_z(), UnsupportedError);
  const SampleSet s = d.sample(200, 4);
  EXPECT_TRUE(s.metadata.approximate);
  EXPECT_GT(s.metadata.acceptance_rate, 0.1);
  EXPECT_LT(s.metadata.acceptance_rate, 0.7);
  for (const Point& x : s.points) EXPECT_TRUE(spd.contains(x));
}

TEST(Divergence, VmfKlMatchesClosedForm) {
  const Manifold s2 = Manifold::sphere(2);
  const RadialDistribution p(s2, s2.origin(), vmf(1.0));
  const Tangent u = s2.project_tangent(s2.origin(), Eigen::VectorXd::Unit(3, 1));
  const Point qc = s2.exp_map(s2.origin(), u.scaled(0.5 / s2.tangent_norm(u)));
  const RadialDistribution q(s2, qc, vmf(1.0));
  const DivergenceResult kl = kl_divergence(p, q);
  EXPECT_NEAR(kl.value, vmf_kl_closed_form(1.0, 2, 0.5), 1e-10);
  EXPECT_NEAR(kl.value, 0.038320977689, 1e-10);
  DivergenceOptions mc;
  mc.method = DivergenceMethod::kMonteCarlo;
  mc.mc_samples = 200000;
  const DivergenceResult kl_mc = kl_divergence(p, q, mc);
  EXPECT_NEAR(kl_mc.value, kl.value, 5.0 * kl_mc.std_error);
}

TEST(Divergence, HellingerSelfAndMismatch) {
  const Manifold h2 = Manifold::hyperbolic(2);
  const RadialDistribution p(h2, h2.origin(), gaussian(1.0));
  EXPECT_LT(hellinger_distance(p, p).value, 1e-12);
  const RadialDistribution q(Manifold::sphere(2), Manifold::sphere(2).origin(), vmf(1.0));
  EXPECT_THROW(kl_divergence(p, q), UnsupportedError);
}

TEST(Divergence, VmfResultantLimits) {
  EXPECT_NEAR(vmf_mean_resultant(1e-6, 2), 0.0, 1e-5);
  EXPECT_GT(vmf_mean_resultant(50.0, 2), 0.97);
  EXPECT_NEAR(vmf_mean_resultant(2.0, 2), 1.0 / std::tanh(2.0) - 0.5, 1e-10);
}
