#include <gtest/gtest.h>

#include <cmath>

#include "radial/errors.hpp"
#include "radial/experiments.hpp"
#include "radial/nets.hpp"

using namespace radial;

namespace {

RadialProfile gaussian(double b) { return RadialProfile::make(ProfileKind::kGaussian, b); }
RadialProfile vmf(double b) { return RadialProfile::make(ProfileKind::kVonMisesFisher, b); }

}  // namespace

TEST(SlopeFit, ExactPowerLaw) {
  std::vector<std::pair<double, double>> pts;
  for (double n : {10.0, 100.0, 1000.0}) pts.emplace_back(n, 3.0 / std::sqrt(n));
  const SlopeFit f = fit_loglog_slope(pts);
  EXPECT_NEAR(f.slope, -0.5, 1e-12);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
  EXPECT_THROW(fit_loglog_slope({{1, 1}, {2, 2}}), UsageError);
  EXPECT_THROW(fit_loglog_slope({{1, 1}, {2, 0}, {3, 1}}), UsageError);
}

TEST(Quantiles, TypeSeven) {
  const Quantiles q = quantiles({4, 1, 3, 2, 5});
  EXPECT_DOUBLE_EQ(q.median, 3.0);
}

TEST(RateExperiment, DeterministicAndShrinking) {
  const Manifold s2 = Manifold::sphere(2);
  RateConfig cfg{s2, vmf(2.0), s2.origin(), {50, 200, 800}, 12};
  cfg.seed = 5;
  const RateReport a = run_rate_experiment(cfg);
  const RateReport b = run_rate_experiment(cfg);
  ASSERT_EQ(a.rows.size(), 3u);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].geodesic.median, b.rows[i].geodesic.median);
  }
  EXPECT_GT(a.rows.front().geodesic.median, a.rows.back().geodesic.median);
  EXPECT_LT(a.geodesic_fit.slope, 0.0);
  EXPECT_FALSE(a.flagged);
}

TEST(RateExperiment, JointColumns) {
  const Manifold s2 = Manifold::sphere(2);
  RateConfig cfg{s2, vmf(2.0), s2.origin(), {100, 200, 400}, 6, true};
  const RateReport r = run_rate_experiment(cfg);
  ASSERT_TRUE(r.combined_fit.has_value());
  ASSERT_TRUE(r.rows[0].beta_error.has_value());
  EXPECT_GE(r.rows[0].combined->median, r.rows[0].geodesic.median);
}

TEST(RateExperiment, RejectsEmptyGrid) {
  const Manifold s2 = Manifold::sphere(2);
  RateConfig cfg{s2, vmf(2.0), s2.origin(), {}, 4};
  EXPECT_ANY_THROW(run_rate_experiment(cfg));
}

TEST(Symmetry, ZeroGapOnConstantCurvature) {
  for (const auto& rows : {symmetry_scan(Manifold::sphere(2), vmf(1.0), {0.2, 0.6}),
                           symmetry_scan(Manifold::hyperbolic(2), gaussian(1.0), {0.2, 0.6})}) {
    for (const SymmetryRow& r : rows) {
      EXPECT_LT(r.delta, 1e-8);
      EXPECT_GT(r.i_plus, 0.0);
      EXPECT_TRUE(r.converged);
    }
  }
}

TEST(LocalKl, QuadraticGrowth) {
  const KlScan scan = kl_local_scan(Manifold::hyperbolic(2), gaussian(1.0), {0.05, 0.1, 0.2});
  EXPECT_NEAR(scan.fit.slope, 2.0, 0.05);
}

TEST(Nets, CoverAndPackInvariants) {
  const Manifold s2 = Manifold::sphere(2);
  const NetResult cover = greedy_net(s2, NetRegion::full(), 0.5, NetMode::kCover, 1);
  EXPECT_EQ(cover.cover_misses, 0u);
  for (std::size_t i = 0; i < cover.points.size(); ++i) {
    for (std::size_t j = i + 1; j < cover.points.size(); ++j) {
      EXPECT_GT(s2.distance(cover.points[i], cover.points[j]), 0.5);
    }
  }
  NetOptions opts;
  opts.max_points = 8;
  const NetResult capped =
      greedy_net(s2, NetRegion::ball(s2.origin(), 0.4), 0.1, NetMode::kPack, 2, opts);
  EXPECT_EQ(capped.count, 8u);
  EXPECT_FALSE(capped.saturated);
  for (const Point& p : capped.points) EXPECT_LE(s2.distance(p, s2.origin()), 0.4 + 1e-12);
  const NetResult whole = greedy_net(s2, NetRegion::full(), 4.0, NetMode::kCover, 3);
  EXPECT_EQ(whole.count, 1u);
}

TEST(Nets, RejectsNonSphere) {
  EXPECT_ANY_THROW(greedy_net(Manifold::hyperbolic(2), NetRegion::full(), 0.5, NetMode::kCover, 1));
}

TEST(Fano, BoundFormula) {
  EXPECT_NEAR(fano_lower_bound(0.1, 0.0, 4, 10), 0.1 * (1.0 - std::log(2.0) / std::log(4.0)),
              1e-15);
  EXPECT_EQ(fano_lower_bound(0.1, 10.0, 4, 10), 0.0);
  const FanoReport r = fano_vmf_pipeline(3, 1000, 2.0, 1);
  EXPECT_TRUE(r.net_complete);
  EXPECT_EQ(r.set_size, 8u);
  EXPECT_GT(r.bound, 0.0);
}

TEST(DimensionSweep, Normalizations) {
  SweepConfig cfg{{2, 4}, 2.0, 200, 8};
  const auto rows = dimension_sweep(cfg);
  ASSERT_EQ(rows.size(), 2u);
  for (const SweepRow& r : rows) {
    EXPECT_NEAR(r.sqrt_m_normalized, r.error.median * std::sqrt(200.0) / std::sqrt(double(r.m)),
                1e-12);
    EXPECT_NEAR(r.m_normalized, r.error.median * std::sqrt(200.0) / r.m, 1e-12);
  }
}
