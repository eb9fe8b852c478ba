#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "radial/errors.hpp"
#include "radial/profiles.hpp"

using namespace radial;

TEST(Profiles, BuiltinValues) {
  const auto g = RadialProfile::make(ProfileKind::kGaussian, 2.0);
  EXPECT_DOUBLE_EQ(g(3.0), 18.0);
  EXPECT_DOUBLE_EQ(g.derivative(3.0), 12.0);
  const auto l = RadialProfile::make(ProfileKind::kLaplacian, 0.5);
  EXPECT_DOUBLE_EQ(l(4.0), 2.0);
  const auto p = RadialProfile::make(ProfileKind::kPower, 1.0, 3.0);
  EXPECT_DOUBLE_EQ(p(2.0), 8.0);
  const auto v = RadialProfile::make(ProfileKind::kVonMisesFisher, 3.0);
  EXPECT_NEAR(v(0.7), 3.0 * (1.0 - std::cos(0.7)), 1e-15);
}

TEST(Profiles, RejectsBadParameters) {
  EXPECT_THROW(RadialProfile::make(ProfileKind::kGaussian, -1.0), ParameterError);
  EXPECT_THROW(RadialProfile::make(ProfileKind::kGaussian, 0.0), ParameterError);
  EXPECT_THROW(RadialProfile::make(ProfileKind::kPower, 1.0, 1.0), ParameterError);
  EXPECT_THROW(parse_profile_kind("cauchy"), ParameterError);
}

TEST(Profiles, CustomTableInterpolatesMonotonically) {
  const auto c = RadialProfile::custom({0, 1, 2, 3}, {0, 1, 4, 9});
  EXPECT_NEAR(c(2.0), 4.0, 1e-12);
  double prev = c(0.0);
  for (int i = 1; i <= 300; ++i) {
    const double v = c(i * 0.01);
    EXPECT_GE(v, prev - 1e-14);
    prev = v;
  }
  EXPECT_THROW(RadialProfile::custom({0, 1, 2, 3}, {0, 2, 1, 3}), ParameterError);
  EXPECT_THROW(RadialProfile::custom({1, 2, 3, 4}, {0, 1, 2, 3}), ParameterError);
}

TEST(Profiles, CustomCsvReportsLine) {
  const auto path = std::filesystem::temp_directory_path() / "radial_profiles_bad.csv";
  {
    std::ofstream o(path);
    o << "r,phi\n0,0\n1,2\n2,1\n";
  }
  try {
    RadialProfile::custom_from_csv(path);
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find(path.string() + ":4"), std::string::npos) << e.what();
  }
  std::filesystem::remove(path);
}

TEST(Profiles, IntegrabilityClosedForm) {
  const Manifold h2 = Manifold::hyperbolic(2);
  const Manifold h3 = Manifold::hyperbolic(3);
  EXPECT_TRUE(check_integrability(RadialProfile::make(ProfileKind::kGaussian, 0.1), h2).pass);
  EXPECT_TRUE(check_integrability(RadialProfile::make(ProfileKind::kLaplacian, 1.5), h2).pass);
  EXPECT_FALSE(check_integrability(RadialProfile::make(ProfileKind::kLaplacian, 0.5), h2).pass);
  EXPECT_FALSE(check_integrability(RadialProfile::make(ProfileKind::kLaplacian, 2.0), h3).pass);
  EXPECT_TRUE(check_integrability(RadialProfile::make(ProfileKind::kLaplacian, 2.5), h3).pass);
  EXPECT_TRUE(
      check_integrability(RadialProfile::make(ProfileKind::kLaplacian, 0.01), Manifold::sphere(4))
          .pass);
}

TEST(Profiles, CustomIntegrabilityIndeterminateOnFlatTail) {
  const auto flat = RadialProfile::custom({0, 1, 2, 3}, {0, 0.1, 0.2, 0.3});
  EXPECT_THROW(check_integrability(flat, Manifold::hyperbolic(2)), IndeterminateError);
}

TEST(Profiles, Regularity) {
  const Manifold s2 = Manifold::sphere(2);
  const auto g = check_regularity(RadialProfile::make(ProfileKind::kGaussian, 1.0), s2);
  EXPECT_TRUE(g.lipschitz_ok);
  EXPECT_TRUE(g.strictly_increasing_ok);
  const auto v = check_regularity(RadialProfile::make(ProfileKind::kVonMisesFisher, 1.0), s2);
  EXPECT_TRUE(v.lipschitz_ok);
  const auto step = check_regularity(RadialProfile::custom({0, 1, 2, 3}, {0, 1, 1, 2}), s2);
  EXPECT_FALSE(step.strictly_increasing_ok);
}

TEST(Profiles, WithBetaScales) {
  const auto g = RadialProfile::make(ProfileKind::kGaussian, 1.0);
  EXPECT_DOUBLE_EQ(g.with_beta(3.0)(2.0), 12.0);
  EXPECT_DOUBLE_EQ(g.with_beta(3.0).base(2.0), 4.0);
}
