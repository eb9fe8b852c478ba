#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "radial_cli/cli.hpp"

using namespace radial;
using namespace radial::cli;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("radial_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return main_entry(args, out_, err_);
  }

  std::string file(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(CliConfig, JsonAndFlagsMerge) {
  const auto j = nlohmann::json::parse(
      R"({"command":"sample","manifold":{"kind":"sphere","m":3},"profile":"vmf:2","n":50,"seed":7})");
  const ExperimentConfig c = parse_config_json(j);
  EXPECT_EQ(c.command, "sample");
  EXPECT_EQ(c.manifold->name(), "sphere:3");
  EXPECT_EQ(c.profile->kind, ProfileKind::kVonMisesFisher);
  EXPECT_EQ(c.profile->beta, 2.0);
  EXPECT_EQ(*c.n, 50u);
  EXPECT_EQ(c.seed, 7u);
  const ExperimentConfig f = parse_config(
      {"rate", "--manifold", "hyperbolic:2", "--profile", "gaussian:1", "--n-grid", "10,20,40",
       "--replicates", "3"});
  EXPECT_EQ(f.n_grid, (std::vector<std::size_t>{10, 20, 40}));
  EXPECT_EQ(f.seed, 42u);
}

TEST(CliConfig, Rejections) {
  EXPECT_THROW(parse_config_json(nlohmann::json::parse(
                   R"({"command":"sample","manifold":"sphere:2","profile":"vmf:1","n":5,"x":1})")),
               ConfigError);
  EXPECT_ANY_THROW(parse_config({"sample", "--manifold", "sphere:2", "--profile", "vmf:-1",
                                 "--n", "5"}));
  EXPECT_ANY_THROW(parse_config({"rate", "--manifold", "sphere:2", "--profile", "vmf:1",
                                 "--n-grid", "10,20,30", "--replicates", "0"}));
  EXPECT_ANY_THROW(parse_config({"sample", "--manifold", "sphere:2", "--profile", "vmf:1"}));
}

TEST_F(CliTest, SampleSetRoundTrip) {
  const Manifold m = Manifold::product({Manifold::sphere(2), Manifold::hyperbolic(2)});
  Rng rng(3);
  SampleSet s{m, {}, {}};
  s.metadata.seed = 3;
  for (int i = 0; i < 20; ++i) s.points.push_back(m.random_point(rng));
  write_sampleset(s, file("s.csv"));
  const SampleSet back = read_sampleset(file("s.csv"));
  EXPECT_EQ(back.manifold.name(), m.name());
  ASSERT_EQ(back.points.size(), s.points.size());
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    EXPECT_EQ(back.points[i].coords, s.points[i].coords);
  }
  EXPECT_EQ(back.metadata.seed, 3u);
}

TEST_F(CliTest, SampleSetReadErrors) {
  {
    std::ofstream o(file("cols.csv"));
    o << "# manifold=sphere dim=2\n1,0,0\n1,0\n";
  }
  try {
    read_sampleset(file("cols.csv"));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2: expected 3 columns"), std::string::npos);
  }
  {
    std::ofstream o(file("num.csv"));
    o << "# manifold=euclidean dim=2\n1,abc\n";
  }
  EXPECT_THROW(read_sampleset(file("num.csv")), ConfigError);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"sample", "--manifold", "sphere:2", "--profile", "vmf:1", "--n", "10", "--out",
                 file("a.csv")}),
            kExitOk);
  EXPECT_EQ(run({"sample", "--manifold", "sphere:2", "--profile", "vmf:1", "--n", "10", "--out",
                 (dir_ / "nope" / "a.csv").string()}),
            kExitIo);
  EXPECT_FALSE(fs::exists(dir_ / "nope"));
  EXPECT_EQ(run({"sample", "--manifold", "sphere:2", "--profile", "vmf:0", "--n", "10"}),
            kExitConfig);
  EXPECT_EQ(run({"fit", "--input", file("missing.csv"), "--profile", "vmf:1"}), kExitIo);
  EXPECT_EQ(run({"teleport"}), kExitConfig);
}

TEST_F(CliTest, CheckReportsIntegrability) {
  EXPECT_EQ(run({"check", "--manifold", "hyperbolic:2", "--profile", "laplacian:0.5"}), kExitOk);
  EXPECT_NE(out_.str().find("integrability: FAIL"), std::string::npos);
  EXPECT_EQ(run({"check", "--manifold", "sphere:2", "--profile", "vmf:1"}), kExitOk);
  EXPECT_NE(out_.str().find("integrability: PASS"), std::string::npos);
}

TEST_F(CliTest, FitAndCsvReports) {
  ASSERT_EQ(run({"sample", "--manifold", "euclidean:2", "--profile", "gaussian:1", "--n", "200",
                 "--out", file("e.csv")}),
            kExitOk);
  ASSERT_EQ(run({"fit", "--input", file("e.csv"), "--profile", "gaussian:1", "--out",
                 file("fit.json")}),
            kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir_ / "fit.json"));
  EXPECT_TRUE(j.at("converged").get<bool>());
  EXPECT_EQ(j.at("alpha_hat").size(), 2u);
  ASSERT_EQ(run({"symmetry", "--manifold", "sphere:2", "--profile", "vmf:1", "--t-grid", "0.3",
                 "--format", "csv", "--out", file("sym.csv")}),
            kExitOk);
  EXPECT_EQ(slurp(dir_ / "sym.csv").rfind("t,", 0), 0u);
}
