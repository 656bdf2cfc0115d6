#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "srscale/cli.hpp"
#include "srscale/matrix_io.hpp"
#include "srscale/report.hpp"
#include "srscale/worked_examples.hpp"
#include "test_support.hpp"

namespace srscale {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "srscale");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("srscale_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const DenseMatrix& m) {
    const std::string p = (dir_ / name).string();
    write_matrix_file(p, m);
    return p;
  }
  std::string text_file(const std::string& name, const std::string& text) {
    const std::string p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, FactorWritesFactorsAndSmallResiduals) {
  auto rng = testing::stream(61);
  const DenseMatrix g = random_matrix(rng, 8, 4);
  const std::string in = file("g.txt", g);
  const CliRun r = run({"factor", in, "--out-s", path("s.txt"), "--out-r", path("r.txt"), "--out-perm",
                     path("p.txt"), "--json", path("f.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const DenseMatrix s = read_matrix_file(path("s.txt"));
  const DenseMatrix rr = read_matrix_file(path("r.txt"));
  std::ifstream pf(path("p.txt"));
  std::vector<Index> perm;
  for (Index k; pf >> k;) perm.push_back(k);
  const SrFactors f{s, rr, perm};
  EXPECT_LE(frobenius_norm(f.permuted(g) - s * rr), 1e-10 * frobenius_norm(g));
  std::ifstream jf(path("f.json"));
  const Json doc = Json::parse(jf);
  EXPECT_LE(doc["reconstruction_residual"].get<double>(), 1e-10);
  EXPECT_LE(doc["structure_residual"].get<double>(), 1e-8);
  EXPECT_NE(r.out.find("reconstruction"), std::string::npos);
}

TEST_F(CliTest, FactorOfEmbeddingGivesSignedIdentity) {
  const std::string in = file("e.txt", canonical_symplectic_embedding(3, 2));
  ASSERT_EQ(run({"factor", in, "--out-r", path("r.txt")}).code, kExitOk);
  const DenseMatrix r = read_matrix_file(path("r.txt"));
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(r(i, j)), i == j ? 1.0 : 0.0, 1e-15);
  }
}

TEST_F(CliTest, FactorErrors) {
  const CliRun odd = run({"factor", file("odd.txt", DenseMatrix(3, 2))});
  EXPECT_EQ(odd.code, kExitInput);
  const CliRun bad = run({"factor", text_file("bad.txt", "2 2\n1 2\n3 oops\n")});
  EXPECT_EQ(bad.code, kExitInput);
  EXPECT_NE(bad.err.find("line 3, column 3"), std::string::npos) << bad.err;
  const CliRun iso = run({"factor", file("iso.txt", DenseMatrix{{1, 0}, {0, 1}, {0, 0}, {0, 0}})});
  EXPECT_EQ(iso.code, kExitBreakdown);
  EXPECT_NE(iso.err.find("pair 0"), std::string::npos) << iso.err;
}

TEST_F(CliTest, ScaleRowSideOnWildRows) {
  const std::string in = file("r.txt", wild_rows_r(0.1));
  const CliRun r = run({"scale", in, "--side", "row", "--json", "-"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json doc = Json::parse(r.out);
  const Json& rep = doc["report"];
  EXPECT_EQ(rep["side"], "row");
  EXPECT_LT(testing::rel_err(rep["kappa_inf_before"].get<double>(), 1.6803e9), 1e-3);
  EXPECT_LT(testing::rel_err(rep["kappa_inf_after"].get<double>(), 1.5829e8), 1e-3);
  EXPECT_DOUBLE_EQ(rep["max_magnitude"].get<double>(), 10.0);
  EXPECT_LT(testing::rel_err(rep["min_magnitude"].get<double>(), 1.4142), 1e-3);
  EXPECT_LT(testing::rel_err(rep["bound_at_matrix_order"].get<double>(), 2.4494e2), 1e-3);
  EXPECT_EQ(rep["blocks"].size(), 3u);
  EXPECT_EQ(doc["provenance"]["source"], in);
  EXPECT_EQ(doc["provenance"]["sign_rule"], "min-abs");
}

TEST_F(CliTest, ScaleColumnSideOnNearOrthogonal) {
  const std::string in = file("s.txt", near_orthogonal_s());
  const CliRun r = run({"scale", in, "--side", "col", "--json", "-"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json rep = Json::parse(r.out)["report"];
  EXPECT_LT(testing::rel_err(rep["kappa_inf_after"].get<double>(), 1.0623), 1e-2);
  EXPECT_TRUE(rep["kappa2_after"].is_number());
}

TEST_F(CliTest, ScaleErrors) {
  DenseMatrix lower = DenseMatrix::identity(4);
  lower(2, 0) = 1.0;
  EXPECT_EQ(run({"scale", file("l.txt", lower), "--side", "row"}).code, kExitInput);
  const std::string r = file("r.txt", wild_rows_r(0.1));
  EXPECT_EQ(run({"scale", r, "--target", "5"}).code, kExitArgument);
  EXPECT_EQ(run({"scale", r, "--target", "12"}).code, kExitOk);
  EXPECT_EQ(run({"scale", r, "--side", "diagonal"}).code, kExitArgument);
  EXPECT_EQ(run({"scale", r, "--sign", "maybe"}).code, kExitArgument);
}

TEST_F(CliTest, ScaleFromG) {
  auto rng = testing::stream(62);
  const std::string in = file("g.txt", random_matrix(rng, 8, 6));
  for (const char* side : {"row", "col"}) {
    const CliRun r = run({"scale", in, "--from-g", "--side", side, "--json", "-"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const Json rep = Json::parse(r.out)["report"];
    EXPECT_NEAR(rep["achieved_norm_max"].get<double>() / rep["achieved_norm_min"].get<double>(), 1.0, 1e-12);
  }
}

TEST_F(CliTest, ExampleTables) {
  const CliRun all = run({"example", "6.1", "--json", "-"});
  ASSERT_EQ(all.code, kExitOk) << all.err;
  EXPECT_EQ(Json::parse(all.out)["table"].size(), 4u);

  const CliRun one = run({"example", "6.2", "--a", "0.5", "--json", "-"});
  ASSERT_EQ(one.code, kExitOk);
  const Json row = Json::parse(one.out)["table"][0];
  EXPECT_LT(testing::rel_err(row["kappa_inf_before"].get<double>(), 55.0), 1e-3);
  EXPECT_LT(testing::rel_err(row["kappa_inf_after"].get<double>(), 135.21), 1e-3);

  const CliRun mod = run({"example", "6.4", "--sign", "plus", "--json", "-"});
  ASSERT_EQ(mod.code, kExitOk);
  const Json doc = Json::parse(mod.out);
  EXPECT_TRUE(doc["provenance"]["printed_precision_input"].get<bool>());
  EXPECT_NEAR(doc["report"]["max_magnitude"].get<double>(), 1.7800, 1e-3);
  EXPECT_NEAR(doc["report"]["min_magnitude"].get<double>(), 1.2168, 1e-3);
  EXPECT_LT(testing::rel_err(doc["report"]["bound_at_matrix_order"].get<double>(), 10.1756), 1e-2);
  EXPECT_LT(testing::rel_err(doc["report"]["kappa_inf_after"].get<double>(), 21.9625), 1e-2);

  const CliRun near = run({"example", "6.3", "--json", "-"});
  ASSERT_EQ(near.code, kExitOk);
  EXPECT_EQ(Json::parse(near.out)["cross_scaling"].size(), 16u);

  EXPECT_EQ(run({"example", "6.3"}).code, kExitOk);
  EXPECT_EQ(run({"example", "6.1", "--a", "1.5"}).code, kExitArgument);
  EXPECT_EQ(run({"example", "6.1", "--a", "0"}).code, kExitArgument);
  EXPECT_EQ(run({"example", "7.0"}).code, kExitArgument);
}

TEST_F(CliTest, EnsembleIsDeterministicAndBounded) {
  const CliRun a = run({"ensemble", "--n-pairs", "3", "--trials", "100", "--seed", "7", "--json", "-"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  const CliRun b = run({"ensemble", "--n-pairs", "3", "--trials", "100", "--seed", "7", "--json", "-"});
  EXPECT_EQ(a.out, b.out);
  const Json doc = Json::parse(a.out);
  EXPECT_LE(doc["max_ratio"].get<double>(), 1.0);
  EXPECT_EQ(doc["violations"].get<int>(), 0);
  EXPECT_GT(doc["row"]["count"].get<int>(), 0);
  const CliRun c = run({"ensemble", "--n-pairs", "3", "--trials", "100", "--seed", "8", "--json", "-"});
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(run({"ensemble", "--trials", "0"}).code, kExitArgument);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitArgument);
  EXPECT_EQ(run({"bogus"}).code, kExitArgument);
  EXPECT_EQ(run({"factor"}).code, kExitArgument);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(ReportJson, RoundTripsWithoutLoss) {
  const ScalingReport r = row_scaling_report(mild_rows_r(0.05));
  const Json doc = scale_document(r, {"x", SignRule::plus, false});
  const Json back = Json::parse(dump(doc));
  EXPECT_EQ(back, doc);
  EXPECT_EQ(back["report"]["bound"].get<double>(), r.bound);
  EXPECT_EQ(back["report"]["blocks"][1]["f"].get<double>(), r.scaling.block(1).f);
}

}  // namespace
}  // namespace srscale
