#include <filesystem>
#include <fstream>
#include <sstream>

#include "feww_cli.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace feww;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("feww_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_F(CliTest, GenerateRunAndVerify) {
  auto g = run({"gen", "planted", "--n", "64", "--m", "128", "--d", "16", "--background", "3",
                "--seed", "7", "-o", path("s.txt")});
  ASSERT_EQ(g.code, 0) << g.err;
  auto hub = g.out.substr(4, g.out.find('\n') - 4);

  auto r = run({"feww-ins", "--n", "64", "--m", "128", "--d", "16", "--alpha", "2", "--seed",
                "3", "--stream", path("s.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("result " + hub + " 8\nwitnesses ", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("\nspace="), std::string::npos);
  std::ofstream(path("r.txt")) << r.out;

  auto v = run({"verify", "--stream", path("s.txt"), "--result", path("r.txt")});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out.rfind("sound center " + hub, 0), 0u) << v.out;

  std::ofstream(path("bad.txt")) << "result " << hub << " 1\nwitnesses 200\n";
  EXPECT_EQ(run({"verify", "--stream", path("s.txt"), "--result", path("bad.txt")}).code, 1);
}

TEST_F(CliTest, InsertionDeletionReportsSamplers) {
  ASSERT_EQ(run({"gen", "dynamic", "--n", "20", "--m", "16", "--d", "8", "--heavy", "2",
                 "--heavy-degree", "2", "--churn", "40", "--seed", "1", "-o", path("d.txt")})
                .code,
            0);
  auto r = run({"feww-del", "--n", "20", "--m", "16", "--d", "8", "--alpha", "2", "--delta",
                "0.001", "--seed", "4", "--stream", path("d.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto counts = InsDelConfig{20, 16, 8, 2, 4, 0.001}.sampler_counts();
  std::ostringstream expect;
  expect << "samplers=" << counts.vertex_samples << ',' << counts.per_vertex_samplers << ','
         << counts.edge_samplers << '\n';
  EXPECT_NE(r.out.find(expect.str()), std::string::npos) << r.out;
  EXPECT_EQ(r.out.rfind("result ", 0), 0u);
}

TEST_F(CliTest, InsertionOnlyRejectsDeletions) {
  ASSERT_EQ(run({"gen", "dynamic", "--n", "10", "--m", "8", "--d", "4", "--churn", "5",
                 "--seed", "1", "-o", path("d.txt")})
                .code,
            0);
  auto r = run({"feww-ins", "--n", "10", "--m", "8", "--d", "4", "--alpha", "1", "--seed", "1",
                "--stream", path("d.txt")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("DeletionUnsupported"), std::string::npos);
}

TEST_F(CliTest, BvlWritesSidecar) {
  auto g = run({"gen", "bvl", "--p", "3", "--n", "4", "--k", "5", "--seed", "2", "-o",
                path("b.txt")});
  ASSERT_EQ(g.code, 0) << g.err;
  std::ifstream truth(path("b.txt.truth"));
  ASSERT_TRUE(truth);
  auto inst = read_bvl_sidecar(truth);
  EXPECT_EQ(gen_bvl_graph(inst).stream, cli::load_stream(path("b.txt")));
}

TEST_F(CliTest, StarCommand) {
  ASSERT_EQ(run({"gen", "star", "--n", "16", "--d", "8", "--noise", "4", "--seed", "3", "-o",
                 path("g.txt")})
                .code,
            0);
  auto r = run({"star", "--n", "16", "--alpha", "2", "--epsilon", "1", "--mode", "ins",
                "--seed", "3", "--stream", path("g.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ofstream(path("r.txt")) << r.out;
  EXPECT_NE(r.out.find("guess="), std::string::npos);
  EXPECT_EQ(run({"verify", "--general", "--stream", path("g.txt"), "--result", path("r.txt"),
                 "--threshold", "2"})
                .code,
            0);
}

TEST_F(CliTest, ExperimentWritesCsv) {
  std::ofstream(path("e.cfg")) << "generator=planted\nalgorithm=ins\nn=32\nm=64\nd=8\nalpha=2\n"
                               << "trials=3\nseed=4\noutput=" << path("e.csv") << "\n";
  auto r = run({"experiment", "--config", path("e.cfg")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("success_rate="), std::string::npos);
  EXPECT_NE(r.out.find("space_audit=pass"), std::string::npos);
  auto csv = slurp(path("e.csv"));
  EXPECT_EQ(csv.rfind(std::string(kCsvHeader) + "\n0,", 0), 0u) << csv;
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST_F(CliTest, BadArguments) {
  EXPECT_NE(run({}).code, 0);
  EXPECT_NE(run({"gen", "nonsense", "--n", "3", "--seed", "1", "-o", path("x")}).code, 0);
  EXPECT_NE(run({"feww-ins", "--n", "3"}).code, 0);
  EXPECT_EQ(run({"feww-ins", "--n", "3", "--m", "3", "--d", "1", "--alpha", "1", "--seed", "1",
                 "--stream", path("missing.txt")})
                .code,
            2);
}
