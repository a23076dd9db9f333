#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "coverage/serialize.hpp"

namespace coverage::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("coverage_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "coverage-sim");
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST(CliParsing, GeneratorSpec) {
  const GenSpec g = parse_gen_spec("8x6:0.25:42");
  EXPECT_EQ(g.width, 8);
  EXPECT_EQ(g.height, 6);
  EXPECT_DOUBLE_EQ(g.density, 0.25);
  EXPECT_EQ(g.seed, 42u);
  EXPECT_THROW(parse_gen_spec("8x6:0.25"), UsageError);
  EXPECT_THROW(parse_gen_spec("8by6:0.2:1"), UsageError);
  EXPECT_THROW(parse_gen_spec("1x6:0.2:1"), UsageError);
  EXPECT_THROW(parse_gen_spec("8x6:1.5:1"), UsageError);
}

TEST(CliParsing, BudgetTokens) {
  const Environment env(8, 5, {0, 0});
  EXPECT_EQ(parse_budget("32", env), 32);
  EXPECT_EQ(parse_budget("4l", env), 32);
  EXPECT_EQ(parse_budget("6l", env), 48);
  EXPECT_THROW(parse_budget("l", env), UsageError);
  EXPECT_THROW(parse_budget("4x", env), UsageError);
}

TEST_F(CliTest, RunWritesResultEventsAndRendering) {
  const fs::path map = write("square.map", "..\nS.\n");
  ASSERT_EQ(cli({"run", "--map", map.string(), "--budget", "8", "--out", (dir_ / "out").string()}), kExitOk)
      << err_.str();
  const Json doc = Json::parse(slurp(dir_ / "out" / "result_B8.json"));
  EXPECT_EQ(doc["metrics"]["num_routes"], 1);
  EXPECT_EQ(doc["metrics"]["total_length"], 6);
  EXPECT_EQ(doc["schema"], 1);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "events_B8.jsonl"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "routes_B8.svg"));
}

TEST_F(CliTest, BudgetSweepNeverNeedsMoreRoutes) {
  ASSERT_EQ(cli({"run", "--gen", "10x10:0.2:3", "--budgets", "4l,6l,8l", "--out", (dir_ / "sweep").string(),
                 "--render", "ascii"}),
            kExitOk)
      << err_.str();
  std::vector<int> k;
  for (const char* b : {"40", "60", "80"}) {
    const Json doc = Json::parse(slurp(dir_ / "sweep" / (std::string("result_B") + b + ".json")));
    k.push_back(doc["metrics"]["num_routes"].get<int>());
    EXPECT_TRUE(fs::exists(dir_ / "sweep" / (std::string("routes_B") + b + ".txt")));
  }
  EXPECT_GE(k[0], k[1]);
  EXPECT_GE(k[1], k[2]);
}

TEST_F(CliTest, MissingMapLeavesNoArtifacts) {
  const fs::path out = dir_ / "nothing";
  EXPECT_NE(cli({"run", "--map", (dir_ / "absent.map").string(), "--budget", "8", "--out", out.string()}), kExitOk);
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliTest, RunNeedsExactlyOneSource) {
  EXPECT_EQ(cli({"run", "--budget", "8"}), kExitUsage);
  const fs::path map = write("a.map", "S.\n");
  EXPECT_EQ(cli({"run", "--map", map.string(), "--gen", "4x4:0:1", "--budget", "8"}), kExitUsage);
}

TEST_F(CliTest, OracleOnTinyMap) {
  const fs::path map = write("square.map", "..\nS.\n");
  ASSERT_EQ(cli({"run", "--map", map.string(), "--budget", "4", "--oracle", "--render", "none", "--out",
                 (dir_ / "o").string()}),
            kExitOk);
  EXPECT_NE(out_.str().find("k_opt=1 len_opt=4"), std::string::npos) << out_.str();
  EXPECT_TRUE(fs::exists(dir_ / "o" / "oracle_B4.json"));
  EXPECT_FALSE(fs::exists(dir_ / "o" / "routes_B4.svg"));
}

TEST_F(CliTest, BenchShapeAndDeterminism) {
  for (int s = 1; s <= 5; ++s)
    ASSERT_EQ(cli({"generate", "--gen", "8x8:0.2:" + std::to_string(s), "--out",
                   (dir_ / "corpus" / ("m" + std::to_string(s) + ".map")).string()}),
              kExitOk);
  ASSERT_EQ(cli({"bench", (dir_ / "corpus").string(), "--budget", "32", "--out", (dir_ / "b1").string()}), kExitOk);
  ASSERT_EQ(cli({"bench", (dir_ / "corpus").string(), "--budget", "32", "--out", (dir_ / "b2").string()}), kExitOk);

  const auto stable_columns = [](const std::string& csv) {
    std::istringstream in(csv);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line.substr(0, line.rfind(',')));
    return lines;
  };
  const auto a = stable_columns(slurp(dir_ / "b1" / "bench.csv"));
  const auto b = stable_columns(slurp(dir_ / "b2" / "bench.csv"));
  ASSERT_EQ(a.size(), 7u);  // header, five maps, aggregate
  EXPECT_EQ(a[0], "map,B,n,k,total_length,min_bound,ratio_paths,ratio_length");
  EXPECT_EQ(a[6].rfind("mean,32,", 0), 0u);
  EXPECT_EQ(a, b);
}

TEST_F(CliTest, BenchSkipsUnreadableMaps) {
  write("corpus/good.map", "..\nS.\n");
  write("corpus/bad.map", "S.\n.S\n");
  ASSERT_EQ(cli({"bench", (dir_ / "corpus").string(), "--budget", "8", "--out", dir_.string()}), kExitOk);
  EXPECT_NE(err_.str().find("skipped bad.map"), std::string::npos) << err_.str();
  EXPECT_NE(out_.str().find("good.map"), std::string::npos);
}

TEST_F(CliTest, EmptyCorpus) {
  fs::create_directories(dir_ / "empty");
  EXPECT_EQ(cli({"bench", (dir_ / "empty").string(), "--budget", "8"}), kExitUsage);
  EXPECT_NE(err_.str().find("EmptyCorpus"), std::string::npos);
  EXPECT_THROW(run_bench(dir_ / "empty", {"8"}), EmptyCorpus);
}

TEST_F(CliTest, ValidateExitCodes) {
  const fs::path map = write("square.map", "...\n...\nS..\n");
  ASSERT_EQ(cli({"run", "--map", map.string(), "--budget", "6", "--out", dir_.string(), "--render", "none"}), kExitOk);
  const fs::path result = dir_ / "result_B6.json";
  EXPECT_EQ(cli({"validate", result.string(), "--map", map.string()}), kExitOk) << out_.str();

  Json doc = Json::parse(slurp(result));
  auto& cells = doc["routes"][0]["cells"];
  cells.insert(cells.end() - 1, {Json::array({1, 0}), Json::array({0, 0})});
  cells.insert(cells.end() - 1, {Json::array({1, 0}), Json::array({0, 0})});
  doc["routes"][0]["length"] = cells.size() - 1;
  const fs::path tampered = write("tampered.json", doc.dump());
  EXPECT_EQ(cli({"validate", tampered.string(), "--map", map.string()}), kExitInvalid);
  EXPECT_NE(out_.str().find("FAIL route_length"), std::string::npos) << out_.str();

  doc["schema"] = 7;
  const fs::path future = write("future.json", doc.dump());
  EXPECT_EQ(cli({"validate", future.string(), "--map", map.string()}), kExitUsage);
}

TEST_F(CliTest, RenderFromResult) {
  const fs::path map = write("square.map", "..\nS.\n");
  ASSERT_EQ(cli({"run", "--map", map.string(), "--budget", "4", "--out", dir_.string(), "--render", "none"}), kExitOk);
  ASSERT_EQ(cli({"render", (dir_ / "result_B4.json").string(), "--map", map.string(), "--render", "ascii"}), kExitOk);
  EXPECT_EQ(out_.str(), "11\nS2\n");
}

TEST_F(CliTest, GenerateIsDeterministic) {
  ASSERT_EQ(cli({"generate", "--gen", "6x4:0.3:9"}), kExitOk);
  const std::string first = out_.str();
  ASSERT_EQ(cli({"generate", "--gen", "6x4:0.3:9"}), kExitOk);
  EXPECT_EQ(out_.str(), first);
  EXPECT_EQ(render_map(parse_map(first)), first);
}

TEST_F(CliTest, UnknownFlagIsAUsageError) {
  EXPECT_EQ(cli({"run", "--bogus"}), kExitUsage);
  EXPECT_EQ(cli({}), kExitUsage);
}

}  // namespace
}  // namespace coverage::cli
