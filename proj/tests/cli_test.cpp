#include <random>
#include <sstream>

#include "cli_runner.hpp"
#include "gtest/gtest.h"
#include "partmine/json_io.hpp"
#include "partmine/synthesis.hpp"
#include "test_support.hpp"

namespace partmine {
namespace {

using testing::CliResult;
using testing::read_file;
using testing::run_cli;
using testing::TempDir;

std::string dataset_text(const TransactionDataset& ds) {
  std::ostringstream s;
  write_dataset(s, ds);
  return s.str();
}

TransactionDataset small_dataset(std::uint64_t seed, std::size_t max_tx = 300) {
  std::mt19937_64 rng(seed);
  return testing::random_dataset(rng, max_tx, 8);
}

TEST(Cli, MineMatchesLibraryReport) {
  TempDir dir("cli-mine");
  const TransactionDataset ds = small_dataset(11);
  const auto data = dir.write("data.txt", dataset_text(ds));
  const CliResult r = run_cli("mine " + data.string() + " --minsupport 0.3 --segments 3", dir.path);
  ASSERT_EQ(r.status, 0) << r.err;

  SynthesisConfig cfg;
  cfg.minsupport = Rational(3, 10);
  const auto locals = mine_partition(partition_count(ds, 3), SupportThreshold(cfg.minsupport), 1);
  EXPECT_EQ(r.out, dump_pretty(to_json(classify(synthesize(locals, cfg), cfg))));
}

TEST(Cli, SingleSegmentOracleRateIsOne) {
  TempDir dir("cli-oracle");
  const auto data = dir.write("data.txt", dataset_text(small_dataset(12)));
  const auto out = dir.path / "report.json";
  const CliResult r = run_cli("mine " + data.string() + " --minsupport 1/4 --segments 1 --oracle --out " +
                                  out.string(),
                              dir.path);
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const Json j = Json::parse(read_file(out));
  EXPECT_EQ(rational_from_json(j.at("approximation_rate")), Rational(1));
}

TEST(Cli, UsageErrorsExitTwo) {
  TempDir dir("cli-usage");
  const auto data = dir.write("data.txt", "1 2\n2 3\n");
  CliResult r = run_cli("mine " + data.string() + " --minsupport 1.5 --segments 1", dir.path);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("minsupport"), std::string::npos);
  r = run_cli("anytime " + data.string() + " --minsupport 0.5 --sample-size 1 --rounds 0 --seed 1",
              dir.path);
  EXPECT_EQ(r.status, 2);
  r = run_cli("mine " + data.string() + " --minsupport 0.5", dir.path);
  EXPECT_EQ(r.status, 2);
  r = run_cli("vote 6-4", dir.path);
  EXPECT_EQ(r.status, 2);
  r = run_cli("tier --records 10 --hot 0.9 --warm 0.2", dir.path);
  EXPECT_EQ(r.status, 2);
  r = run_cli("frobnicate", dir.path);
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(run_cli("--help", dir.path).status, 0);
}

TEST(Cli, RuntimeErrorsExitOne) {
  TempDir dir("cli-runtime");
  CliResult r = run_cli("tier " + (dir.path / "missing.csv").string() + " --records 10", dir.path);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("missing.csv"), std::string::npos);

  const auto bad = dir.write("bad.txt", "1 2\n3 x\n");
  r = run_cli("mine " + bad.string() + " --minsupport 0.5 --segments 1", dir.path);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);

  const auto tree = dir.write("tree.json", R"({"node_id": "root", "children": [{"node_id": "orphan"}]})");
  r = run_cli("fuse " + tree.string() + " --minsupport 0.5 --out-dir " + (dir.path / "out").string(),
              dir.path);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("orphan"), std::string::npos);

  const auto data = dir.write("data.txt", "1 2\n2 3\n");
  r = run_cli("anytime " + data.string() + " --minsupport 0.5 --sample-size 3 --rounds 1 --seed 1",
              dir.path);
  EXPECT_EQ(r.status, 1);
}

TEST(Cli, ExhaustiveAnytimeSamplesAreExact) {
  TempDir dir("cli-anytime");
  const TransactionDataset ds = small_dataset(13, 80);
  const auto data = dir.write("data.txt", dataset_text(ds));
  const std::string args = "anytime " + data.string() + " --minsupport 0.3 --sample-size " +
                           std::to_string(ds.size()) + " --rounds 4 --seed 9";
  const CliResult first = run_cli(args, dir.path);
  ASSERT_EQ(first.status, 0) << first.err;
  std::istringstream lines(first.out);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    const RoundRecord rec = round_record_from_json(Json::parse(line));
    EXPECT_EQ(rec.round, ++count);
    EXPECT_EQ(rec.rate, Rational(1));
  }
  EXPECT_EQ(count, 4u);
  EXPECT_EQ(run_cli(args, dir.path).out, first.out);
}

TEST(Cli, SingleLeafFuseEqualsSingleSegmentMine) {
  TempDir dir("cli-fuse");
  const auto data = dir.write("leaf.txt", dataset_text(small_dataset(14)));
  const auto tree = dir.write("tree.json", R"({"node_id": "only", "dataset_path": "leaf.txt"})");
  const auto out = dir.path / "fused";
  CliResult r = run_cli("fuse " + tree.string() + " --minsupport 0.3 --out-dir " + out.string(), dir.path);
  ASSERT_EQ(r.status, 0) << r.err;
  r = run_cli("mine " + data.string() + " --minsupport 0.3 --segments 1", dir.path);
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(read_file(out / "root.json"), r.out);
  EXPECT_EQ(read_file(out / "nodes" / "only.json"), r.out);
}

TEST(Cli, ClusterIdenticalLeaves) {
  TempDir dir("cli-cluster");
  const std::string text = dataset_text(small_dataset(15));
  dir.write("a.txt", text);
  dir.write("b.txt", text);
  const auto tree = dir.write("tree.json", R"({"node_id": "root", "children": [
      {"node_id": "a", "dataset_path": "a.txt"}, {"node_id": "b", "dataset_path": "b.txt"}]})");
  const auto out = dir.path / "fused";
  const CliResult r = run_cli("fuse " + tree.string() + " --minsupport 0.3 --cluster --threshold 1.0 --out-dir " +
                                  out.string(),
                              dir.path);
  ASSERT_EQ(r.status, 0) << r.err;
  const Json j = Json::parse(read_file(out / "clusters.json"));
  EXPECT_EQ(j.at("clusters"), Json::parse(R"([["a", "b"]])"));
  EXPECT_EQ(read_file(out / "nodes" / "a.json"), read_file(out / "nodes" / "b.json"));
}

TEST(Cli, VoteOutput) {
  TempDir dir("cli-vote");
  const CliResult r = run_cli("vote 6:4 6:4 0:6", dir.path);
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out,
            "structural winner: A (per-source wins 2:1)\n"
            "pooled: 12:14 winner B\n"
            "pooling disagrees with the per-source outcome\n");
  const Json j = Json::parse(run_cli("vote 6:4 6:4 0:6 --json", dir.path).out);
  EXPECT_EQ(j.at("winner"), "A");
}

TEST(Cli, TierDefaultsAndQuarterCuts) {
  TempDir dir("cli-tier");
  const auto empty = dir.write("empty.csv", "record_id,timestamp\n");
  CliResult r = run_cli("tier " + empty.string() + " --records 100", dir.path);
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::size_t epochs = 0;
  while (std::getline(lines, line)) {
    const TierAssignment a = tier_assignment_from_json(Json::parse(line));
    EXPECT_EQ(a.epoch, epochs++);
    EXPECT_EQ(a.hot.size(), 5u);
    EXPECT_EQ(a.warm.size(), 30u);
    EXPECT_EQ(a.cold.size(), 65u);
  }
  EXPECT_EQ(epochs, 2u);

  std::string csv = "record_id,timestamp\n";
  for (int r0 = 0; r0 < 10; ++r0)
    for (int h = 0; h < (r0 < 5 ? 10 : 5); ++h) csv += std::to_string(r0) + ",1\n";
  const auto log = dir.write("log.csv", csv);
  const auto out = dir.path / "epochs";
  r = run_cli("tier " + log.string() + " --records 20 --hot 0.25 --warm 0.25 --out-dir " + out.string(),
              dir.path);
  ASSERT_EQ(r.status, 0) << r.err;
  const TierAssignment a = tier_assignment_from_json(Json::parse(read_file(out / "epoch_1.json")));
  EXPECT_EQ(a.hot, (std::vector<RecordId>{0, 1, 2, 3, 4}));
  EXPECT_EQ(a.warm, (std::vector<RecordId>{5, 6, 7, 8, 9}));
}

TEST(Cli, OutputIndependentOfThreadCount) {
  TempDir dir("cli-threads");
  const auto data = dir.write("data.txt", dataset_text(testing::anytime_fixture()));
  for (const std::string args :
       {"mine " + data.string() + " --minsupport 0.2 --segments 5",
        "anytime " + data.string() + " --minsupport 0.2 --sample-size 50 --rounds 6 --seed 3"}) {
    const CliResult one = run_cli("--threads 1 " + args, dir.path);
    ASSERT_EQ(one.status, 0) << one.err;
    EXPECT_EQ(run_cli("--threads 4 " + args, dir.path).out, one.out);
    EXPECT_EQ(run_cli(args, dir.path, "PARTMINE_THREADS=3").out, one.out);
  }
}

}  // namespace
}  // namespace partmine
