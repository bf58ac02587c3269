// partmine: partition-based frequent pattern mining from the command line.
//
// Exit status: 0 success, 1 runtime failure, 2 invalid arguments.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "partmine/anytime.hpp"
#include "partmine/dataset.hpp"
#include "partmine/error.hpp"
#include "partmine/json_io.hpp"
#include "partmine/miner.hpp"
#include "partmine/multisource.hpp"
#include "partmine/parallel.hpp"
#include "partmine/synthesis.hpp"
#include "partmine/tiering.hpp"

namespace fs = std::filesystem;
using namespace partmine;

namespace {

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

const CLI::Validator kAtLeastOne(
    [](std::string& value) -> std::string {
      return value.find_first_not_of("0123456789") == std::string::npos &&
                     value.find_first_not_of('0') != std::string::npos
                 ? std::string()
                 : "must be an integer >= 1, got '" + value + "'";
    },
    "INT>=1");

// Raised for values that parse but violate a module invariant.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational rational_arg(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw UsageError(flag + ": '" + text + "' is not a number");
  }
}

template <typename Validate>
void check(Validate&& validate) {
  try {
    validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void write_output(const std::optional<fs::path>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path->string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path->string() + "'");
}

struct SynthesisFlags {
  std::string minsupport;
  std::string global_coverage = "0.5";
  std::string exceptional_multiplier = "2";
  std::string exceptional_coverage = "0.2";
  std::string trend_slope = "0.05";
  std::string trend_corr = "0.8";
  std::string missing_policy = "Midpoint";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--minsupport", minsupport,
                    "Minimum support in (0, 1], e.g. 0.5 or 1/3")
        ->required();
    cmd->add_option("--global-coverage", global_coverage,
                    "Fraction of segments a Global pattern must be frequent in")
        ->capture_default_str();
    cmd->add_option("--exceptional-multiplier", exceptional_multiplier,
                    "Exceptional patterns reach this multiple of minsupport")
        ->capture_default_str();
    cmd->add_option("--exceptional-coverage", exceptional_coverage,
                    "Exceptional patterns cover at most this fraction of segments")
        ->capture_default_str();
    cmd->add_option("--trend-slope", trend_slope,
                    "Minimum |support change| per segment for a Trend")
        ->capture_default_str();
    cmd->add_option("--trend-corr", trend_corr,
                    "Minimum |rank correlation| for a Trend")
        ->capture_default_str();
    cmd->add_option("--missing-policy", missing_policy,
                    "Estimate for unreported supports")
        ->check(CLI::IsMember({"LowerBound", "UpperBound", "Midpoint"}))
        ->capture_default_str();
  }

  SynthesisConfig build() const {
    SynthesisConfig cfg;
    cfg.minsupport = rational_arg("--minsupport", minsupport);
    cfg.global_coverage_fraction = rational_arg("--global-coverage", global_coverage);
    cfg.exceptional_support_multiplier =
        rational_arg("--exceptional-multiplier", exceptional_multiplier);
    cfg.exceptional_coverage_fraction =
        rational_arg("--exceptional-coverage", exceptional_coverage);
    cfg.trend_min_slope = rational_arg("--trend-slope", trend_slope);
    cfg.trend_min_rank_corr = rational_arg("--trend-corr", trend_corr);
    check([&] { cfg.missing_support_policy = parse_missing_support_policy(missing_policy); });
    check([&] { cfg.validate(); });
    return cfg;
  }
};

struct MineArgs {
  std::string dataset;
  SynthesisFlags synthesis;
  std::size_t segments = 0;
  std::size_t segment_size = 0;
  std::optional<std::string> out;
  bool oracle = false;
  std::size_t max_length = 0;
};

int run_mine(const MineArgs& args, std::size_t threads) {
  const SynthesisConfig cfg = args.synthesis.build();
  if (args.segments == 0 && args.segment_size == 0)
    throw UsageError("one of --segments or --segment-size is required");
  const MinerOptions miner{args.max_length};

  const TransactionDataset ds = load_dataset(args.dataset);
  if (ds.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "dataset '" + args.dataset + "' is empty");
  }
  const Partition partition = args.segments > 0
                                  ? partition_count(ds, args.segments)
                                  : partition_sequential(ds, args.segment_size);
  const SupportThreshold threshold(cfg.minsupport);
  const auto locals = mine_partition(partition, threshold, threads, miner);
  const SynthesisReport report = classify(synthesize(locals, cfg), cfg);

  Json j = to_json(report);
  if (args.oracle) {
    const PatternSet oracle = mine_centralized(ds, threshold, miner);
    j["approximation_rate"] = rational_to_json(approximation_rate(report, oracle));
  }
  write_output(args.out ? std::optional<fs::path>(*args.out) : std::nullopt,
               dump_pretty(j));
  return 0;
}

struct AnytimeArgs {
  std::string dataset;
  std::string minsupport;
  std::size_t sample_size = 0;
  std::size_t rounds = 0;
  std::uint64_t seed = 0;
  std::string vote = "0.5";
  std::optional<std::string> out;
  std::size_t max_length = 0;
};

int run_anytime(const AnytimeArgs& args, std::size_t threads) {
  AnytimeConfig cfg;
  cfg.sample_size = args.sample_size;
  cfg.rounds = args.rounds;
  cfg.seed = args.seed;
  cfg.minsupport = rational_arg("--minsupport", args.minsupport);
  cfg.admit_vote_fraction = rational_arg("--vote", args.vote);
  cfg.miner.max_length = args.max_length;
  check([&] { cfg.validate(); });

  const TransactionDataset ds = load_dataset(args.dataset);
  std::string transcript;
  for (const auto& rec : anytime_run(ds, cfg, threads))
    transcript += to_json(rec).dump() + "\n";
  write_output(args.out ? std::optional<fs::path>(*args.out) : std::nullopt,
               transcript);
  return 0;
}

struct FuseArgs {
  std::string tree;
  SynthesisFlags synthesis;
  std::size_t segment_bound = 0;
  std::string out_dir;
  bool cluster = false;
  std::string threshold = "0.5";
  std::size_t max_length = 0;
};

int run_fuse(const FuseArgs& args, std::size_t threads) {
  const SynthesisConfig cfg = args.synthesis.build();
  const Rational similarity = rational_arg("--threshold", args.threshold);
  if (similarity < 0 || similarity > 1)
    throw UsageError("--threshold must be in [0, 1]");
  FuseOptions options;
  options.segment_bound = args.segment_bound;
  options.threads = threads;
  options.miner.max_length = args.max_length;

  const SourceNode root = load_source_tree(args.tree);
  const FuseResult result = fuse_node(root, cfg, options);

  const fs::path out_dir(args.out_dir);
  fs::create_directories(out_dir / "nodes");
  for (const auto& [id, report] : result.node_reports)
    write_output(out_dir / "nodes" / (id + ".json"), dump_pretty(to_json(report)));
  write_output(out_dir / "root.json", dump_pretty(to_json(result.root)));

  if (args.cluster) {
    std::vector<SourceNode> leaves;
    for (const SourceNode* leaf : collect_leaves(root)) leaves.push_back(*leaf);
    const SourceClustering clustering = cluster_sources(
        leaves, SupportThreshold(cfg.minsupport), similarity, threads, options.miner);
    write_output(out_dir / "clusters.json", dump_pretty(to_json(clustering)));
  }
  return 0;
}

struct VoteArgs {
  std::vector<std::string> scores;
  bool json = false;
};

int run_vote(const VoteArgs& args) {
  std::vector<ScorePair> contest;
  for (const auto& s : args.scores) {
    try {
      contest.push_back(parse_score_pair(s));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  const VoteOutcome v = structural_vote(contest);
  if (args.json) {
    std::cout << dump_pretty(to_json(v));
    return 0;
  }
  std::cout << "structural winner: " << to_string(v.winner) << " (per-source wins "
            << v.wins_a << ":" << v.wins_b << ")\n"
            << "pooled: " << v.pooled_a << ":" << v.pooled_b
            << " winner " << to_string(v.pooled_winner) << "\n";
  if (v.winner != v.pooled_winner)
    std::cout << "pooling disagrees with the per-source outcome\n";
  return 0;
}

struct TierArgs {
  std::vector<std::string> logs;
  std::size_t records = 0;
  std::optional<std::string> universe;
  std::string hot = "0.05";
  std::string warm = "0.30";
  std::uint64_t window = 1;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  std::optional<std::string> out_dir;
};

std::vector<RecordId> load_universe(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open universe '" + path.string() + "'");
  std::vector<RecordId> ids;
  std::string token;
  std::size_t index = 0;
  while (in >> token) {
    ++index;
    try {
      std::size_t used = 0;
      if (token.front() == '-') throw std::invalid_argument(token);
      ids.push_back(std::stoull(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "universe '" + path.string() + "': entry " +
                                         std::to_string(index) + " '" + token +
                                         "' is not a record id");
    }
  }
  return ids;
}

int run_tier(const TierArgs& args) {
  TierConfig cfg;
  cfg.hot_fraction = rational_arg("--hot", args.hot);
  cfg.warm_fraction = rational_arg("--warm", args.warm);
  cfg.window_length = args.window;
  cfg.seed = args.seed;
  check([&] { cfg.validate(); });
  if ((args.records == 0) == !args.universe)
    throw UsageError("exactly one of --records or --universe is required");

  std::vector<RecordId> universe;
  if (args.universe) {
    universe = load_universe(*args.universe);
  } else {
    universe.resize(args.records);
    for (std::size_t i = 0; i < args.records; ++i) universe[i] = i;
  }
  std::vector<AccessLog> logs;
  for (const auto& path : args.logs) {
    try {
      logs.push_back(load_access_log(path));
    } catch (const ParseError& e) {
      throw Error(ErrorCode::kParse, path + ": " + e.what());
    }
  }

  const auto epochs = tier_run(universe, logs, cfg);
  if (args.out_dir) {
    fs::create_directories(*args.out_dir);
    for (const auto& a : epochs) {
      write_output(fs::path(*args.out_dir) / ("epoch_" + std::to_string(a.epoch) + ".json"),
                   dump_pretty(to_json(a)));
    }
  } else {
    std::string lines;
    for (const auto& a : epochs) lines += to_json(a).dump() + "\n";
    write_output(args.out ? std::optional<fs::path>(*args.out) : std::nullopt, lines);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition-based frequent pattern mining"};
  app.require_subcommand(1);
  std::size_t threads = default_thread_count();
  app.add_option("--threads", threads,
                 "Worker threads (default: $PARTMINE_THREADS or 1)")
      ->check(kAtLeastOne);

  MineArgs mine;
  auto* mine_cmd = app.add_subcommand(
      "mine", "Partition, mine, synthesize and classify local patterns");
  mine_cmd->add_option("dataset", mine.dataset, "Transaction file")->required();
  mine.synthesis.add_to(mine_cmd);
  auto* segs = mine_cmd->add_option("--segments", mine.segments,
                                    "Split into this many balanced segments")
                   ->check(kAtLeastOne);
  auto* seg_size = mine_cmd->add_option("--segment-size", mine.segment_size,
                                        "Maximum transactions per segment")
                       ->check(kAtLeastOne);
  segs->excludes(seg_size);
  mine_cmd->add_option("--out", mine.out, "Report path (default: stdout)");
  mine_cmd->add_flag("--oracle", mine.oracle,
                     "Also mine the whole dataset and report approximation_rate");
  mine_cmd->add_option("--max-length", mine.max_length,
                       "Longest itemset to mine (0 = unlimited)");

  AnytimeArgs anytime;
  auto* anytime_cmd =
      app.add_subcommand("anytime", "Sampling-based anytime ensemble mining");
  anytime_cmd->add_option("dataset", anytime.dataset, "Transaction file")->required();
  anytime_cmd->add_option("--minsupport", anytime.minsupport, "Minimum support")
      ->required();
  anytime_cmd->add_option("--sample-size", anytime.sample_size,
                          "Transactions drawn per round")
      ->required()
      ->check(kAtLeastOne);
  anytime_cmd->add_option("--rounds", anytime.rounds, "Number of rounds")
      ->required()
      ->check(kAtLeastOne);
  anytime_cmd->add_option("--seed", anytime.seed, "Sampling seed")->required();
  anytime_cmd->add_option("--vote", anytime.vote,
                          "Admit itemsets frequent in this fraction of samples")
      ->capture_default_str();
  anytime_cmd->add_option("--out", anytime.out, "Transcript path (default: stdout)");
  anytime_cmd->add_option("--max-length", anytime.max_length,
                          "Longest itemset to mine (0 = unlimited)");

  FuseArgs fuse;
  auto* fuse_cmd = app.add_subcommand(
      "fuse", "Local pattern analysis over a tree of data sources");
  fuse_cmd->add_option("tree", fuse.tree, "Tree description JSON")->required();
  fuse.synthesis.add_to(fuse_cmd);
  fuse_cmd->add_option("--segment-bound", fuse.segment_bound,
                       "Partition a node's own data above this many transactions");
  fuse_cmd->add_option("--out-dir", fuse.out_dir,
                       "Directory for root.json, nodes/<id>.json, clusters.json")
      ->required();
  fuse_cmd->add_flag("--cluster", fuse.cluster, "Also cluster the leaf sources");
  fuse_cmd->add_option("--threshold", fuse.threshold,
                       "Jaccard similarity linking two sources")
      ->capture_default_str();
  fuse_cmd->add_option("--max-length", fuse.max_length,
                       "Longest itemset to mine (0 = unlimited)");

  VoteArgs vote;
  auto* vote_cmd = app.add_subcommand(
      "vote", "Per-source versus pooled outcome of a scored contest");
  vote_cmd->add_option("scores", vote.scores, "Per-source scores such as 6:4")
      ->required();
  vote_cmd->add_flag("--json", vote.json, "Emit JSON");

  TierArgs tier;
  auto* tier_cmd = app.add_subcommand(
      "tier", "Hot/warm/cold tiering by windowed visit frequency");
  tier_cmd->add_option("logs", tier.logs,
                       "Access-log CSV per window, in window order");
  tier_cmd->add_option("--records", tier.records,
                       "Universe is record ids 0..N-1");
  tier_cmd->add_option("--universe", tier.universe,
                       "File of whitespace-separated record ids");
  tier_cmd->add_option("--hot", tier.hot, "Hot fraction")->capture_default_str();
  tier_cmd->add_option("--warm", tier.warm, "Warm fraction")->capture_default_str();
  tier_cmd->add_option("--window", tier.window, "Window length in time units")
      ->capture_default_str();
  tier_cmd->add_option("--seed", tier.seed, "Seed for the initial assignment")
      ->capture_default_str();
  auto* tier_out = tier_cmd->add_option("--out", tier.out,
                                        "JSON-lines path (default: stdout)");
  tier_cmd->add_option("--out-dir", tier.out_dir,
                       "Write epoch_<n>.json files here instead")
      ->excludes(tier_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*mine_cmd) return run_mine(mine, threads);
    if (*anytime_cmd) return run_anytime(anytime, threads);
    if (*fuse_cmd) return run_fuse(fuse, threads);
    if (*vote_cmd) return run_vote(vote);
    if (*tier_cmd) return run_tier(tier);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kRuntimeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}
