#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "partmine/dataset.hpp"
#include "partmine/miner.hpp"
#include "partmine/synthesis.hpp"

namespace partmine {

struct SourceNode {
  std::string node_id;
  std::optional<TransactionDataset> dataset;
  std::vector<SourceNode> children;

  bool is_leaf() const noexcept { return children.empty(); }
};

struct FuseOptions {
  // A node's own data larger than this is partitioned sequentially before
  // mining; 0 disables partitioning.
  std::size_t segment_bound = 0;
  std::size_t threads = 1;
  MinerOptions miner;
};

// Records how many transactions fusion handed to the miner, per node.
struct FuseTrace {
  std::map<std::string, std::uint64_t> transactions_read;
};

struct FuseResult {
  SynthesisReport root;
  // Labelled report of every node in the tree, keyed by node id.
  std::map<std::string, SynthesisReport> node_reports;
};

// Local pattern analysis over a source tree. Leaves mine their data; an
// interior node fuses the Global patterns of its children with patterns
// mined from its own data. Only patterns cross node boundaries.
FuseResult fuse_node(const SourceNode& node, const SynthesisConfig& cfg,
                     const FuseOptions& options = {},
                     FuseTrace* trace = nullptr);

// The pattern message a node sends to its parent: its Global patterns with
// their bounds, plus a bound for everything it does not send.
LocalSummary global_message(const SynthesisReport& report);

enum class Side { kA, kB, kTie };

const char* to_string(Side side);

struct ScorePair {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
};

struct VoteOutcome {
  Side winner = Side::kTie;
  std::uint64_t wins_a = 0;
  std::uint64_t wins_b = 0;
  std::uint64_t pooled_a = 0;
  std::uint64_t pooled_b = 0;
  Side pooled_winner = Side::kTie;

  friend bool operator==(const VoteOutcome&, const VoteOutcome&) = default;
};

// Per-source majority versus pooled totals. Tied pairs count for neither
// side. Throws Error(kInvalidArgument) for an empty contest.
VoteOutcome structural_vote(std::span<const ScorePair> contest);

// Parses "6:4" score tokens.
ScorePair parse_score_pair(std::string_view text);

struct SourceClustering {
  // Each cluster's ids sorted; clusters ordered by their first id.
  std::vector<std::vector<std::string>> clusters;
  Rational similarity_threshold{0};

  friend bool operator==(const SourceClustering&,
                         const SourceClustering&) = default;
};

// Jaccard index of the two frequent-itemset collections; 1 when both are
// empty.
Rational pattern_jaccard(const PatternSet& a, const PatternSet& b);

// Connected components of the graph linking sources whose pattern Jaccard
// similarity is at least `similarity_threshold`.
SourceClustering cluster_sources(std::span<const SourceNode> leaves,
                                 const SupportThreshold& threshold,
                                 const Rational& similarity_threshold,
                                 std::size_t threads = 1,
                                 const MinerOptions& miner = {});

// Leaves of the tree in pre-order.
std::vector<const SourceNode*> collect_leaves(const SourceNode& root);

}  // namespace partmine
