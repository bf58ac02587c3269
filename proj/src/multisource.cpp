#include "partmine/multisource.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "partmine/error.hpp"
#include "partmine/parallel.hpp"

namespace partmine {
namespace {

struct SubtreeResult {
  SynthesisReport report;
  std::map<std::string, SynthesisReport> node_reports;
  std::map<std::string, std::uint64_t> reads;
};

void check_ids(const SourceNode& node, std::set<std::string>& seen) {
  if (node.node_id.empty())
    throw Error(ErrorCode::kInvalidArgument, "source node without an id");
  if (!seen.insert(node.node_id).second) {
    throw Error(ErrorCode::kInvalidArgument,
                "duplicate node id '" + node.node_id + "'");
  }
  for (const auto& c : node.children) check_ids(c, seen);
}

SubtreeResult fuse_subtree(const SourceNode& node, const SynthesisConfig& cfg,
                           const FuseOptions& options) {
  if (node.is_leaf() && !node.dataset) {
    throw Error(ErrorCode::kLeafWithoutData,
                "leaf '" + node.node_id + "' has no dataset");
  }

  std::vector<SubtreeResult> children(node.children.size());
  parallel_for(children.size(), options.threads, [&](std::size_t i) {
    children[i] = fuse_subtree(node.children[i], cfg, options);
  });

  SubtreeResult out;
  std::vector<LocalSummary> inputs;
  for (auto& child : children) {
    inputs.push_back(global_message(child.report));
    out.node_reports.merge(child.node_reports);
    out.reads.merge(child.reads);
  }

  // Own data is the only place transactions are touched.
  if (node.dataset && !node.dataset->empty()) {
    const TransactionDataset& ds = *node.dataset;
    out.reads[node.node_id] += ds.size();
    const Partition partition =
        options.segment_bound > 0 && ds.size() > options.segment_bound
            ? partition_sequential(ds, options.segment_bound)
            : partition_count(ds, 1);
    for (const auto& ps : mine_partition(
             partition, SupportThreshold(cfg.minsupport), 1, options.miner)) {
      inputs.push_back(summarize(ps));
    }
  }
  if (inputs.empty()) {
    throw Error(ErrorCode::kEmptyTree,
                "no transactions under node '" + node.node_id + "'");
  }

  out.report = classify(synthesize(std::span<const LocalSummary>(inputs), cfg),
                        cfg);
  out.node_reports[node.node_id] = out.report;
  return out;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

LocalSummary global_message(const SynthesisReport& report) {
  LocalSummary msg;
  msg.size = report.total_size();
  msg.minsupport = report.config.minsupport;
  msg.unreported_upper = report.unreported_upper;
  for (const auto& [items, p] : report.patterns) {
    if (p.label == PatternLabel::kGlobal) {
      msg.patterns.emplace(
          items,
          SupportInterval{p.support_lower, p.support_estimate, p.support_upper});
    } else {
      // Withheld patterns still bound what the parent may assume.
      msg.unreported_upper = std::max(msg.unreported_upper, p.support_upper);
    }
  }
  return msg;
}

FuseResult fuse_node(const SourceNode& node, const SynthesisConfig& cfg,
                     const FuseOptions& options, FuseTrace* trace) {
  cfg.validate();
  std::set<std::string> seen;
  check_ids(node, seen);
  SubtreeResult r = fuse_subtree(node, cfg, options);
  if (trace) {
    trace->transactions_read.clear();
    for (const auto& id : seen) trace->transactions_read[id] = 0;
    for (const auto& [id, n] : r.reads) trace->transactions_read[id] = n;
  }
  return FuseResult{std::move(r.report), std::move(r.node_reports)};
}

const char* to_string(Side side) {
  switch (side) {
    case Side::kA: return "A";
    case Side::kB: return "B";
    case Side::kTie: return "Tie";
  }
  return "Tie";
}

VoteOutcome structural_vote(std::span<const ScorePair> contest) {
  if (contest.empty())
    throw Error(ErrorCode::kInvalidArgument, "contest needs at least one score");
  VoteOutcome v;
  for (const auto& [a, b] : contest) {
    if (a > b) ++v.wins_a;
    if (b > a) ++v.wins_b;
    v.pooled_a += a;
    v.pooled_b += b;
  }
  const auto decide = [](std::uint64_t a, std::uint64_t b) {
    return a > b ? Side::kA : (b > a ? Side::kB : Side::kTie);
  };
  v.winner = decide(v.wins_a, v.wins_b);
  v.pooled_winner = decide(v.pooled_a, v.pooled_b);
  return v;
}

ScorePair parse_score_pair(std::string_view text) {
  const auto colon = text.find(':');
  const auto bad = [&] {
    return Error(ErrorCode::kInvalidArgument,
                 "score must look like A:B, got '" + std::string(text) + "'");
  };
  if (colon == std::string_view::npos) throw bad();
  ScorePair p;
  const auto parse = [&](std::string_view s, std::uint64_t& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw bad();
  };
  parse(text.substr(0, colon), p.a);
  parse(text.substr(colon + 1), p.b);
  return p;
}

Rational pattern_jaccard(const PatternSet& a, const PatternSet& b) {
  std::int64_t common = 0;
  auto ia = a.patterns.begin();
  auto ib = b.patterns.begin();
  while (ia != a.patterns.end() && ib != b.patterns.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const auto uni = static_cast<std::int64_t>(a.size() + b.size()) - common;
  if (uni == 0) return Rational(1);
  return Rational(common, uni);
}

SourceClustering cluster_sources(std::span<const SourceNode> leaves,
                                 const SupportThreshold& threshold,
                                 const Rational& similarity_threshold,
                                 std::size_t threads,
                                 const MinerOptions& miner) {
  if (leaves.empty())
    throw Error(ErrorCode::kInvalidArgument, "no sources to cluster");
  if (similarity_threshold < 0 || similarity_threshold > 1)
    throw Error(ErrorCode::kInvalidArgument,
                "similarity threshold must be in [0, 1]");
  std::set<std::string> ids;
  for (const auto& leaf : leaves) {
    if (!leaf.dataset) {
      throw Error(ErrorCode::kLeafWithoutData,
                  "leaf '" + leaf.node_id + "' has no dataset");
    }
    if (!ids.insert(leaf.node_id).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate node id '" + leaf.node_id + "'");
    }
  }

  std::vector<PatternSet> mined(leaves.size());
  parallel_for(leaves.size(), threads, [&](std::size_t i) {
    mined[i] = mine_centralized(*leaves[i].dataset, threshold, miner);
  });

  std::vector<std::size_t> parent(leaves.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      if (pattern_jaccard(mined[i], mined[j]) >= similarity_threshold)
        parent[find_root(parent, i)] = find_root(parent, j);
    }
  }

  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < leaves.size(); ++i)
    groups[find_root(parent, i)].push_back(leaves[i].node_id);

  SourceClustering out;
  out.similarity_threshold = similarity_threshold;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    out.clusters.push_back(std::move(members));
  }
  std::sort(out.clusters.begin(), out.clusters.end());
  return out;
}

std::vector<const SourceNode*> collect_leaves(const SourceNode& root) {
  std::vector<const SourceNode*> out;
  std::vector<const SourceNode*> stack{&root};
  while (!stack.empty()) {
    const SourceNode* n = stack.back();
    stack.pop_back();
    if (n->is_leaf()) out.push_back(n);
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it)
      stack.push_back(&*it);
  }
  return out;
}

}  // namespace partmine
