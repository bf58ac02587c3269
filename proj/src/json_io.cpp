#include "partmine/json_io.hpp"

#include <fstream>
#include <set>

#include "partmine/error.hpp"

namespace partmine {
namespace {

Itemset items_from_json(const Json& j) {
  Itemset items = j.get<Itemset>();
  if (!is_canonical(items))
    throw Error(ErrorCode::kInvalidArgument, "itemset is not sorted ascending");
  return items;
}

Json optional_rational(const std::optional<Rational>& r) {
  return r ? rational_to_json(*r) : Json(nullptr);
}

}  // namespace

Json rational_to_json(const Rational& r) {
  Json j;
  j["value"] = to_decimal_string(r);
  j["num"] = r.numerator();
  j["den"] = r.denominator();
  return j;
}

Rational rational_from_json(const Json& j) {
  if (j.is_object()) {
    const auto den = j.at("den").get<std::int64_t>();
    if (den == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
    return Rational(j.at("num").get<std::int64_t>(), den);
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorCode::kInvalidArgument, "expected a rational, got " + j.dump());
}

Json to_json(const PatternSet& ps) {
  Json j;
  j["segment_id"] = ps.segment_id;
  j["segment_size"] = ps.segment_size;
  j["minsupport"] = rational_to_json(ps.minsupport);
  Json patterns = Json::array();
  for (const auto& [items, p] : ps.patterns) {
    Json e;
    e["items"] = items;
    e["count"] = p.count;
    e["support"] = rational_to_json(p.support);
    patterns.push_back(std::move(e));
  }
  j["patterns"] = std::move(patterns);
  return j;
}

PatternSet pattern_set_from_json(const Json& j) {
  PatternSet ps;
  ps.segment_id = j.at("segment_id").get<std::int64_t>();
  ps.segment_size = j.at("segment_size").get<std::uint64_t>();
  ps.minsupport = rational_from_json(j.at("minsupport"));
  for (const auto& e : j.at("patterns")) {
    ps.patterns.emplace(items_from_json(e.at("items")),
                        FrequentPattern{e.at("count").get<std::uint64_t>(),
                                        rational_from_json(e.at("support"))});
  }
  return ps;
}

Json to_json(const SynthesisConfig& cfg) {
  Json j;
  j["minsupport"] = rational_to_json(cfg.minsupport);
  j["global_coverage_fraction"] = rational_to_json(cfg.global_coverage_fraction);
  j["exceptional_support_multiplier"] =
      rational_to_json(cfg.exceptional_support_multiplier);
  j["exceptional_coverage_fraction"] =
      rational_to_json(cfg.exceptional_coverage_fraction);
  j["trend_min_slope"] = rational_to_json(cfg.trend_min_slope);
  j["trend_min_rank_corr"] = rational_to_json(cfg.trend_min_rank_corr);
  j["missing_support_policy"] = to_string(cfg.missing_support_policy);
  return j;
}

SynthesisConfig synthesis_config_from_json(const Json& j) {
  SynthesisConfig cfg;
  cfg.minsupport = rational_from_json(j.at("minsupport"));
  cfg.global_coverage_fraction =
      rational_from_json(j.at("global_coverage_fraction"));
  cfg.exceptional_support_multiplier =
      rational_from_json(j.at("exceptional_support_multiplier"));
  cfg.exceptional_coverage_fraction =
      rational_from_json(j.at("exceptional_coverage_fraction"));
  cfg.trend_min_slope = rational_from_json(j.at("trend_min_slope"));
  cfg.trend_min_rank_corr = rational_from_json(j.at("trend_min_rank_corr"));
  cfg.missing_support_policy = parse_missing_support_policy(
      j.at("missing_support_policy").get<std::string>());
  return cfg;
}

Json to_json(const SynthesisReport& report) {
  Json j;
  j["k"] = report.k;
  j["segment_sizes"] = report.segment_sizes;
  j["config"] = to_json(report.config);
  j["unreported_upper"] = rational_to_json(report.unreported_upper);
  Json patterns = Json::array();
  for (const auto& [items, p] : report.patterns) {
    Json e;
    e["items"] = items;
    e["coverage"] = p.coverage;
    e["support_lower"] = rational_to_json(p.support_lower);
    e["support_estimate"] = rational_to_json(p.support_estimate);
    e["support_upper"] = rational_to_json(p.support_upper);
    Json per = Json::array();
    for (const auto& s : p.per_segment_supports) per.push_back(optional_rational(s));
    e["per_segment_supports"] = std::move(per);
    e["label"] = to_string(p.label);
    patterns.push_back(std::move(e));
  }
  j["patterns"] = std::move(patterns);
  return j;
}

SynthesisReport synthesis_report_from_json(const Json& j) {
  SynthesisReport r;
  r.k = j.at("k").get<std::size_t>();
  r.segment_sizes = j.at("segment_sizes").get<std::vector<std::uint64_t>>();
  r.config = synthesis_config_from_json(j.at("config"));
  r.unreported_upper = rational_from_json(j.at("unreported_upper"));
  for (const auto& e : j.at("patterns")) {
    SynthesizedPattern p;
    p.coverage = e.at("coverage").get<std::size_t>();
    p.support_lower = rational_from_json(e.at("support_lower"));
    p.support_estimate = rational_from_json(e.at("support_estimate"));
    p.support_upper = rational_from_json(e.at("support_upper"));
    for (const auto& s : e.at("per_segment_supports")) {
      p.per_segment_supports.push_back(
          s.is_null() ? std::nullopt : std::optional(rational_from_json(s)));
    }
    p.label = parse_pattern_label(e.at("label").get<std::string>());
    r.patterns.emplace(items_from_json(e.at("items")), std::move(p));
  }
  return r;
}

Json to_json(const RoundRecord& record) {
  Json j;
  j["round"] = record.round;
  j["sample_ids"] = record.sample_ids;
  j["rate"] = rational_to_json(record.rate);
  j["admitted_count"] = record.admitted_count;
  return j;
}

RoundRecord round_record_from_json(const Json& j) {
  RoundRecord r;
  r.round = j.at("round").get<std::size_t>();
  r.sample_ids = j.at("sample_ids").get<std::vector<std::size_t>>();
  r.rate = rational_from_json(j.at("rate"));
  r.admitted_count = j.at("admitted_count").get<std::size_t>();
  return r;
}

Json to_json(const TierAssignment& a) {
  Json j;
  j["epoch"] = a.epoch;
  j["hot"] = a.hot;
  j["warm"] = a.warm;
  j["cold"] = a.cold;
  return j;
}

TierAssignment tier_assignment_from_json(const Json& j) {
  TierAssignment a;
  a.epoch = j.at("epoch").get<std::uint64_t>();
  a.hot = j.at("hot").get<std::vector<RecordId>>();
  a.warm = j.at("warm").get<std::vector<RecordId>>();
  a.cold = j.at("cold").get<std::vector<RecordId>>();
  return a;
}

Json to_json(const SourceClustering& c) {
  Json j;
  j["similarity_threshold"] = rational_to_json(c.similarity_threshold);
  j["clusters"] = c.clusters;
  return j;
}

Json to_json(const VoteOutcome& v) {
  Json j;
  j["winner"] = to_string(v.winner);
  j["per_source_wins"] = {v.wins_a, v.wins_b};
  j["pooled"] = {v.pooled_a, v.pooled_b};
  j["pooled_winner"] = to_string(v.pooled_winner);
  return j;
}

SourceNode source_tree_from_json(const Json& j,
                                 const std::filesystem::path& base_dir) {
  SourceNode node;
  node.node_id = j.at("node_id").get<std::string>();
  if (node.node_id.empty() || node.node_id == "." || node.node_id == ".." ||
      node.node_id.find_first_of("/\\") != std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "node id '" + node.node_id + "' is not usable as a file name");
  }
  if (const auto it = j.find("dataset_path"); it != j.end() && !it->is_null()) {
    std::filesystem::path p = it->get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    node.dataset = load_dataset(p);
  }
  if (const auto it = j.find("children"); it != j.end()) {
    for (const auto& c : *it)
      node.children.push_back(source_tree_from_json(c, base_dir));
  }
  return node;
}

SourceNode load_source_tree(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open tree '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, "tree '" + path.string() + "': " + e.what());
  }
  SourceNode root = source_tree_from_json(j, path.parent_path());
  std::set<std::string> seen;
  std::vector<const SourceNode*> stack{&root};
  while (!stack.empty()) {
    const SourceNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n->node_id).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate node id '" + n->node_id + "'");
    }
    for (const auto& c : n->children) stack.push_back(&c);
  }
  return root;
}

std::string dump_pretty(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace partmine
