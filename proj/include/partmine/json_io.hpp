#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "partmine/anytime.hpp"
#include "partmine/miner.hpp"
#include "partmine/multisource.hpp"
#include "partmine/synthesis.hpp"
#include "partmine/tiering.hpp"

// Report serialization. Keys are emitted in a fixed order and collections in
// sorted order so identical inputs give byte-identical files.
namespace partmine {

using Json = nlohmann::ordered_json;

// {"value": "0.5", "num": 1, "den": 2}
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const PatternSet& ps);
PatternSet pattern_set_from_json(const Json& j);

Json to_json(const SynthesisConfig& cfg);
SynthesisConfig synthesis_config_from_json(const Json& j);

Json to_json(const SynthesisReport& report);
SynthesisReport synthesis_report_from_json(const Json& j);

Json to_json(const RoundRecord& record);
RoundRecord round_record_from_json(const Json& j);

Json to_json(const TierAssignment& assignment);
TierAssignment tier_assignment_from_json(const Json& j);

Json to_json(const SourceClustering& clustering);
Json to_json(const VoteOutcome& outcome);

// Tree description {node_id, dataset_path?, children: [...]}. Relative
// dataset paths resolve against the tree file's directory. Datasets are
// loaded eagerly; node ids must be unique and usable as file names.
SourceNode load_source_tree(const std::filesystem::path& path);
SourceNode source_tree_from_json(const Json& j,
                                 const std::filesystem::path& base_dir);

// Pretty-printed with two-space indent and a trailing newline.
std::string dump_pretty(const Json& j);

}  // namespace partmine
