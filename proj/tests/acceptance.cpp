// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "partmine/anytime.hpp"
#include "partmine/json_io.hpp"
#include "partmine/multisource.hpp"
#include "partmine/synthesis.hpp"
#include "partmine/tiering.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace partmine;
using testing::TempDir;

namespace {

// Outcome of one criterion: empty detail means pass.
struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct CorpusEntry {
  TransactionDataset ds;
  Rational minsupport;
};

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> out;
    std::mt19937_64 rng(20240915);
    const Rational thresholds[] = {Rational(1, 5), Rational(1, 2), Rational(4, 5)};
    for (int i = 0; i < 100; ++i)
      out.push_back({testing::random_dataset(rng, 1000, 12), thresholds[i % 3]});
    return out;
  }();
  return entries;
}

SynthesisConfig config_with(const Rational& ms) {
  SynthesisConfig cfg;
  cfg.minsupport = ms;
  return cfg;
}

Verdict oracle_equivalence() {
  Verdict v;
  double seconds = 0;
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const auto& [ds, ms] = corpus()[i];
    const Segment seg{0, 0, ds.transactions};
    const auto start = std::chrono::steady_clock::now();
    const PatternSet mined = mine_segment(seg, SupportThreshold(ms));
    seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (mined != testing::brute_force_mine(ds.transactions, ms, 0))
      v.fail("dataset " + std::to_string(i) + " differs from enumeration");
  }
  if (seconds >= 60) v.fail("mining took " + std::to_string(seconds) + " s");
  if (v.pass) v.detail = "100 datasets, mining time " + std::to_string(seconds) + " s";
  return v;
}

struct Synthesized {
  const CorpusEntry* entry;
  SynthesisReport report;
  std::vector<PatternSet> locals;
};

const std::vector<Synthesized>& synthesized_corpus() {
  static const std::vector<Synthesized> out = [] {
    std::vector<Synthesized> all;
    std::mt19937_64 rng(4711);
    for (const auto& e : corpus()) {
      const SynthesisConfig cfg = config_with(e.minsupport);
      const Partition p = testing::random_partition(e.ds, testing::uniform(rng, 1, 8), rng);
      auto locals = mine_partition(p, SupportThreshold(e.minsupport), 1);
      all.push_back({&e, classify(synthesize(locals, cfg), cfg), std::move(locals)});
    }
    return all;
  }();
  return out;
}

Verdict synthesis_exactness() {
  Verdict v;
  std::size_t checked = 0;
  for (const auto& s : synthesized_corpus()) {
    const PatternSet central = mine_centralized(s.entry->ds, SupportThreshold(s.entry->minsupport));
    for (const auto& [items, p] : s.report.patterns) {
      if (p.coverage != s.report.k) continue;
      ++checked;
      const auto it = central.patterns.find(items);
      if (it == central.patterns.end() || it->second.support != p.support_estimate)
        v.fail("estimate differs from centralized support");
    }
  }
  if (v.pass) v.detail = std::to_string(checked) + " fully covered patterns exact";
  return v;
}

Verdict bound_soundness() {
  Verdict v;
  std::size_t checked = 0, violations = 0;
  for (const auto& s : synthesized_corpus()) {
    std::set<Itemset> locally_frequent;
    for (const auto& ps : s.locals)
      for (const auto& [items, p] : ps.patterns) locally_frequent.insert(items);
    const auto n = static_cast<std::int64_t>(s.entry->ds.size());
    for (const auto& items : locally_frequent) {
      ++checked;
      const auto it = s.report.patterns.find(items);
      const Rational truth(
          static_cast<std::int64_t>(testing::brute_force_count(s.entry->ds.transactions, items)), n);
      if (it == s.report.patterns.end() || truth < it->second.support_lower ||
          truth > it->second.support_upper)
        ++violations;
    }
  }
  if (violations) v.fail(std::to_string(violations) + " violations");
  else v.detail = std::to_string(checked) + " itemsets, zero violations";
  return v;
}

Verdict tennis() {
  Verdict v;
  const std::vector<ScorePair> match = {{6, 4}, {0, 6}, {6, 4}};
  const VoteOutcome o = structural_vote(match);
  if (o.winner != Side::kA || o.wins_a != 2 || o.wins_b != 1 || o.pooled_a != 12 ||
      o.pooled_b != 14 || o.pooled_winner != Side::kB)
    v.fail("unexpected outcome " + to_json(o).dump());
  else
    v.detail = "A wins 2:1, pooled 12:14 favours B";
  return v;
}

Verdict taxonomy_recovery() {
  Verdict v;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = testing::make_planted(seed);
    const SynthesisConfig cfg = config_with(inst.minsupport);
    const auto locals =
        mine_partition(partition_count(inst.ds, inst.k), SupportThreshold(cfg.minsupport), 1);
    const SynthesisReport r = classify(synthesize(locals, cfg), cfg);
    const auto label = [&](const Itemset& items) {
      const auto it = r.patterns.find(items);
      return it == r.patterns.end() ? PatternLabel::kOther : it->second.label;
    };
    if (label(inst.global) != PatternLabel::kGlobal ||
        label(inst.exceptional) != PatternLabel::kExceptional ||
        label(inst.trend) != PatternLabel::kTrend)
      v.fail("seed " + std::to_string(seed) + " mislabelled");
  }
  if (v.pass) v.detail = "20/20 planted instances recovered";
  return v;
}

AnytimeConfig fixture_config(std::uint64_t seed, std::size_t rounds, std::size_t sample_size = 60) {
  AnytimeConfig cfg;
  cfg.sample_size = sample_size;
  cfg.rounds = rounds;
  cfg.seed = seed;
  cfg.minsupport = Rational(3, 10);
  return cfg;
}

Verdict anytime_identities() {
  Verdict v;
  const TransactionDataset ds = testing::anytime_fixture();
  for (const auto& rec : anytime_run(ds, fixture_config(1, 6, ds.size())))
    if (rec.rate != Rational(1)) v.fail("exhaustive sample rate below 1 in round " + std::to_string(rec.round));

  const AnytimeConfig cfg = fixture_config(2, 8);
  EnsembleState state;
  std::vector<PatternSet> samples;
  for (std::size_t r = 0; r < cfg.rounds; ++r) {
    state = anytime_round(ds, state, cfg);
    samples.push_back(sample_round(ds, cfg, r).patterns);
    if (rebuild_ensemble(samples, cfg) != state) v.fail("rebuild differs in round " + std::to_string(r + 1));
  }

  constexpr std::size_t kRounds = 12, kQuarter = kRounds / 4;
  Rational first{0}, last{0};
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const auto t = anytime_run(ds, fixture_config(seed, kRounds));
    for (std::size_t r = 0; r < kQuarter; ++r) {
      first += t[r].rate;
      last += t[kRounds - 1 - r].rate;
    }
  }
  const double denom = 20.0 * kQuarter;
  std::ostringstream d;
  d << "quarter means " << to_double(first) / denom << " -> " << to_double(last) / denom;
  if (last < first) v.fail(d.str());
  if (v.pass) v.detail = d.str();
  return v;
}

Verdict tiering_law() {
  Verdict v;
  std::vector<RecordId> hundred(100);
  std::iota(hundred.begin(), hundred.end(), 0);
  std::mt19937_64 rng(31337);
  {
    TierConfig cfg;
    std::vector<AccessLog> logs(5);
    for (std::size_t w = 0; w < logs.size(); ++w)
      for (int e = 0; e < 200; ++e) logs[w].push_back({rng() % 100, w + 1});
    for (const auto& a : tier_run(hundred, logs, cfg))
      if (a.hot.size() != 5 || a.warm.size() != 30 || a.cold.size() != 65)
        v.fail("epoch " + std::to_string(a.epoch) + " sizes off");
  }
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 500;
    std::vector<RecordId> universe(n);
    std::iota(universe.begin(), universe.end(), 0);
    TierConfig cfg;
    cfg.seed = rng();
    AccessLog log;
    std::map<RecordId, std::uint64_t> freq;
    const std::size_t events = rng() % (4 * n);
    for (std::size_t e = 0; e < events; ++e) {
      const RecordId r = rng() % n;
      log.push_back({r, 1});
      ++freq[r];
    }
    const TierAssignment a = tier_update(tier_init(universe, cfg), log, cfg);
    const auto lowest = [&](const std::vector<RecordId>& ids) {
      std::uint64_t m = UINT64_MAX;
      for (auto r : ids) m = std::min(m, freq[r]);
      return m;
    };
    const auto highest = [&](const std::vector<RecordId>& ids) {
      std::uint64_t m = 0;
      for (auto r : ids) m = std::max(m, freq[r]);
      return m;
    };
    if ((!a.warm.empty() && lowest(a.hot) < highest(a.warm)) ||
        (!a.cold.empty() && lowest(a.warm.empty() ? a.hot : a.warm) < highest(a.cold)))
      v.fail("ordering violated in workload " + std::to_string(trial));
  }
  const Rational g = golden_ratio_check(TierConfig{});
  if (g != Rational(7, 13) || std::abs(to_double(g) - 0.539) > 1e-3) v.fail("golden check off");
  if (v.pass) v.detail = "5/30/65 every epoch, 50 workloads ordered, ratio 7/13";
  return v;
}

Verdict privacy_contract() {
  Verdict v;
  std::mt19937_64 rng(8);
  SourceNode root{"root", std::nullopt, {}};
  for (const char* id : {"east", "west", "north"})
    root.children.push_back(SourceNode{id, testing::random_dataset(rng, 400, 10), {}});
  FuseTrace trace;
  fuse_node(root, config_with(Rational(1, 4)), FuseOptions{64, 3, {}}, &trace);
  for (const auto& leaf : root.children) {
    const auto it = trace.transactions_read.find(leaf.node_id);
    if (it == trace.transactions_read.end() || it->second != leaf.dataset->size())
      v.fail("leaf " + leaf.node_id + " not read exactly once");
  }
  if (trace.transactions_read["root"] != 0) v.fail("interior node read transactions");
  if (v.pass) v.detail = "each leaf read once, root read nothing";
  return v;
}

std::string dataset_text(const TransactionDataset& ds) {
  std::ostringstream s;
  write_dataset(s, ds);
  return s.str();
}

// Stdout plus every file under the output directory, in path order.
std::string snapshot(const testing::CliResult& r, const fs::path& out_dir) {
  std::string all = "status " + std::to_string(r.status) + "\n" + r.out;
  if (fs::exists(out_dir)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(out_dir))
      if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
      all += "== " + fs::relative(f, out_dir).string() + "\n" + testing::read_file(f);
  }
  return all;
}

Verdict cli_determinism() {
  Verdict v;
  TempDir dir("acceptance-cli");
  std::mt19937_64 rng(99);
  const auto data = dir.write("data.txt", dataset_text(testing::anytime_fixture()));
  dir.write("a.txt", dataset_text(testing::random_dataset(rng, 500, 10)));
  dir.write("b.txt", dataset_text(testing::random_dataset(rng, 500, 10)));
  dir.write("c.txt", dataset_text(testing::random_dataset(rng, 500, 10)));
  const auto tree = dir.write("tree.json", R"({"node_id": "root", "children": [
      {"node_id": "left", "children": [{"node_id": "a", "dataset_path": "a.txt"},
                                       {"node_id": "b", "dataset_path": "b.txt"}]},
      {"node_id": "c", "dataset_path": "c.txt"}]})");
  std::string csv;
  for (std::uint64_t w = 0; w < 3; ++w) {
    csv = "record_id,timestamp\n";
    for (int e = 0; e < 400; ++e) csv += std::to_string(rng() % 100) + "," + std::to_string(w + 1) + "\n";
    dir.write("log" + std::to_string(w) + ".csv", csv);
  }
  const std::string logs = (dir.path / "log0.csv").string() + " " + (dir.path / "log1.csv").string() +
                           " " + (dir.path / "log2.csv").string();

  const std::vector<std::pair<std::string, std::string>> workflows = {
      {"mine", "mine " + data.string() + " --minsupport 0.3 --segments 6 --oracle"},
      {"mine-sized", "mine " + data.string() + " --minsupport 1/4 --segment-size 70"},
      {"anytime", "anytime " + data.string() + " --minsupport 0.3 --sample-size 60 --rounds 8 --seed 5"},
      {"fuse", "fuse " + tree.string() + " --minsupport 0.3 --segment-bound 120 --cluster --out-dir OUT"},
      {"vote", "vote 6:4 0:6 6:4"},
      {"tier", "tier " + logs + " --records 100 --seed 7"},
      {"tier-dir", "tier " + logs + " --records 100 --window 1 --out-dir OUT"},
  };
  std::size_t runs = 0;
  for (const auto& [name, args] : workflows) {
    std::string reference;
    int variant = 0;
    for (const std::string threads : {"--threads 1 ", "--threads 1 ", "--threads 4 ", "--threads 4 "}) {
      const fs::path out_dir = dir.path / (name + "-" + std::to_string(variant++));
      std::string cmd = args;
      if (const auto at = cmd.find("OUT"); at != std::string::npos) cmd.replace(at, 3, out_dir.string());
      const auto r = testing::run_cli(threads + cmd, dir.path);
      ++runs;
      if (r.status != 0) {
        v.fail(name + " exited " + std::to_string(r.status) + ": " + r.err);
        continue;
      }
      const std::string snap = snapshot(r, out_dir);
      if (reference.empty()) reference = snap;
      else if (snap != reference) v.fail(name + " output differs under " + threads);
    }
  }
  if (v.pass) v.detail = std::to_string(workflows.size()) + " workflows, " + std::to_string(runs) + " runs identical";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"1 oracle equivalence", oracle_equivalence},
      {"2 synthesis exactness", synthesis_exactness},
      {"3 bound soundness", bound_soundness},
      {"4 tennis example", tennis},
      {"5 pattern taxonomy recovery", taxonomy_recovery},
      {"6 anytime identities", anytime_identities},
      {"7 tiering law", tiering_law},
      {"8 privacy contract", privacy_contract},
      {"9 cli determinism", cli_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
