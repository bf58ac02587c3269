#include "partmine/anytime.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "partmine/error.hpp"
#include "partmine/parallel.hpp"
#include "random.hpp"

namespace partmine {

void AnytimeConfig::validate() const {
  if (sample_size < 1)
    throw Error(ErrorCode::kInvalidArgument, "sample_size must be >= 1");
  if (rounds < 1) throw Error(ErrorCode::kInvalidArgument, "rounds must be >= 1");
  static_cast<void>(SupportThreshold{minsupport});
  if (admit_vote_fraction <= 0 || admit_vote_fraction > 1)
    throw Error(ErrorCode::kInvalidArgument,
                "admit_vote_fraction must be in (0, 1]");
}

std::vector<std::size_t> draw_sample(std::size_t population,
                                     std::size_t sample_size,
                                     std::uint64_t seed, std::size_t round) {
  if (sample_size > population) {
    throw Error(ErrorCode::kSampleTooLarge,
                "sample of " + std::to_string(sample_size) +
                    " exceeds dataset of " + std::to_string(population));
  }
  auto rng = detail::stream_engine(seed, round);
  std::vector<std::size_t> ids(population);
  std::iota(ids.begin(), ids.end(), 0);
  // Partial Fisher-Yates: the first sample_size slots end up uniform.
  for (std::size_t i = 0; i < sample_size; ++i) {
    const std::size_t j = i + detail::uniform_below(rng, population - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(sample_size);
  std::sort(ids.begin(), ids.end());
  return ids;
}

RoundSample sample_round(const TransactionDataset& ds, const AnytimeConfig& cfg,
                         std::size_t round) {
  RoundSample out;
  out.sample_ids = draw_sample(ds.size(), cfg.sample_size, cfg.seed, round);
  std::vector<Itemset> sample;
  sample.reserve(out.sample_ids.size());
  for (std::size_t id : out.sample_ids) sample.push_back(ds.transactions[id]);
  out.patterns = mine_transactions(sample, SupportThreshold(cfg.minsupport),
                                   static_cast<std::int64_t>(round), cfg.miner);
  return out;
}

namespace {

void recompute_admitted(EnsembleState& state, const AnytimeConfig& cfg) {
  state.admitted.clear();
  const auto n = static_cast<std::int64_t>(state.round);
  for (const auto& [items, acc] : state.accumulators) {
    const auto votes = static_cast<std::int64_t>(acc.times_frequent);
    if (Rational(votes, n) >= cfg.admit_vote_fraction)
      state.admitted.emplace(items, acc.sum_of_supports / votes);
  }
}

}  // namespace

void fold_sample(EnsembleState& state, const PatternSet& sample,
                 const AnytimeConfig& cfg) {
  for (const auto& [items, p] : sample.patterns) {
    auto& acc = state.accumulators[items];
    ++acc.times_frequent;
    acc.sum_of_supports += p.support;
  }
  ++state.round;
  recompute_admitted(state, cfg);
}

EnsembleState anytime_round(const TransactionDataset& ds, EnsembleState state,
                            const AnytimeConfig& cfg) {
  cfg.validate();
  if (state.round >= cfg.rounds) {
    throw Error(ErrorCode::kInvalidArgument,
                "all " + std::to_string(cfg.rounds) + " rounds already ran");
  }
  const RoundSample s = sample_round(ds, cfg, state.round);
  fold_sample(state, s.patterns, cfg);
  return state;
}

EnsembleState rebuild_ensemble(std::span<const PatternSet> samples,
                               const AnytimeConfig& cfg) {
  EnsembleState state;
  for (const auto& s : samples) {
    for (const auto& [items, p] : s.patterns) {
      auto& acc = state.accumulators[items];
      ++acc.times_frequent;
      acc.sum_of_supports += p.support;
    }
  }
  state.round = samples.size();
  if (state.round > 0) recompute_admitted(state, cfg);
  return state;
}

Rational approximation_rate(const std::map<Itemset, Rational>& admitted,
                            const PatternSet& oracle) {
  if (oracle.patterns.empty()) return Rational(1);
  std::int64_t hits = 0;
  for (const auto& [items, unused] : oracle.patterns)
    if (admitted.contains(items)) ++hits;
  return Rational(hits, static_cast<std::int64_t>(oracle.patterns.size()));
}

std::vector<RoundRecord> anytime_run(const TransactionDataset& ds,
                                     const AnytimeConfig& cfg,
                                     std::size_t threads) {
  cfg.validate();
  if (ds.empty()) {
    throw Error(ErrorCode::kEmptyDataset,
                "anytime mining needs a non-empty dataset");
  }
  if (cfg.sample_size > ds.size()) {
    throw Error(ErrorCode::kSampleTooLarge,
                "sample of " + std::to_string(cfg.sample_size) +
                    " exceeds dataset of " + std::to_string(ds.size()));
  }
  const PatternSet oracle =
      mine_centralized(ds, SupportThreshold(cfg.minsupport), cfg.miner);

  std::vector<RoundSample> samples(cfg.rounds);
  parallel_for(cfg.rounds, threads,
               [&](std::size_t r) { samples[r] = sample_round(ds, cfg, r); });

  std::vector<RoundRecord> transcript;
  EnsembleState state;
  for (std::size_t r = 0; r < cfg.rounds; ++r) {
    fold_sample(state, samples[r].patterns, cfg);
    RoundRecord rec;
    rec.round = state.round;
    rec.sample_ids = std::move(samples[r].sample_ids);
    rec.rate = approximation_rate(state.admitted, oracle);
    rec.admitted_count = state.admitted.size();
    transcript.push_back(std::move(rec));
  }
  return transcript;
}

}  // namespace partmine
