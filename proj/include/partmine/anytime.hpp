#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "partmine/dataset.hpp"
#include "partmine/miner.hpp"
#include "partmine/rational.hpp"

namespace partmine {

struct AnytimeConfig {
  std::size_t sample_size = 1;
  std::size_t rounds = 1;
  std::uint64_t seed = 0;
  Rational minsupport{1, 2};
  // An itemset is admitted once frequent in at least this fraction of the
  // samples drawn so far.
  Rational admit_vote_fraction{1, 2};
  MinerOptions miner;

  void validate() const;
};

struct VoteAccumulator {
  std::uint64_t times_frequent = 0;
  Rational sum_of_supports{0};

  friend bool operator==(const VoteAccumulator&,
                         const VoteAccumulator&) = default;
};

struct EnsembleState {
  std::size_t round = 0;
  std::map<Itemset, VoteAccumulator> accumulators;
  // P_n: admitted itemsets with their mean support over the samples where
  // they were frequent.
  std::map<Itemset, Rational> admitted;

  friend bool operator==(const EnsembleState&, const EnsembleState&) = default;
};

// Sorted indices of a uniform sample without replacement. The stream depends
// only on (seed, round), so any round can be reproduced in isolation.
std::vector<std::size_t> draw_sample(std::size_t population,
                                     std::size_t sample_size,
                                     std::uint64_t seed, std::size_t round);

struct RoundSample {
  std::vector<std::size_t> sample_ids;
  PatternSet patterns;
};

// Draws and mines the sample for zero-based round `round`.
RoundSample sample_round(const TransactionDataset& ds, const AnytimeConfig& cfg,
                         std::size_t round);

// Folds one mined sample into the ensemble and recomputes the admitted view.
void fold_sample(EnsembleState& state, const PatternSet& sample,
                 const AnytimeConfig& cfg);

EnsembleState anytime_round(const TransactionDataset& ds, EnsembleState state,
                            const AnytimeConfig& cfg);

// Rebuilds P_n from the full list of per-sample pattern sets.
EnsembleState rebuild_ensemble(std::span<const PatternSet> samples,
                               const AnytimeConfig& cfg);

struct RoundRecord {
  std::size_t round = 0;  // 1-based
  std::vector<std::size_t> sample_ids;
  Rational rate{0};
  std::size_t admitted_count = 0;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

// Fraction of oracle itemsets present in `admitted`; 1 for an empty oracle.
Rational approximation_rate(const std::map<Itemset, Rational>& admitted,
                            const PatternSet& oracle);

// Runs every round against the centralized oracle. Sampling and mining run
// on `threads` workers; the fold is done in round order.
std::vector<RoundRecord> anytime_run(const TransactionDataset& ds,
                                     const AnytimeConfig& cfg,
                                     std::size_t threads = 1);

}  // namespace partmine
