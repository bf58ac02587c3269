#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>

#include "partmine/dataset.hpp"
#include "partmine/rational.hpp"

namespace partmine {

// minsupport in (0, 1].
class SupportThreshold {
 public:
  explicit SupportThreshold(Rational value);

  const Rational& value() const noexcept { return value_; }

  // Smallest count that is frequent in a segment of `size` transactions.
  std::uint64_t min_count(std::uint64_t size) const;

  friend bool operator==(const SupportThreshold&,
                         const SupportThreshold&) = default;

 private:
  Rational value_;
};

struct FrequentPattern {
  std::uint64_t count = 0;
  Rational support;

  friend bool operator==(const FrequentPattern&,
                         const FrequentPattern&) = default;
};

inline constexpr std::int64_t kWholeDataset = -1;

struct PatternSet {
  // kWholeDataset for centralized runs.
  std::int64_t segment_id = kWholeDataset;
  std::uint64_t segment_size = 0;
  Rational minsupport{1};
  // Ordered lexicographically by itemset.
  std::map<Itemset, FrequentPattern> patterns;

  std::size_t size() const noexcept { return patterns.size(); }

  friend bool operator==(const PatternSet&, const PatternSet&) = default;
};

struct MinerOptions {
  // Longest itemset to report; 0 means unlimited.
  std::size_t max_length = 0;
};

// Level-wise Apriori with hashed candidate counting. Reports exactly the
// itemsets with count / |transactions| >= minsupport.
PatternSet mine_transactions(std::span<const Itemset> transactions,
                             const SupportThreshold& threshold,
                             std::int64_t segment_id,
                             const MinerOptions& options = {});

PatternSet mine_segment(const Segment& seg, const SupportThreshold& threshold,
                        const MinerOptions& options = {});

PatternSet mine_centralized(const TransactionDataset& ds,
                            const SupportThreshold& threshold,
                            const MinerOptions& options = {});

// Mines every segment of a partition, in parallel over `threads` workers.
// Output order follows segment ordinal.
std::vector<PatternSet> mine_partition(const Partition& partition,
                                       const SupportThreshold& threshold,
                                       std::size_t threads,
                                       const MinerOptions& options = {});

std::optional<Rational> support_of(const PatternSet& ps,
                                   std::span<const Item> itemset);

}  // namespace partmine
