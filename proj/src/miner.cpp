#include "partmine/miner.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "partmine/error.hpp"
#include "partmine/parallel.hpp"

namespace partmine {
namespace {

struct ItemsetHash {
  std::size_t operator()(const Itemset& s) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Item i : s) {
      h ^= i + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using CandidateIndex = std::unordered_map<Itemset, std::size_t, ItemsetHash>;

// n choose k, saturating at `cap`.
std::uint64_t choose_capped(std::uint64_t n, std::uint64_t k,
                            std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

// Joins frequent (k-1)-itemsets sharing a (k-2)-prefix, then drops any
// candidate with an infrequent (k-1)-subset.
std::vector<Itemset> generate_candidates(const std::vector<Itemset>& level) {
  std::unordered_set<Itemset, ItemsetHash> known(level.begin(), level.end());
  std::vector<Itemset> out;
  for (std::size_t i = 0; i < level.size(); ++i) {
    for (std::size_t j = i + 1; j < level.size(); ++j) {
      const Itemset& a = level[i];
      const Itemset& b = level[j];
      if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) break;
      Itemset cand = a;
      cand.push_back(b.back());
      bool closed = true;
      Itemset sub(cand.size() - 1);
      // The two subsets dropping one of the last two items are a and b.
      for (std::size_t drop = 0; drop + 2 < cand.size() && closed; ++drop) {
        std::copy(cand.begin(), cand.begin() + drop, sub.begin());
        std::copy(cand.begin() + drop + 1, cand.end(), sub.begin() + drop);
        closed = known.contains(sub);
      }
      if (closed) out.push_back(std::move(cand));
    }
  }
  return out;
}

void count_by_subsets(const Itemset& t, std::size_t k,
                      const CandidateIndex& index,
                      std::vector<std::uint64_t>& counts) {
  Itemset buf(k);
  std::vector<std::size_t> pos(k);
  for (std::size_t i = 0; i < k; ++i) pos[i] = i;
  const std::size_t n = t.size();
  while (true) {
    for (std::size_t i = 0; i < k; ++i) buf[i] = t[pos[i]];
    if (auto it = index.find(buf); it != index.end()) ++counts[it->second];
    std::size_t i = k;
    while (i > 0 && pos[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pos[i - 1];
    for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
}

}  // namespace

SupportThreshold::SupportThreshold(Rational value) : value_(value) {
  if (value_ <= 0 || value_ > 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "minsupport must be in (0, 1], got " +
                    to_decimal_string(value_));
  }
}

std::uint64_t SupportThreshold::min_count(std::uint64_t size) const {
  const __int128 num = static_cast<__int128>(value_.numerator()) * size;
  const __int128 den = value_.denominator();
  return static_cast<std::uint64_t>((num + den - 1) / den);
}

PatternSet mine_transactions(std::span<const Itemset> transactions,
                             const SupportThreshold& threshold,
                             std::int64_t segment_id,
                             const MinerOptions& options) {
  if (transactions.empty()) {
    throw Error(ErrorCode::kEmptySegment, "cannot mine an empty segment");
  }
  PatternSet result;
  result.segment_id = segment_id;
  result.segment_size = transactions.size();
  result.minsupport = threshold.value();

  const std::uint64_t n = transactions.size();
  const std::uint64_t min_count = threshold.min_count(n);
  const auto record = [&](const Itemset& s, std::uint64_t c) {
    result.patterns.emplace(s, FrequentPattern{c, Rational(c, n)});
  };

  std::unordered_map<Item, std::uint64_t> item_counts;
  for (const auto& t : transactions)
    for (Item i : t) ++item_counts[i];
  std::vector<Item> frequent_items;
  for (const auto& [item, c] : item_counts)
    if (c >= min_count) frequent_items.push_back(item);
  std::sort(frequent_items.begin(), frequent_items.end());
  if (frequent_items.empty()) return result;

  std::vector<Itemset> level;
  for (Item i : frequent_items) {
    level.push_back({i});
    record(level.back(), item_counts[i]);
  }

  // Later levels only need the frequent items of each transaction.
  std::vector<Itemset> reduced;
  reduced.reserve(transactions.size());
  for (const auto& t : transactions) {
    Itemset r;
    std::set_intersection(t.begin(), t.end(), frequent_items.begin(),
                          frequent_items.end(), std::back_inserter(r));
    if (r.size() >= 2) reduced.push_back(std::move(r));
  }

  for (std::size_t k = 2; !level.empty(); ++k) {
    if (options.max_length != 0 && k > options.max_length) break;
    std::vector<Itemset> candidates = generate_candidates(level);
    if (candidates.empty()) break;
    CandidateIndex index;
    index.reserve(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c)
      index.emplace(candidates[c], c);
    std::vector<std::uint64_t> counts(candidates.size(), 0);

    for (const auto& t : reduced) {
      if (t.size() < k) continue;
      if (choose_capped(t.size(), k, candidates.size()) <= candidates.size()) {
        count_by_subsets(t, k, index, counts);
      } else {
        for (std::size_t c = 0; c < candidates.size(); ++c)
          if (contains(t, candidates[c])) ++counts[c];
      }
    }

    std::vector<Itemset> next;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (counts[c] >= min_count) {
        record(candidates[c], counts[c]);
        next.push_back(std::move(candidates[c]));
      }
    }
    level = std::move(next);
  }
  return result;
}

PatternSet mine_segment(const Segment& seg, const SupportThreshold& threshold,
                        const MinerOptions& options) {
  return mine_transactions(seg.transactions, threshold,
                           static_cast<std::int64_t>(seg.segment_id), options);
}

PatternSet mine_centralized(const TransactionDataset& ds,
                            const SupportThreshold& threshold,
                            const MinerOptions& options) {
  if (ds.empty()) {
    throw Error(ErrorCode::kEmptyDataset,
                "cannot mine empty dataset '" + ds.source_name + "'");
  }
  return mine_transactions(ds.transactions, threshold, kWholeDataset, options);
}

std::vector<PatternSet> mine_partition(const Partition& partition,
                                       const SupportThreshold& threshold,
                                       std::size_t threads,
                                       const MinerOptions& options) {
  std::vector<PatternSet> out(partition.segments.size());
  parallel_for(out.size(), threads, [&](std::size_t i) {
    out[i] = mine_segment(partition.segments[i], threshold, options);
  });
  return out;
}

std::optional<Rational> support_of(const PatternSet& ps,
                                   std::span<const Item> itemset) {
  const auto it = ps.patterns.find(Itemset(itemset.begin(), itemset.end()));
  if (it == ps.patterns.end()) return std::nullopt;
  return it->second.support;
}

}  // namespace partmine
