#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace partmine {

using Item = std::uint32_t;

// Strictly increasing item ids. Used both for transactions and patterns.
using Itemset = std::vector<Item>;

// Sorts and deduplicates in place, producing the canonical form.
void canonicalize(Itemset& items);

bool is_canonical(std::span<const Item> items);

// True iff every item of `sub` occurs in `super` (both canonical).
bool contains(std::span<const Item> super, std::span<const Item> sub);

struct TransactionDataset {
  std::vector<Itemset> transactions;
  std::string source_name;

  std::size_t size() const noexcept { return transactions.size(); }
  bool empty() const noexcept { return transactions.empty(); }

  friend bool operator==(const TransactionDataset&,
                         const TransactionDataset&) = default;
};

struct Segment {
  std::size_t segment_id = 0;
  std::size_t ordinal = 0;
  std::vector<Itemset> transactions;

  std::size_t size() const noexcept { return transactions.size(); }
};

enum class PartitionStrategy { kSequential, kCount };

struct Partition {
  std::vector<Segment> segments;
  PartitionStrategy strategy = PartitionStrategy::kSequential;
  // max_segment_size for kSequential, k for kCount.
  std::size_t parameter = 0;

  std::size_t total_size() const noexcept;
};

// One transaction per non-empty line of whitespace-separated non-negative
// integers. Blank lines are skipped; CRLF endings are accepted.
TransactionDataset load_dataset(const std::filesystem::path& path);
TransactionDataset parse_dataset(std::istream& in, std::string source_name);

// Inverse of parse_dataset for canonical data.
void write_dataset(std::ostream& out, const TransactionDataset& ds);

// Consecutive slices of exactly max_segment_size transactions (the last one
// may be shorter).
Partition partition_sequential(const TransactionDataset& ds,
                               std::size_t max_segment_size);

// k balanced consecutive slices; the first n mod k get one extra
// transaction. Fewer than k segments only when the dataset is smaller than k.
Partition partition_count(const TransactionDataset& ds, std::size_t k);

}  // namespace partmine
