#include "partmine/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "partmine/error.hpp"

namespace partmine {

void canonicalize(Itemset& items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
}

bool is_canonical(std::span<const Item> items) {
  return std::adjacent_find(items.begin(), items.end(),
                            std::greater_equal<>()) == items.end();
}

bool contains(std::span<const Item> super, std::span<const Item> sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

std::size_t Partition::total_size() const noexcept {
  std::size_t total = 0;
  for (const auto& s : segments) total += s.size();
  return total;
}

TransactionDataset parse_dataset(std::istream& in, std::string source_name) {
  TransactionDataset ds;
  ds.source_name = std::move(source_name);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    Itemset items;
    std::size_t pos = 0;
    const auto is_space = [](char c) {
      return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
    };
    while (pos < line.size()) {
      while (pos < line.size() && is_space(line[pos])) ++pos;
      if (pos == line.size()) break;
      std::size_t end = pos;
      while (end < line.size() && !is_space(line[end])) ++end;
      const std::string_view token(line.data() + pos, end - pos);
      Item value = 0;
      auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (token.front() == '-') {
        throw ParseError(line_no,
                         "negative item id '" + std::string(token) + "'");
      }
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(line_no,
                         "invalid item id '" + std::string(token) + "'");
      }
      items.push_back(value);
      pos = end;
    }
    if (items.empty()) continue;
    canonicalize(items);
    ds.transactions.push_back(std::move(items));
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failure in " + ds.source_name);
  return ds;
}

TransactionDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open dataset '" + path.string() + "'");
  }
  return parse_dataset(in, path.filename().string());
}

void write_dataset(std::ostream& out, const TransactionDataset& ds) {
  for (const auto& t : ds.transactions) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out << ' ';
      out << t[i];
    }
    out << '\n';
  }
}

namespace {

Segment make_segment(const TransactionDataset& ds, std::size_t index,
                     std::size_t begin, std::size_t end) {
  Segment seg;
  seg.segment_id = index;
  seg.ordinal = index;
  seg.transactions.assign(ds.transactions.begin() + begin,
                          ds.transactions.begin() + end);
  return seg;
}

}  // namespace

Partition partition_sequential(const TransactionDataset& ds,
                               std::size_t max_segment_size) {
  if (max_segment_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_segment_size must be >= 1");
  }
  Partition p;
  p.strategy = PartitionStrategy::kSequential;
  p.parameter = max_segment_size;
  for (std::size_t begin = 0, i = 0; begin < ds.size();
       begin += max_segment_size, ++i) {
    const std::size_t end = std::min(ds.size(), begin + max_segment_size);
    p.segments.push_back(make_segment(ds, i, begin, end));
  }
  return p;
}

Partition partition_count(const TransactionDataset& ds, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  Partition p;
  p.strategy = PartitionStrategy::kCount;
  p.parameter = k;
  const std::size_t n = ds.size();
  const std::size_t segments = std::min(k, n);
  if (segments == 0) return p;
  const std::size_t base = n / segments;
  const std::size_t extra = n % segments;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < segments; ++i) {
    const std::size_t len = base + (i < extra ? 1 : 0);
    p.segments.push_back(make_segment(ds, i, begin, begin + len));
    begin += len;
  }
  return p;
}

}  // namespace partmine
