#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "partmine/rational.hpp"

namespace partmine {

using RecordId = std::uint64_t;

struct AccessEvent {
  RecordId record = 0;
  std::uint64_t timestamp = 0;

  friend bool operator==(const AccessEvent&, const AccessEvent&) = default;
};

// Events in non-decreasing timestamp order.
using AccessLog = std::vector<AccessEvent>;

struct TierConfig {
  Rational hot_fraction{5, 100};
  Rational warm_fraction{30, 100};
  std::uint64_t window_length = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TierSizes {
  std::size_t hot = 0;
  std::size_t warm = 0;
  std::size_t cold = 0;
};

// Ceil-based cuts clamped so the three sizes sum to n.
TierSizes tier_sizes(std::size_t n, const TierConfig& cfg);

struct TierAssignment {
  std::uint64_t epoch = 0;
  // Each sorted ascending.
  std::vector<RecordId> hot;
  std::vector<RecordId> warm;
  std::vector<RecordId> cold;

  std::size_t universe_size() const noexcept {
    return hot.size() + warm.size() + cold.size();
  }

  friend bool operator==(const TierAssignment&,
                         const TierAssignment&) = default;
};

// Epoch-0 assignment from a seeded shuffle of the universe.
TierAssignment tier_init(std::span<const RecordId> universe,
                         const TierConfig& cfg);

// Re-ranks the universe by window visit count (descending, ties by record id)
// and cuts it into tiers. Events must fall in
// (epoch * window_length, (epoch + 1) * window_length].
TierAssignment tier_update(const TierAssignment& prev, const AccessLog& log,
                           const TierConfig& cfg);

// Initial assignment followed by one update per window.
std::vector<TierAssignment> tier_run(std::span<const RecordId> universe,
                                     std::span<const AccessLog> logs,
                                     const TierConfig& cfg);

// (hot + warm) : cold.
Rational golden_ratio_check(const TierConfig& cfg);

// CSV `record_id,timestamp`, header line optional.
AccessLog parse_access_log(std::istream& in);
AccessLog load_access_log(const std::filesystem::path& path);

}  // namespace partmine
