#include "partmine/tiering.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <string>
#include <unordered_map>

#include "partmine/error.hpp"
#include "random.hpp"

namespace partmine {
namespace {

std::vector<RecordId> sorted_universe(std::span<const RecordId> universe) {
  std::vector<RecordId> ids(universe.begin(), universe.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw Error(ErrorCode::kInvalidArgument, "duplicate record id in universe");
  return ids;
}

// Cuts `ranked` (best first) into tiers of the configured sizes.
TierAssignment cut(std::uint64_t epoch, const std::vector<RecordId>& ranked,
                   const TierConfig& cfg) {
  const TierSizes sizes = tier_sizes(ranked.size(), cfg);
  TierAssignment a;
  a.epoch = epoch;
  const auto begin = ranked.begin();
  a.hot.assign(begin, begin + sizes.hot);
  a.warm.assign(begin + sizes.hot, begin + sizes.hot + sizes.warm);
  a.cold.assign(begin + sizes.hot + sizes.warm, ranked.end());
  for (auto* tier : {&a.hot, &a.warm, &a.cold})
    std::sort(tier->begin(), tier->end());
  return a;
}

}  // namespace

void TierConfig::validate() const {
  if (hot_fraction <= 0 || warm_fraction <= 0)
    throw Error(ErrorCode::kInvalidArgument,
                "hot and warm fractions must be positive");
  if (hot_fraction + warm_fraction >= 1)
    throw Error(ErrorCode::kInvalidArgument,
                "hot + warm fractions must be below 1");
  if (window_length < 1)
    throw Error(ErrorCode::kInvalidArgument, "window length must be >= 1");
}

TierSizes tier_sizes(std::size_t n, const TierConfig& cfg) {
  const auto scaled = [n](const Rational& f) {
    return static_cast<std::size_t>(
        ceil(f * Rational(static_cast<std::int64_t>(n))));
  };
  TierSizes s;
  s.hot = std::min(n, scaled(cfg.hot_fraction));
  s.warm = std::min(n - s.hot, scaled(cfg.warm_fraction));
  s.cold = n - s.hot - s.warm;
  return s;
}

TierAssignment tier_init(std::span<const RecordId> universe,
                         const TierConfig& cfg) {
  cfg.validate();
  if (universe.empty())
    throw Error(ErrorCode::kEmptyUniverse, "record universe is empty");
  std::vector<RecordId> ids = sorted_universe(universe);
  auto rng = detail::stream_engine(cfg.seed, 0);
  for (std::size_t i = ids.size() - 1; i > 0; --i)
    std::swap(ids[i], ids[detail::uniform_below(rng, i + 1)]);
  return cut(0, ids, cfg);
}

TierAssignment tier_update(const TierAssignment& prev, const AccessLog& log,
                           const TierConfig& cfg) {
  cfg.validate();
  std::vector<RecordId> ids;
  ids.reserve(prev.universe_size());
  for (const auto* tier : {&prev.hot, &prev.warm, &prev.cold})
    ids.insert(ids.end(), tier->begin(), tier->end());
  if (ids.empty())
    throw Error(ErrorCode::kEmptyUniverse, "record universe is empty");
  ids = sorted_universe(ids);

  const std::uint64_t lo = prev.epoch * cfg.window_length;
  const std::uint64_t hi = lo + cfg.window_length;
  std::unordered_map<RecordId, std::uint64_t> freq;
  for (const auto& e : log) {
    if (e.timestamp <= lo || e.timestamp > hi) {
      throw Error(ErrorCode::kOutOfWindowEvent,
                  "event for record " + std::to_string(e.record) + " at time " +
                      std::to_string(e.timestamp) + " is outside window (" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    if (!std::binary_search(ids.begin(), ids.end(), e.record)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "event for unknown record " + std::to_string(e.record));
    }
    ++freq[e.record];
  }

  const auto count = [&](RecordId r) {
    const auto it = freq.find(r);
    return it == freq.end() ? std::uint64_t{0} : it->second;
  };
  // ids is already ascending, so a stable sort keeps the id tie-break.
  std::stable_sort(ids.begin(), ids.end(), [&](RecordId a, RecordId b) {
    return count(a) > count(b);
  });
  return cut(prev.epoch + 1, ids, cfg);
}

std::vector<TierAssignment> tier_run(std::span<const RecordId> universe,
                                     std::span<const AccessLog> logs,
                                     const TierConfig& cfg) {
  std::vector<TierAssignment> out;
  out.push_back(tier_init(universe, cfg));
  for (const auto& log : logs) out.push_back(tier_update(out.back(), log, cfg));
  return out;
}

Rational golden_ratio_check(const TierConfig& cfg) {
  const Rational top = cfg.hot_fraction + cfg.warm_fraction;
  return top / (Rational(1) - top);
}

AccessLog parse_access_log(std::istream& in) {
  AccessLog log;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    const auto field = [&](std::string_view s, std::uint64_t& out) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
    };
    AccessEvent e;
    const bool ok = comma != std::string::npos &&
                    line.find(',', comma + 1) == std::string::npos &&
                    field(std::string_view(line).substr(0, comma), e.record) &&
                    field(std::string_view(line).substr(comma + 1), e.timestamp);
    if (!ok) {
      if (first_content && line.find_first_of("0123456789") != 0 &&
          comma != std::string::npos) {
        first_content = false;  // header
        continue;
      }
      throw ParseError(line_no, "expected 'record_id,timestamp', got '" + line + "'");
    }
    first_content = false;
    if (!log.empty() && e.timestamp < log.back().timestamp)
      throw ParseError(line_no, "timestamps must be non-decreasing");
    log.push_back(e);
  }
  return log;
}

AccessLog load_access_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::kIo, "cannot open access log '" + path.string() + "'");
  return parse_access_log(in);
}

}  // namespace partmine
