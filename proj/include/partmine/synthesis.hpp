#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "partmine/miner.hpp"
#include "partmine/rational.hpp"

namespace partmine {

// How an unreported local support contributes to the point estimate. The
// bounds always treat it as the interval [0, largest infrequent support].
enum class MissingSupportPolicy { kLowerBound, kUpperBound, kMidpoint };

enum class PatternLabel { kGlobal, kExceptional, kTrend, kOther };

const char* to_string(MissingSupportPolicy policy);
const char* to_string(PatternLabel label);
MissingSupportPolicy parse_missing_support_policy(std::string_view text);
PatternLabel parse_pattern_label(std::string_view text);

struct SynthesisConfig {
  Rational minsupport{1, 2};
  // A pattern is Global when frequent in at least this fraction of segments.
  Rational global_coverage_fraction{1, 2};
  // Exceptional patterns reach min(1, mu * minsupport) somewhere...
  Rational exceptional_support_multiplier{2};
  // ...while covering at most this fraction of segments.
  Rational exceptional_coverage_fraction{1, 5};
  // Support change per segment step.
  Rational trend_min_slope{1, 20};
  Rational trend_min_rank_corr{4, 5};
  MissingSupportPolicy missing_support_policy = MissingSupportPolicy::kMidpoint;

  // Throws Error(kInvalidArgument) naming the offending field.
  void validate() const;

  friend bool operator==(const SynthesisConfig&,
                         const SynthesisConfig&) = default;
};

struct SupportInterval {
  Rational lower;
  Rational estimate;
  Rational upper;

  static SupportInterval exact(const Rational& s) { return {s, s, s}; }

  friend bool operator==(const SupportInterval&,
                         const SupportInterval&) = default;
};

// One input to fusion: a segment's mined pattern set, or the pattern message
// a data source sends upward. Any itemset absent from `patterns` has support
// at most `unreported_upper` in this input.
struct LocalSummary {
  std::uint64_t size = 0;
  Rational minsupport{1};
  std::map<Itemset, SupportInterval> patterns;
  Rational unreported_upper{0};
};

// Largest support strictly below minsupport in a segment of `size`.
Rational largest_infrequent_support(const Rational& minsupport,
                                    std::uint64_t size);

LocalSummary summarize(const PatternSet& ps);

struct SynthesizedPattern {
  std::size_t coverage = 0;
  Rational support_lower;
  Rational support_estimate;
  Rational support_upper;
  // Indexed by ordinal; nullopt where not locally frequent.
  std::vector<std::optional<Rational>> per_segment_supports;
  PatternLabel label = PatternLabel::kOther;

  friend bool operator==(const SynthesizedPattern&,
                         const SynthesizedPattern&) = default;
};

struct SynthesisReport {
  std::size_t k = 0;
  std::vector<std::uint64_t> segment_sizes;
  SynthesisConfig config;
  std::map<Itemset, SynthesizedPattern> patterns;
  // Upper bound on the synthesized support of any itemset not in `patterns`.
  Rational unreported_upper{0};

  std::uint64_t total_size() const noexcept;

  friend bool operator==(const SynthesisReport&,
                         const SynthesisReport&) = default;
};

// Size-weighted fusion of local supports with sound lower/upper bounds.
// `locals` are ordered by segment ordinal. Labels are left as kOther.
SynthesisReport synthesize(std::span<const PatternSet> locals,
                           const SynthesisConfig& cfg);
SynthesisReport synthesize(std::span<const LocalSummary> locals,
                           const SynthesisConfig& cfg);

// Assigns labels with precedence Global > Exceptional > Trend > Other.
SynthesisReport classify(SynthesisReport report, const SynthesisConfig& cfg);

PatternLabel classify_pattern(const SynthesizedPattern& pattern, std::size_t k,
                              const SynthesisConfig& cfg);

struct TrendStatistics {
  double slope = 0.0;
  // Spearman's rho with average ranks for ties; 0 when either side is
  // constant.
  double rank_correlation = 0.0;
};

// Least-squares slope and rank correlation of `values` against 0..n-1.
TrendStatistics trend_statistics(std::span<const double> values);

// Fraction of the oracle's itemsets that were labelled Global. 1 when the
// oracle is empty.
Rational approximation_rate(const SynthesisReport& report,
                            const PatternSet& oracle);

}  // namespace partmine
