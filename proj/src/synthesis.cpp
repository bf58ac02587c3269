#include "partmine/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "partmine/error.hpp"

namespace partmine {
namespace {

// Slack for the floating-point trend statistics only; support thresholds are
// compared exactly.
constexpr double kTrendTolerance = 1e-12;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

Rational missing_estimate(MissingSupportPolicy policy, const Rational& upper) {
  switch (policy) {
    case MissingSupportPolicy::kLowerBound: return Rational(0);
    case MissingSupportPolicy::kUpperBound: return upper;
    case MissingSupportPolicy::kMidpoint: return upper / 2;
  }
  return upper / 2;
}

// Average ranks (1-based), ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

const char* to_string(MissingSupportPolicy policy) {
  switch (policy) {
    case MissingSupportPolicy::kLowerBound: return "LowerBound";
    case MissingSupportPolicy::kUpperBound: return "UpperBound";
    case MissingSupportPolicy::kMidpoint: return "Midpoint";
  }
  return "Midpoint";
}

const char* to_string(PatternLabel label) {
  switch (label) {
    case PatternLabel::kGlobal: return "Global";
    case PatternLabel::kExceptional: return "Exceptional";
    case PatternLabel::kTrend: return "Trend";
    case PatternLabel::kOther: return "Other";
  }
  return "Other";
}

MissingSupportPolicy parse_missing_support_policy(std::string_view text) {
  for (auto p : {MissingSupportPolicy::kLowerBound,
                 MissingSupportPolicy::kUpperBound,
                 MissingSupportPolicy::kMidpoint}) {
    if (text == to_string(p)) return p;
  }
  invalid("unknown missing-support policy '" + std::string(text) + "'");
}

PatternLabel parse_pattern_label(std::string_view text) {
  for (auto l : {PatternLabel::kGlobal, PatternLabel::kExceptional,
                 PatternLabel::kTrend, PatternLabel::kOther}) {
    if (text == to_string(l)) return l;
  }
  invalid("unknown pattern label '" + std::string(text) + "'");
}

void SynthesisConfig::validate() const {
  if (minsupport <= 0 || minsupport > 1)
    invalid("minsupport must be in (0, 1]");
  if (global_coverage_fraction <= 0 || global_coverage_fraction > 1)
    invalid("global_coverage_fraction must be in (0, 1]");
  if (exceptional_support_multiplier <= 1)
    invalid("exceptional_support_multiplier must be > 1");
  if (exceptional_coverage_fraction <= 0 || exceptional_coverage_fraction >= 1)
    invalid("exceptional_coverage_fraction must be in (0, 1)");
  if (exceptional_coverage_fraction >= global_coverage_fraction)
    invalid("exceptional_coverage_fraction must be below global_coverage_fraction");
  if (trend_min_slope <= 0) invalid("trend_min_slope must be > 0");
  if (trend_min_rank_corr <= 0 || trend_min_rank_corr > 1)
    invalid("trend_min_rank_corr must be in (0, 1]");
}

Rational largest_infrequent_support(const Rational& minsupport,
                                    std::uint64_t size) {
  if (size == 0) return Rational(0);
  const std::uint64_t min_count = SupportThreshold(minsupport).min_count(size);
  return Rational(static_cast<std::int64_t>(min_count) - 1,
                  static_cast<std::int64_t>(size));
}

LocalSummary summarize(const PatternSet& ps) {
  LocalSummary s;
  s.size = ps.segment_size;
  s.minsupport = ps.minsupport;
  for (const auto& [items, p] : ps.patterns)
    s.patterns.emplace(items, SupportInterval::exact(p.support));
  s.unreported_upper = largest_infrequent_support(ps.minsupport, ps.segment_size);
  return s;
}

std::uint64_t SynthesisReport::total_size() const noexcept {
  return std::accumulate(segment_sizes.begin(), segment_sizes.end(),
                         std::uint64_t{0});
}

SynthesisReport synthesize(std::span<const PatternSet> locals,
                           const SynthesisConfig& cfg) {
  std::vector<LocalSummary> summaries;
  summaries.reserve(locals.size());
  for (const auto& ps : locals) summaries.push_back(summarize(ps));
  return synthesize(std::span<const LocalSummary>(summaries), cfg);
}

SynthesisReport synthesize(std::span<const LocalSummary> locals,
                           const SynthesisConfig& cfg) {
  cfg.validate();
  if (locals.empty()) invalid("synthesis needs at least one segment");

  SynthesisReport report;
  report.k = locals.size();
  report.config = cfg;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < locals.size(); ++i) {
    const auto& l = locals[i];
    if (l.minsupport != cfg.minsupport) {
      throw Error(ErrorCode::kConfigMismatch,
                  "segment " + std::to_string(i) + " was mined at minsupport " +
                      to_decimal_string(l.minsupport) + ", synthesis uses " +
                      to_decimal_string(cfg.minsupport));
    }
    if (l.size == 0) invalid("segment " + std::to_string(i) + " is empty");
    report.segment_sizes.push_back(l.size);
    total += l.size;
  }

  std::vector<Rational> weights;
  for (const auto& l : locals)
    weights.emplace_back(static_cast<std::int64_t>(l.size),
                         static_cast<std::int64_t>(total));

  for (std::size_t i = 0; i < locals.size(); ++i)
    report.unreported_upper += weights[i] * locals[i].unreported_upper;

  for (const auto& l : locals) {
    for (const auto& [items, unused] : l.patterns) {
      if (report.patterns.contains(items)) continue;
      SynthesizedPattern sp;
      sp.per_segment_supports.resize(locals.size());
      for (std::size_t i = 0; i < locals.size(); ++i) {
        const auto it = locals[i].patterns.find(items);
        if (it != locals[i].patterns.end()) {
          const SupportInterval& iv = it->second;
          ++sp.coverage;
          sp.support_lower += weights[i] * iv.lower;
          sp.support_upper += weights[i] * iv.upper;
          sp.support_estimate += weights[i] * iv.estimate;
          sp.per_segment_supports[i] = iv.estimate;
        } else {
          const Rational& u = locals[i].unreported_upper;
          sp.support_upper += weights[i] * u;
          sp.support_estimate +=
              weights[i] * missing_estimate(cfg.missing_support_policy, u);
        }
      }
      report.patterns.emplace(items, std::move(sp));
    }
  }
  return report;
}

TrendStatistics trend_statistics(std::span<const double> values) {
  TrendStatistics stats;
  const std::size_t n = values.size();
  if (n < 2) return stats;
  std::vector<double> x(n);
  std::iota(x.begin(), x.end(), 0.0);
  const double mx = static_cast<double>(n - 1) / 2.0;
  const double my = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (values[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  stats.slope = sxy / sxx;
  const std::vector<double> ranks = average_ranks(values);
  std::vector<double> ordinal_ranks(n);
  std::iota(ordinal_ranks.begin(), ordinal_ranks.end(), 1.0);
  stats.rank_correlation = pearson(ordinal_ranks, ranks);
  return stats;
}

PatternLabel classify_pattern(const SynthesizedPattern& pattern, std::size_t k,
                              const SynthesisConfig& cfg) {
  const Rational coverage_fraction(static_cast<std::int64_t>(pattern.coverage),
                                   static_cast<std::int64_t>(k));
  if (coverage_fraction >= cfg.global_coverage_fraction &&
      pattern.support_estimate >= cfg.minsupport) {
    return PatternLabel::kGlobal;
  }

  Rational max_local{0};
  for (const auto& s : pattern.per_segment_supports)
    if (s && *s > max_local) max_local = *s;
  const Rational high =
      std::min(Rational(1), cfg.exceptional_support_multiplier * cfg.minsupport);
  if (coverage_fraction <= cfg.exceptional_coverage_fraction &&
      max_local >= high) {
    return PatternLabel::kExceptional;
  }

  if (k >= 3) {
    std::vector<double> series;
    series.reserve(pattern.per_segment_supports.size());
    for (const auto& s : pattern.per_segment_supports)
      series.push_back(s ? to_double(*s) : 0.0);
    const TrendStatistics t = trend_statistics(series);
    if (std::abs(t.slope) >= to_double(cfg.trend_min_slope) - kTrendTolerance &&
        std::abs(t.rank_correlation) >=
            to_double(cfg.trend_min_rank_corr) - kTrendTolerance) {
      return PatternLabel::kTrend;
    }
  }
  return PatternLabel::kOther;
}

SynthesisReport classify(SynthesisReport report, const SynthesisConfig& cfg) {
  cfg.validate();
  for (auto& [items, p] : report.patterns)
    p.label = classify_pattern(p, report.k, cfg);
  return report;
}

Rational approximation_rate(const SynthesisReport& report,
                            const PatternSet& oracle) {
  if (oracle.patterns.empty()) return Rational(1);
  std::int64_t hits = 0;
  for (const auto& [items, unused] : oracle.patterns) {
    const auto it = report.patterns.find(items);
    if (it != report.patterns.end() && it->second.label == PatternLabel::kGlobal)
      ++hits;
  }
  return Rational(hits, static_cast<std::int64_t>(oracle.patterns.size()));
}

}  // namespace partmine
