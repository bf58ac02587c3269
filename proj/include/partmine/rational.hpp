#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace partmine {

// Exact support arithmetic. Supports are count/size ratios, so every
// threshold comparison stays exact at boundaries such as 0.5.
using Rational = boost::rational<std::int64_t>;

// Parses a fraction such as "3/4" or a plain decimal such as "0.05" exactly.
// Throws Error(kInvalidArgument) on malformed text.
Rational parse_rational(std::string_view text);

// Decimal rendering, rounded half-up to `digits` fractional digits with
// trailing zeros stripped ("0.5", "0.538461538462", "1").
std::string to_decimal_string(const Rational& r, int digits = 12);

double to_double(const Rational& r);

// Smallest integer >= r.
std::int64_t ceil(const Rational& r);

// True iff count / size >= threshold, evaluated without division.
inline bool meets(std::uint64_t count, std::uint64_t size,
                  const Rational& threshold) {
  return static_cast<__int128>(count) * threshold.denominator() >=
         static_cast<__int128>(threshold.numerator()) * size;
}

}  // namespace partmine
