#include "partmine/rational.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "partmine/error.hpp"

namespace partmine {
namespace {

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::kInvalidArgument,
              "not a rational number: '" + std::string(text) + "'");
}

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
  if (digits.empty()) bad(whole);
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) bad(whole);
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty() || !std::isdigit(static_cast<unsigned char>(text.front())))
    bad(whole);

  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_int(text.substr(0, slash), whole);
    const std::int64_t den = parse_int(text.substr(slash + 1), whole);
    if (den == 0) bad(whole);
    result = Rational(num, den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.size() > 15) bad(whole);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const std::int64_t ip = parse_int(int_part, whole);
    const std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, whole);
    result = Rational(ip) + Rational(fp, scale);
  } else {
    result = Rational(parse_int(text, whole));
  }
  return negative ? -result : result;
}

std::string to_decimal_string(const Rational& r, int digits) {
  const bool negative = r < 0;
  const Rational a = negative ? -r : r;
  const std::int64_t den = a.denominator();
  __int128 int_part = a.numerator() / den;
  __int128 rem = a.numerator() % den;

  std::string frac;
  for (int i = 0; i < digits; ++i) {
    rem *= 10;
    frac.push_back(static_cast<char>('0' + static_cast<int>(rem / den)));
    rem %= den;
  }
  // Round half up on the next digit.
  if (rem * 2 >= den) {
    int i = digits - 1;
    for (; i >= 0; --i) {
      if (frac[i] == '9') {
        frac[i] = '0';
      } else {
        ++frac[i];
        break;
      }
    }
    if (i < 0) ++int_part;
  }
  while (!frac.empty() && frac.back() == '0') frac.pop_back();

  std::string out = std::to_string(static_cast<std::int64_t>(int_part));
  if (!frac.empty()) out += "." + frac;
  if (negative && out != "0") out.insert(out.begin(), '-');
  return out;
}

double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

std::int64_t ceil(const Rational& r) {
  const std::int64_t n = r.numerator();
  const std::int64_t d = r.denominator();
  std::int64_t q = n / d;
  if (n % d != 0 && n > 0) ++q;
  return q;
}

}  // namespace partmine
