#include "dtkg/time.hpp"

#include <cctype>

#include "dtkg/errors.hpp"

namespace dtkg {

namespace {

// 18 digits always fit in int64_t.
constexpr std::size_t kMaxDigits = 18;

std::optional<std::int64_t> parse_digits(std::string_view s) {
  if (s.empty() || s.size() > kMaxDigits) return std::nullopt;
  std::int64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_digits(text.substr(0, slash));
    auto den = parse_digits(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    value = Rational(*num, *den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto int_part = text.substr(0, dot);
    auto frac_part = text.substr(dot + 1);
    if (int_part.size() + frac_part.size() > kMaxDigits) return std::nullopt;
    auto whole = parse_digits(int_part);
    auto frac = parse_digits(frac_part);
    if (!whole || !frac) return std::nullopt;
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    value = Rational(*whole * scale + *frac, scale);
  } else {
    auto whole = parse_digits(text);
    if (!whole) return std::nullopt;
    value = Rational(*whole);
  }
  return negative ? -value : value;
}

std::string format_rational(const Rational& r) {
  std::int64_t num = r.numerator();
  std::int64_t den = r.denominator();
  if (den == 1) return std::to_string(num);

  // Terminating decimal iff den = 2^a 5^b; then den divides 10^max(a,b).
  std::int64_t rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) rest /= 2, ++twos;
  while (rest % 5 == 0) rest /= 5, ++fives;
  int digits = std::max(twos, fives);
  if (rest != 1 || digits > 18) {
    return std::to_string(num) + "/" + std::to_string(den);
  }
  __int128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  __int128 scaled = static_cast<__int128>(num) * (scale / den);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string text;
  while (scaled > 0 || static_cast<int>(text.size()) <= digits) {
    text.insert(text.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
    scaled /= 10;
  }
  text.insert(text.end() - digits, '.');
  return negative ? "-" + text : text;
}

TimeInterval::TimeInterval(Rational start, std::optional<Rational> end)
    : start_(start), end_(end) {
  if (end_ && *end_ < start_) {
    throw MalformedInterval("interval end " + format_rational(*end_) +
                            " precedes start " + format_rational(start_));
  }
}

bool TimeInterval::overlaps(const TimeInterval& other) const {
  bool this_starts_in_time = !other.end_ || start_ <= *other.end_;
  bool other_starts_in_time = !end_ || other.start_ <= *end_;
  return this_starts_in_time && other_starts_in_time;
}

bool TimeInterval::contains(const Rational& t) const {
  return start_ <= t && (!end_ || t <= *end_);
}

TimeInterval TimeInterval::hull(const TimeInterval& other) const {
  Rational start = std::min(start_, other.start_);
  std::optional<Rational> end;
  if (end_ && other.end_) end = std::max(*end_, *other.end_);
  return TimeInterval(start, end);
}

std::string TimeInterval::str() const {
  return "[" + format_rational(start_) + "," +
         (end_ ? format_rational(*end_) : std::string()) + "]";
}

bool operator<(const TimeInterval& a, const TimeInterval& b) {
  if (a.start_ != b.start_) return a.start_ < b.start_;
  if (a.end_.has_value() != b.end_.has_value()) return a.end_.has_value();
  return a.end_ && *a.end_ < *b.end_;
}

}  // namespace dtkg
