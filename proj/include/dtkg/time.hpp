#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace dtkg {

// Exact time in seconds.
using Rational = boost::rational<std::int64_t>;

// Parses "12", "-0.25", "3/8". Returns nullopt on anything else, including
// values that would not fit the 64-bit numerator/denominator.
std::optional<Rational> parse_rational(std::string_view text);

// Decimal text when the value has a terminating expansion, "n/d" otherwise.
// parse_rational(format_rational(r)) == r for every r.
std::string format_rational(const Rational& r);

// Closed interval [start, end]; a missing end means unbounded.
class TimeInterval {
 public:
  // Throws MalformedInterval when end < start.
  TimeInterval(Rational start, std::optional<Rational> end);

  static TimeInterval unbounded_from(Rational start) {
    return TimeInterval(start, std::nullopt);
  }

  const Rational& start() const { return start_; }
  const std::optional<Rational>& end() const { return end_; }
  bool bounded() const { return end_.has_value(); }

  bool overlaps(const TimeInterval& other) const;
  bool contains(const Rational& t) const;
  TimeInterval hull(const TimeInterval& other) const;

  // "[0,10]" or "[0,]", the same text the graph format uses after '@'.
  std::string str() const;

  friend bool operator==(const TimeInterval& a, const TimeInterval& b) {
    return a.start_ == b.start_ && a.end_ == b.end_;
  }
  // Start first; bounded ends sort before the unbounded one.
  friend bool operator<(const TimeInterval& a, const TimeInterval& b);

 private:
  Rational start_;
  std::optional<Rational> end_;
};

}  // namespace dtkg
