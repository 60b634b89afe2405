#include "dtkg/assertion.hpp"

#include <tuple>

namespace dtkg {

namespace {

// nullopt sorts first.
int compare_intervals(const std::optional<TimeInterval>& a,
                      const std::optional<TimeInterval>& b) {
  if (a.has_value() != b.has_value()) return a.has_value() ? 1 : -1;
  if (!a) return 0;
  if (*a < *b) return -1;
  if (*b < *a) return 1;
  return 0;
}

}  // namespace

std::string Assertion::str() const {
  std::string out = subject.str() + " " + predicate.str() + " " + object.str();
  if (interval) out += " @" + interval->str();
  return out;
}

bool same_fact(const Assertion& a, const Assertion& b) {
  return a.subject == b.subject && a.predicate == b.predicate &&
         a.object == b.object && a.interval == b.interval;
}

bool FactLess::operator()(const Assertion& a, const Assertion& b) const {
  if (auto c = a.subject <=> b.subject; c != 0) return c < 0;
  if (auto c = a.predicate <=> b.predicate; c != 0) return c < 0;
  if (auto c = a.object <=> b.object; c != 0) return c < 0;
  return compare_intervals(a.interval, b.interval) < 0;
}

bool PosLess::operator()(const Assertion& a, const Assertion& b) const {
  if (auto c = a.predicate <=> b.predicate; c != 0) return c < 0;
  if (auto c = a.object <=> b.object; c != 0) return c < 0;
  if (auto c = a.subject <=> b.subject; c != 0) return c < 0;
  return compare_intervals(a.interval, b.interval) < 0;
}

}  // namespace dtkg
