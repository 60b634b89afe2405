#pragma once

#include <optional>
#include <string>

#include "dtkg/term.hpp"
#include "dtkg/time.hpp"

namespace dtkg {

// Empty rule id means asserted.
struct Provenance {
  std::string rule;

  static Provenance asserted() { return {}; }
  static Provenance inferred(std::string rule_id) { return {std::move(rule_id)}; }
  bool is_asserted() const { return rule.empty(); }
};

struct Assertion {
  Term subject;
  Term predicate;
  Term object;
  std::optional<TimeInterval> interval;
  Provenance provenance;

  // Text like "ex:dt1 cco:represents ex:vehicle1 @[0,10]".
  std::string str() const;
};

// Fact identity ignores provenance.
bool same_fact(const Assertion& a, const Assertion& b);
inline bool operator==(const Assertion& a, const Assertion& b) { return same_fact(a, b); }

// Subject, predicate, object, interval. Provenance does not participate.
struct FactLess {
  bool operator()(const Assertion& a, const Assertion& b) const;
};

// Predicate, object, subject, interval.
struct PosLess {
  bool operator()(const Assertion& a, const Assertion& b) const;
};

}  // namespace dtkg
