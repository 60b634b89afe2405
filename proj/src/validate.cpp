#include <algorithm>
#include <set>
#include <tuple>

#include "dtkg/reasoner.hpp"
#include "dtkg/schema.hpp"

namespace dtkg {

namespace {

using namespace vocab;

Violation error(std::string constraint, const Term& focus, std::string message) {
  return {std::move(constraint), Severity::Error, focus, std::move(message)};
}

Violation warning(std::string constraint, const Term& focus, std::string message) {
  return {std::move(constraint), Severity::Warning, focus, std::move(message)};
}

// Subjects with an entailed type under cls.
std::set<Term> instances_of(const Graph& g, const Term& cls) {
  std::set<Term> out;
  for (const auto& a : g.find(std::nullopt, type_of(), std::nullopt)) {
    if (g.class_ancestors(a.object).contains(cls)) out.insert(a.subject);
  }
  return out;
}

std::vector<TimeInterval> extents(const Graph& g, const Term& x, const Term& cls) {
  std::vector<TimeInterval> out;
  for (const auto& a : g.find(x, type_of(), std::nullopt)) {
    if (g.class_ancestors(a.object).contains(cls)) {
      out.push_back(a.interval.value_or(TimeInterval::unbounded_from(0)));
    }
  }
  return out;
}

void check_c2(const Graph& g, std::vector<Violation>& out) {
  for (const auto& x : instances_of(g, InformationContentEntity())) {
    bool borne = false;
    for (const auto& a : g.find(x, genericallyDependsOn(), std::nullopt)) {
      if (g.has_type(a.object, InformationBearingEntity())) borne = true;
    }
    if (!borne) {
      out.push_back(warning("C2", x,
                            x.str() + " has no genericallyDependsOn link to an "
                                      "information bearing entity"));
    }
  }
}

void check_c3(const Graph& g, std::vector<Violation>& out) {
  for (const auto& s : instances_of(g, SynchronizingProcess())) {
    bool twinned = false;
    for (const auto& a : g.find(std::nullopt, participatesIn(), s)) {
      if (g.has_type(a.subject, DigitalTwinInstance())) twinned = true;
    }
    if (!twinned) {
      out.push_back(error("C3", s, s.str() + " has no digital twin instance participant"));
    }
  }
}

bool counterpart_me_supported(const Graph& g, const Term& x, const Term& y) {
  if (!g.has_type(x, DigitalTwinInstance()) || !g.has_type(y, MaterialEntity())) return false;
  if (g.find(x, represents(), y).empty()) return false;
  for (const auto& a : g.find(x, participatesIn(), std::nullopt)) {
    if (g.has_type(a.object, SynchronizingProcess()) &&
        !g.find(y, participatesIn(), a.object).empty()) {
      return true;
    }
  }
  return false;
}

bool counterpart_process_supported(const Graph& g, const Term& x, const Term& y) {
  if (!g.has_type(x, DigitalTwinInstance())) return false;
  if (g.find(x, represents(), y).empty()) return false;
  auto y_extents = extents(g, y, Process());
  for (const auto& a : g.find(x, participatesIn(), std::nullopt)) {
    for (const auto& is : extents(g, a.object, SynchronizingProcess())) {
      for (const auto& iy : y_extents) {
        if (is.overlaps(iy)) return true;
      }
    }
  }
  return false;
}

void check_c4(const Graph& g, std::vector<Violation>& out) {
  for (const auto& a : g.find(std::nullopt, isCounterpartMaterialEntity(), std::nullopt)) {
    if (!counterpart_me_supported(g, a.subject, a.object)) {
      out.push_back(error("C4", a.subject,
                          a.subject.str() + " isCounterpartMaterialEntity " + a.object.str() +
                              " lacks a shared synchronizing process or the required types"));
    }
  }
  for (const auto& a : g.find(std::nullopt, isCounterpartProcess(), std::nullopt)) {
    if (!counterpart_process_supported(g, a.subject, a.object)) {
      out.push_back(error("C4", a.subject,
                          a.subject.str() + " isCounterpartProcess " + a.object.str() +
                              " lacks an overlapping synchronizing process or the required types"));
    }
  }
}

void check_c5(const Graph& g, std::vector<Violation>& out) {
  for (const auto& c : instances_of(g, PartReplacementChange())) {
    bool accompanied = false;
    for (const auto& bearer : g.find(std::nullopt, participatesIn(), c)) {
      for (const auto& p : g.find(bearer.subject, participatesIn(), std::nullopt)) {
        if (g.has_type(p.object, QualityChange())) accompanied = true;
      }
    }
    if (!accompanied) {
      out.push_back(warning("C5", c,
                            c.str() + " replaces a part but no quality change of the same "
                                      "bearer is recorded"));
    }
  }
}

void check_c6(const Graph& g, std::vector<Violation>& out) {
  std::map<Term, std::set<Term>> parts;
  for (const auto& a : g.find(std::nullopt, hasProperContinuantPart(), std::nullopt)) {
    parts[a.subject].insert(a.object);
  }
  for (const auto& [start, direct] : parts) {
    std::set<Term> seen;
    std::vector<Term> stack(direct.begin(), direct.end());
    bool cyclic = false;
    while (!stack.empty() && !cyclic) {
      Term t = stack.back();
      stack.pop_back();
      if (t == start) cyclic = true;
      if (!seen.insert(t).second) continue;
      if (auto it = parts.find(t); it != parts.end()) {
        stack.insert(stack.end(), it->second.begin(), it->second.end());
      }
    }
    if (cyclic) {
      out.push_back(error("C6", start,
                          start.str() + " is its own proper part (hasProperContinuantPart cycle)"));
    }
  }
}

}  // namespace

std::size_t ValidationReport::errors() const {
  return std::count_if(violations.begin(), violations.end(),
                       [](const Violation& v) { return v.severity == Severity::Error; });
}

std::size_t ValidationReport::warnings() const {
  return violations.size() - errors();
}

std::vector<Violation> domain_range_violations(const Graph& graph) {
  std::vector<Violation> out;
  for (const auto& a : graph.assertions()) {
    if (a.predicate == type_of() || !graph.has_relation(a.predicate)) continue;
    const SchemaRelation& rel = graph.relation(a.predicate);
    std::string fact = a.subject.str() + " " + a.predicate.str() + " " + a.object.str();
    if (rel.domain != Entity()) {
      for (const auto& t : graph.asserted_types(a.subject)) {
        if (graph.are_disjoint(t, rel.domain)) {
          out.push_back(error("C1", a.subject,
                              fact + ": subject type " + t.str() +
                                  " is disjoint from domain " + rel.domain.str()));
        }
      }
    }
    if (rel.range != Entity()) {
      if (a.object.is_literal()) {
        out.push_back(error("C1", a.subject,
                            fact + ": literal object where range " + rel.range.str() +
                                " is required"));
      } else {
        for (const auto& t : graph.asserted_types(a.object)) {
          if (graph.are_disjoint(t, rel.range)) {
            out.push_back(error("C1", a.object,
                                fact + ": object type " + t.str() + " is disjoint from range " +
                                    rel.range.str()));
          }
        }
      }
    }
  }
  return out;
}

ValidationReport validate(const Graph& graph) { return validate(graph, ReasonerOptions{}); }

ValidationReport validate(const Graph& graph, const ReasonerOptions& options) {
  const Graph closed = compute_closure(graph, options, false).graph;
  ValidationReport report;
  auto& v = report.violations;
  v = domain_range_violations(closed);
  check_c2(closed, v);
  check_c3(closed, v);
  check_c4(closed, v);
  check_c5(closed, v);
  check_c6(closed, v);
  auto key = [](const Violation& x) { return std::tie(x.constraint, x.focus, x.message); };
  std::sort(v.begin(), v.end(), [&](const Violation& a, const Violation& b) { return key(a) < key(b); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return report;
}

}  // namespace dtkg
