#pragma once

#include <map>
#include <string>
#include <vector>

#include "dtkg/graph.hpp"
#include "dtkg/turtle.hpp"

namespace dtkg {

struct SpecNode {
  std::string variable;
  Term cls;
};

// whole --hasProperContinuantPart--> part
struct PartEdge {
  std::string whole;
  std::string part;
};

// bearer bears some quality individual typed under quality_type.
struct QualityEdge {
  std::string bearer;
  Term quality_type;
};

// Class-level arrangement a prototype prescribes: typed variables connected
// by parthood and quality-bearing edges, with one root variable that must
// map to the candidate individual.
struct ArrangementSpec {
  Term id;
  std::string root;
  std::vector<SpecNode> nodes;
  std::vector<PartEdge> part_edges;
  std::vector<QualityEdge> quality_edges;
  bool all_distinct = false;
};

using ArrangementRegistry = std::map<Term, ArrangementSpec>;

// Throws MalformedSpec unless variables are unique, the root and every edge
// endpoint are declared, and every class exists in `schema`.
void check_well_formed(const ArrangementSpec& spec, const Graph& schema);

struct SatisfactionResult {
  bool satisfied = false;
  std::map<std::string, Term> witness;
  // Assertions the witness maps the spec onto (types, parts, qualities).
  std::vector<Assertion> support;
};

// Searches for a homomorphism from spec into the graph with spec.root -> y.
// Variables map to individuals typed under their class; part edges map to
// hasProperContinuantPart assertions. The first witness in term order is
// returned. Throws UnknownIndividual if y does not occur in the graph and
// MalformedSpec if the spec is not well formed.
SatisfactionResult check_arrangement(const Graph& graph, const Term& y,
                                     const ArrangementSpec& spec);

// Builds a spec from a parsed .spec.ttl document:
//
//   ex:vehicleSpec dto:rootVariable ?v .
//   ?v a ex:Vehicle ; bfo:hasProperContinuantPart ?e .
//   ?e a ex:Engine ; dto:bearsQualityOfType dto:ThermalConductivity .
//
// Optional: ex:vehicleSpec dto:allDistinct "true" .
ArrangementSpec arrangement_from_document(const Document& doc, const Graph& schema);

// parse_document with variables enabled, then arrangement_from_document.
ArrangementSpec parse_arrangement(std::string_view text, const Graph& schema);

}  // namespace dtkg
