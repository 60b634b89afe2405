#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dtkg/graph.hpp"

namespace dtkg {

struct Statement {
  Term subject;
  Term predicate;
  Term object;
  std::optional<TimeInterval> interval;
  std::size_t line = 0;
};

struct Document {
  std::map<std::string, std::string> prefixes;
  std::vector<Statement> statements;
};

struct ParseOptions {
  // Accept ?name in subject/object position (arrangement spec files).
  bool allow_variables = false;
};

// Reads the graph exchange format:
//
//   @prefix ex: <http://example.org/> .
//   # comment
//   ex:dt1 a dto:DigitalTwin ;
//       cco:represents ex:vehicle1 .
//   ex:sync1 a dto:SynchronizingProcess @[0,10] .
//
// Objects are prefixed names, quoted strings or decimal numbers; a triple may
// carry an interval suffix @[start,end] or @[start,]. The prefixes rdf, rdfs,
// owl, bfo, cco, dto and gen are predeclared. Throws SyntaxError (with 1-based
// line/column inside the input) or UndeclaredPrefix.
Document parse_document(std::string_view text, const ParseOptions& options = {});

// Adds a parsed document to `base`: prefix declarations, schema statements
// (a owl:Class, a owl:ObjectProperty, rdfs:subClassOf, rdfs:subPropertyOf,
// rdfs:domain, rdfs:range, rdfs:comment, owl:disjointWith), then every other
// statement as an asserted fact. Graph errors propagate (UnknownPredicate,
// UnknownClass, CycleError, ...).
Graph load_graph(const Document& doc, Graph base);

// Parses text and loads it on top of builtin_schema().
Graph parse_graph(std::string_view text);

struct SerializeOptions {
  enum class Schema { All, NonBuiltin, None };
  Schema schema = Schema::All;
  // Append "# R4"-style comments to inferred assertions.
  bool annotate_provenance = false;
};

// Deterministic text: prefixes sorted, then schema subjects, then instance
// subjects, each sorted, predicates sorted within a subject. Reparsing the
// output with load_graph gives a set-equal graph.
std::string serialize_document(const Graph& graph, const SerializeOptions& options = {});

}  // namespace dtkg
