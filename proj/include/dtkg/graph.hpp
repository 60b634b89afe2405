#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dtkg/assertion.hpp"
#include "dtkg/term.hpp"

namespace dtkg {

struct SchemaClass {
  Term id;
  std::set<Term> superclasses;
  std::string definition;

  friend bool operator==(const SchemaClass&, const SchemaClass&) = default;
};

struct SchemaRelation {
  Term id;
  std::set<Term> superrelations;
  Term domain;
  Term range;
  std::string definition;

  friend bool operator==(const SchemaRelation&, const SchemaRelation&) = default;
};

using DisjointPair = std::pair<Term, Term>;

// Variable name -> bound term, plus the interval of the matched assertion.
struct Binding {
  std::map<std::string, Term> vars;
  std::optional<TimeInterval> interval;

  friend bool operator==(const Binding&, const Binding&) = default;
};

struct TriplePattern {
  Term subject;
  Term predicate;
  Term object;
};

using ClassFilter = std::map<std::string, Term>;

// The built-in type-of predicate (rdf:type, written `a`).
const Term& type_of();

// Typed assertion store plus class/relation schema.
//
// Assertions are kept in two ordered indexes (subject-first and
// predicate-first), so every iteration is in lexicographic term order and
// pattern lookups are range scans. Class and relation ancestor sets are
// recomputed eagerly whenever the schema changes; all const members are
// safe to call concurrently.
class Graph {
 public:
  using AssertionSet = std::set<Assertion, FactLess>;

  // Starts with the standard prefixes (rdf, rdfs, owl, bfo, cco, dto, gen)
  // and an empty schema.
  Graph();

  // Adds the batch. Superclasses, superrelations, domains and ranges must be
  // declared in the graph or the batch (DanglingReference); re-declaring a
  // class merges its superclasses, re-declaring a relation with a different
  // domain or range is a SchemaConflict. Subsumption must stay acyclic
  // (CycleError). The graph is unchanged when this throws.
  void extend_schema(std::span<const SchemaClass> classes,
                     std::span<const SchemaRelation> relations,
                     std::span<const DisjointPair> disjoint = {});

  // Returns true when the fact was new. Predicates must be type-of or a
  // declared relation (UnknownPredicate); a type-of object must be a declared
  // class (UnknownClass); subject must be a name.
  bool add(Assertion a);
  bool remove(const Assertion& a);
  bool contains(const Assertion& a) const;
  // Drops every assertion, keeps schema and prefixes.
  void clear_assertions();

  void declare_prefix(const std::string& prefix, const std::string& iri);
  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

  const AssertionSet& assertions() const { return spo_; }
  std::size_t size() const { return spo_.size(); }
  bool empty() const { return spo_.empty(); }

  const std::map<Term, SchemaClass>& classes() const { return classes_; }
  const std::map<Term, SchemaRelation>& relations() const { return relations_; }
  const std::set<DisjointPair>& disjoint_pairs() const { return disjoint_; }

  bool has_class(const Term& t) const { return classes_.contains(t); }
  bool has_relation(const Term& t) const { return relations_.contains(t); }
  const SchemaRelation& relation(const Term& id) const;

  // Reflexive-transitive subsumption. Throws UnknownClass.
  bool is_subclass_of(const Term& a, const Term& b) const;
  // Throws UnknownPredicate.
  bool is_subrelation_of(const Term& a, const Term& b) const;
  const std::set<Term>& class_ancestors(const Term& c) const;

  // True when some superclass pair of a and b is declared disjoint.
  bool are_disjoint(const Term& a, const Term& b) const;

  // x has a type-of assertion to a subclass of cls. Unknown classes are false.
  bool has_type(const Term& x, const Term& cls) const;
  // Objects of x's type-of assertions, without subsumption closure.
  std::set<Term> asserted_types(const Term& x) const;

  // Every assertion matching the given positions (nullopt = any).
  std::vector<Assertion> find(const std::optional<Term>& s,
                              const std::optional<Term>& p,
                              const std::optional<Term>& o) const;

  // True when t occurs in some assertion as subject or object.
  bool mentions(const Term& t) const;
  // Named terms occurring as subject or object, excluding classes used as
  // type-of objects.
  std::set<Term> individuals() const;

  // Same assertion set (provenance ignored) and same schema.
  friend bool operator==(const Graph& a, const Graph& b);

 private:
  void rebuild_ancestors();

  std::map<std::string, std::string> prefixes_;
  std::map<Term, SchemaClass> classes_;
  std::map<Term, SchemaRelation> relations_;
  std::set<DisjointPair> disjoint_;
  std::map<Term, std::set<Term>> class_ancestors_;
  std::map<Term, std::set<Term>> relation_ancestors_;
  AssertionSet spo_;
  std::set<Assertion, PosLess> pos_;
  std::map<Term, std::size_t> object_refs_;
};

// Value-returning forms of the store operations.
Graph extend_schema(Graph graph, std::span<const SchemaClass> classes,
                    std::span<const SchemaRelation> relations);
Graph assert_fact(Graph graph, Assertion a);
bool is_subclass_of(const Graph& graph, const Term& a, const Term& b);

// Bindings for a triple pattern whose variable terms are wildcards.
// Repeated variables must bind the same term. class_filter keeps a binding
// only if the named variable's term has a type under the given class
// (UnknownClass if the class is undeclared). One binding per matching
// assertion, sorted.
std::vector<Binding> match(const Graph& graph, const TriplePattern& pattern,
                           const ClassFilter& class_filter = {});

}  // namespace dtkg
