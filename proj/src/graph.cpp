#include "dtkg/graph.hpp"

#include <algorithm>

#include "dtkg/errors.hpp"

namespace dtkg {

const Term& type_of() {
  static const Term kTypeOf = Term::name("rdf", "type");
  return kTypeOf;
}

namespace {

// Ancestor sets (reflexive) over a parent map; throws CycleError.
template <typename ParentsOf>
std::map<Term, std::set<Term>> compute_ancestors(const std::vector<Term>& nodes,
                                                 ParentsOf parents_of,
                                                 const char* what) {
  enum class Mark { Unvisited, Active, Done };
  std::map<Term, Mark> marks;
  std::map<Term, std::set<Term>> ancestors;

  auto visit = [&](auto&& self, const Term& node) -> const std::set<Term>& {
    Mark& mark = marks[node];
    if (mark == Mark::Done) return ancestors[node];
    if (mark == Mark::Active) {
      throw CycleError(std::string(what) + " subsumption cycle through " + node.str());
    }
    mark = Mark::Active;
    std::set<Term> result{node};
    for (const Term& parent : parents_of(node)) {
      const auto& up = self(self, parent);
      result.insert(up.begin(), up.end());
    }
    marks[node] = Mark::Done;
    return ancestors[node] = std::move(result);
  };
  for (const Term& node : nodes) visit(visit, node);
  return ancestors;
}

const std::set<Term> kNoTerms;

}  // namespace

Graph::Graph() {
  prefixes_ = {
      {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
      {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
      {"owl", "http://www.w3.org/2002/07/owl#"},
      {"bfo", "http://purl.obolibrary.org/obo/bfo/"},
      {"cco", "https://www.commoncoreontologies.org/"},
      {"dto", "urn:dtkg:dto#"},
      {"gen", "urn:dtkg:gen#"},
  };
}

void Graph::declare_prefix(const std::string& prefix, const std::string& iri) {
  auto [it, inserted] = prefixes_.emplace(prefix, iri);
  if (!inserted && it->second != iri) {
    throw SchemaConflict("prefix '" + prefix + ":' already bound to <" +
                         it->second + ">, cannot rebind to <" + iri + ">");
  }
}

void Graph::extend_schema(std::span<const SchemaClass> classes,
                          std::span<const SchemaRelation> relations,
                          std::span<const DisjointPair> disjoint) {
  auto new_classes = classes_;
  auto new_relations = relations_;
  auto new_disjoint = disjoint_;

  for (const auto& c : classes) {
    if (new_relations.contains(c.id)) {
      throw SchemaConflict(c.id.str() + " is already declared as a relation");
    }
    auto [it, inserted] = new_classes.emplace(c.id, c);
    if (!inserted) {
      it->second.superclasses.insert(c.superclasses.begin(), c.superclasses.end());
      if (it->second.definition.empty()) it->second.definition = c.definition;
    }
  }
  for (const auto& r : relations) {
    if (new_classes.contains(r.id)) {
      throw SchemaConflict(r.id.str() + " is already declared as a class");
    }
    auto [it, inserted] = new_relations.emplace(r.id, r);
    if (!inserted) {
      if (it->second.domain != r.domain || it->second.range != r.range) {
        throw SchemaConflict("conflicting domain/range for " + r.id.str());
      }
      it->second.superrelations.insert(r.superrelations.begin(), r.superrelations.end());
      if (it->second.definition.empty()) it->second.definition = r.definition;
    }
  }
  for (const auto& [a, b] : disjoint) {
    new_disjoint.insert(a < b ? DisjointPair{a, b} : DisjointPair{b, a});
  }

  auto require_class = [&](const Term& t, const Term& from) {
    if (!new_classes.contains(t)) {
      throw DanglingReference(from.str() + " names undeclared class " + t.str());
    }
  };
  for (const auto& [id, c] : new_classes) {
    for (const auto& sup : c.superclasses) require_class(sup, id);
  }
  for (const auto& [id, r] : new_relations) {
    require_class(r.domain, id);
    require_class(r.range, id);
    for (const auto& sup : r.superrelations) {
      if (!new_relations.contains(sup)) {
        throw DanglingReference(id.str() + " names undeclared relation " + sup.str());
      }
    }
  }
  for (const auto& [a, b] : new_disjoint) {
    require_class(a, b);
    require_class(b, a);
  }

  std::vector<Term> class_ids;
  for (const auto& [id, c] : new_classes) class_ids.push_back(id);
  auto class_ancestors = compute_ancestors(
      class_ids, [&](const Term& t) -> const std::set<Term>& {
        return new_classes.at(t).superclasses;
      },
      "class");
  std::vector<Term> relation_ids;
  for (const auto& [id, r] : new_relations) relation_ids.push_back(id);
  auto relation_ancestors = compute_ancestors(
      relation_ids, [&](const Term& t) -> const std::set<Term>& {
        return new_relations.at(t).superrelations;
      },
      "relation");

  classes_ = std::move(new_classes);
  relations_ = std::move(new_relations);
  disjoint_ = std::move(new_disjoint);
  class_ancestors_ = std::move(class_ancestors);
  relation_ancestors_ = std::move(relation_ancestors);
}

bool Graph::add(Assertion a) {
  if (!a.subject.is_name()) {
    throw InvalidTerm("assertion subject must be a name: " + a.str());
  }
  if (a.object.is_variable()) {
    throw InvalidTerm("assertion object cannot be a variable: " + a.str());
  }
  if (a.predicate == type_of()) {
    if (!classes_.contains(a.object)) {
      throw UnknownClass("type-of object " + a.object.str() + " is not a declared class");
    }
  } else if (!relations_.contains(a.predicate)) {
    throw UnknownPredicate("undeclared predicate " + a.predicate.str());
  }
  if (spo_.contains(a)) return false;
  pos_.insert(a);
  ++object_refs_[a.object];
  spo_.insert(std::move(a));
  return true;
}

bool Graph::remove(const Assertion& a) {
  auto it = spo_.find(a);
  if (it == spo_.end()) return false;
  pos_.erase(a);
  if (--object_refs_[a.object] == 0) object_refs_.erase(a.object);
  spo_.erase(it);
  return true;
}

bool Graph::contains(const Assertion& a) const { return spo_.contains(a); }

void Graph::clear_assertions() {
  spo_.clear();
  pos_.clear();
  object_refs_.clear();
}

const SchemaRelation& Graph::relation(const Term& id) const {
  auto it = relations_.find(id);
  if (it == relations_.end()) throw UnknownPredicate("undeclared relation " + id.str());
  return it->second;
}

bool Graph::is_subclass_of(const Term& a, const Term& b) const {
  auto it = class_ancestors_.find(a);
  if (it == class_ancestors_.end()) throw UnknownClass("undeclared class " + a.str());
  if (!classes_.contains(b)) throw UnknownClass("undeclared class " + b.str());
  return it->second.contains(b);
}

bool Graph::is_subrelation_of(const Term& a, const Term& b) const {
  auto it = relation_ancestors_.find(a);
  if (it == relation_ancestors_.end()) throw UnknownPredicate("undeclared relation " + a.str());
  if (!relations_.contains(b)) throw UnknownPredicate("undeclared relation " + b.str());
  return it->second.contains(b);
}

const std::set<Term>& Graph::class_ancestors(const Term& c) const {
  auto it = class_ancestors_.find(c);
  return it == class_ancestors_.end() ? kNoTerms : it->second;
}

bool Graph::are_disjoint(const Term& a, const Term& b) const {
  const auto& up_a = class_ancestors(a);
  const auto& up_b = class_ancestors(b);
  for (const auto& [x, y] : disjoint_) {
    if ((up_a.contains(x) && up_b.contains(y)) || (up_a.contains(y) && up_b.contains(x))) {
      return true;
    }
  }
  return false;
}

bool Graph::has_type(const Term& x, const Term& cls) const {
  Assertion probe{x, type_of(), Term{}, std::nullopt, {}};
  for (auto it = spo_.lower_bound(probe);
       it != spo_.end() && it->subject == x && it->predicate == type_of(); ++it) {
    if (class_ancestors(it->object).contains(cls)) return true;
  }
  return false;
}

std::set<Term> Graph::asserted_types(const Term& x) const {
  std::set<Term> out;
  Assertion probe{x, type_of(), Term{}, std::nullopt, {}};
  for (auto it = spo_.lower_bound(probe);
       it != spo_.end() && it->subject == x && it->predicate == type_of(); ++it) {
    out.insert(it->object);
  }
  return out;
}

std::vector<Assertion> Graph::find(const std::optional<Term>& s,
                                   const std::optional<Term>& p,
                                   const std::optional<Term>& o) const {
  std::vector<Assertion> out;
  auto keep = [&](const Assertion& a) {
    return (!s || a.subject == *s) && (!p || a.predicate == *p) && (!o || a.object == *o);
  };
  // Term{} (empty name) sorts before every real name, so it works as a
  // lower-bound sentinel for the trailing positions.
  if (s) {
    Assertion probe{*s, p.value_or(Term{}), Term{}, std::nullopt, {}};
    for (auto it = spo_.lower_bound(probe); it != spo_.end() && it->subject == *s; ++it) {
      if (p && it->predicate != *p) break;
      if (keep(*it)) out.push_back(*it);
    }
  } else if (p) {
    Assertion probe{Term{}, *p, o.value_or(Term{}), std::nullopt, {}};
    for (auto it = pos_.lower_bound(probe); it != pos_.end() && it->predicate == *p; ++it) {
      if (o && it->object != *o) break;
      if (keep(*it)) out.push_back(*it);
    }
    std::sort(out.begin(), out.end(), FactLess{});
  } else {
    for (const auto& a : spo_) {
      if (keep(a)) out.push_back(a);
    }
  }
  return out;
}

bool Graph::mentions(const Term& t) const {
  if (object_refs_.contains(t)) return true;
  Assertion probe{t, Term{}, Term{}, std::nullopt, {}};
  auto it = spo_.lower_bound(probe);
  return it != spo_.end() && it->subject == t;
}

std::set<Term> Graph::individuals() const {
  std::set<Term> out;
  for (const auto& a : spo_) {
    out.insert(a.subject);
    if (a.object.is_name() && a.predicate != type_of() && !classes_.contains(a.object)) {
      out.insert(a.object);
    }
  }
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.classes_ != b.classes_ || a.relations_ != b.relations_ ||
      a.disjoint_ != b.disjoint_ || a.spo_.size() != b.spo_.size()) {
    return false;
  }
  return std::equal(a.spo_.begin(), a.spo_.end(), b.spo_.begin(), same_fact);
}

Graph extend_schema(Graph graph, std::span<const SchemaClass> classes,
                    std::span<const SchemaRelation> relations) {
  graph.extend_schema(classes, relations);
  return graph;
}

Graph assert_fact(Graph graph, Assertion a) {
  graph.add(std::move(a));
  return graph;
}

bool is_subclass_of(const Graph& graph, const Term& a, const Term& b) {
  return graph.is_subclass_of(a, b);
}

std::vector<Binding> match(const Graph& graph, const TriplePattern& pattern,
                           const ClassFilter& class_filter) {
  for (const auto& [var, cls] : class_filter) {
    if (!graph.has_class(cls)) throw UnknownClass("undeclared class " + cls.str());
  }
  auto fixed = [](const Term& t) -> std::optional<Term> {
    return t.is_variable() ? std::nullopt : std::optional<Term>(t);
  };
  std::vector<Binding> out;
  for (const auto& a : graph.find(fixed(pattern.subject), fixed(pattern.predicate),
                                  fixed(pattern.object))) {
    Binding b;
    b.interval = a.interval;
    bool consistent = true;
    auto bind = [&](const Term& slot, const Term& value) {
      if (!slot.is_variable()) return;
      auto [it, inserted] = b.vars.emplace(slot.local(), value);
      if (!inserted && it->second != value) consistent = false;
    };
    bind(pattern.subject, a.subject);
    bind(pattern.predicate, a.predicate);
    bind(pattern.object, a.object);
    if (!consistent) continue;
    bool passes = std::all_of(class_filter.begin(), class_filter.end(), [&](const auto& f) {
      auto it = b.vars.find(f.first);
      return it == b.vars.end() || graph.has_type(it->second, f.second);
    });
    if (passes) out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const Binding& x, const Binding& y) {
    if (x.vars != y.vars) return x.vars < y.vars;
    if (x.interval.has_value() != y.interval.has_value()) return !x.interval.has_value();
    return x.interval && *x.interval < *y.interval;
  });
  return out;
}

}  // namespace dtkg
