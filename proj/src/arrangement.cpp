#include "dtkg/arrangement.hpp"

#include <algorithm>
#include <set>

#include "dtkg/errors.hpp"
#include "dtkg/schema.hpp"

namespace dtkg {

void check_well_formed(const ArrangementSpec& spec, const Graph& schema) {
  std::set<std::string> vars;
  for (const auto& node : spec.nodes) {
    if (!vars.insert(node.variable).second) {
      throw MalformedSpec("variable ?" + node.variable + " declared twice in " + spec.id.str());
    }
    if (!schema.has_class(node.cls)) {
      throw MalformedSpec("?" + node.variable + " uses undeclared class " + node.cls.str());
    }
  }
  auto require = [&](const std::string& v) {
    if (!vars.contains(v)) {
      throw MalformedSpec("undeclared variable ?" + v + " in " + spec.id.str());
    }
  };
  require(spec.root);
  for (const auto& e : spec.part_edges) {
    require(e.whole);
    require(e.part);
  }
  for (const auto& e : spec.quality_edges) {
    require(e.bearer);
    if (!schema.has_class(e.quality_type)) {
      throw MalformedSpec("undeclared quality type " + e.quality_type.str());
    }
  }
}

namespace {

class HomomorphismSearch {
 public:
  HomomorphismSearch(const Graph& graph, const ArrangementSpec& spec)
      : graph_(graph), spec_(spec) {
    for (const auto& node : spec.nodes) class_of_[node.variable] = node.cls;
    order_variables();
  }

  bool run(const Term& root_value) {
    if (!graph_.has_type(root_value, class_of_.at(spec_.root))) return false;
    return assign(0, {root_value});
  }

  const std::map<std::string, Term>& witness() const { return assignment_; }

 private:
  // Root first, then breadth-first along part edges, then the rest.
  void order_variables() {
    std::set<std::string> seen{spec_.root};
    order_.push_back(spec_.root);
    for (std::size_t i = 0; i < order_.size(); ++i) {
      for (const auto& e : spec_.part_edges) {
        for (const auto& [from, to] : {std::pair{e.whole, e.part}, std::pair{e.part, e.whole}}) {
          if (from == order_[i] && seen.insert(to).second) order_.push_back(to);
        }
      }
    }
    for (const auto& node : spec_.nodes) {
      if (seen.insert(node.variable).second) order_.push_back(node.variable);
    }
  }

  std::vector<Term> candidates(const std::string& var) const {
    std::set<Term> pool;
    bool constrained = false;
    for (const auto& e : spec_.part_edges) {
      if (e.part == var && assignment_.contains(e.whole)) {
        std::set<Term> parts;
        for (const auto& a :
             graph_.find(assignment_.at(e.whole), vocab::hasProperContinuantPart(), std::nullopt)) {
          parts.insert(a.object);
        }
        pool = constrained ? intersect(pool, parts) : parts;
        constrained = true;
      } else if (e.whole == var && assignment_.contains(e.part)) {
        std::set<Term> wholes;
        for (const auto& a :
             graph_.find(std::nullopt, vocab::hasProperContinuantPart(), assignment_.at(e.part))) {
          wholes.insert(a.subject);
        }
        pool = constrained ? intersect(pool, wholes) : wholes;
        constrained = true;
      }
    }
    if (!constrained) {
      for (const auto& a : graph_.find(std::nullopt, type_of(), std::nullopt)) {
        pool.insert(a.subject);
      }
    }
    std::vector<Term> out;
    for (const auto& t : pool) {
      if (graph_.has_type(t, class_of_.at(var))) out.push_back(t);
    }
    return out;
  }

  static std::set<Term> intersect(const std::set<Term>& a, const std::set<Term>& b) {
    std::set<Term> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  }

  bool edges_hold(const std::string& var) const {
    for (const auto& e : spec_.part_edges) {
      if (e.whole != var && e.part != var) continue;
      auto w = assignment_.find(e.whole);
      auto p = assignment_.find(e.part);
      if (w == assignment_.end() || p == assignment_.end()) continue;
      if (graph_.find(w->second, vocab::hasProperContinuantPart(), p->second).empty()) {
        return false;
      }
    }
    for (const auto& e : spec_.quality_edges) {
      if (e.bearer == var && !bears_quality(assignment_.at(var), e.quality_type)) return false;
    }
    return true;
  }

  bool bears_quality(const Term& bearer, const Term& quality_type) const {
    for (const auto& a : graph_.find(bearer, vocab::bearsQuality(), std::nullopt)) {
      if (graph_.has_type(a.object, quality_type)) return true;
    }
    return false;
  }

  bool assign(std::size_t k, std::vector<Term> forced) {
    if (k == order_.size()) return true;
    const std::string& var = order_[k];
    std::vector<Term> options = forced.empty() ? candidates(var) : std::move(forced);
    for (const auto& value : options) {
      if (spec_.all_distinct &&
          std::any_of(assignment_.begin(), assignment_.end(),
                      [&](const auto& kv) { return kv.second == value; })) {
        continue;
      }
      assignment_[var] = value;
      if (edges_hold(var) && assign(k + 1, {})) return true;
      assignment_.erase(var);
    }
    return false;
  }

  const Graph& graph_;
  const ArrangementSpec& spec_;
  std::map<std::string, Term> class_of_;
  std::vector<std::string> order_;
  std::map<std::string, Term> assignment_;
};

std::vector<Assertion> collect_support(const Graph& graph, const ArrangementSpec& spec,
                                       const std::map<std::string, Term>& witness) {
  std::vector<Assertion> support;
  auto first_type = [&](const Term& x, const Term& cls) {
    for (const auto& a : graph.find(x, type_of(), std::nullopt)) {
      if (graph.class_ancestors(a.object).contains(cls)) return a;
    }
    throw Error("internal: witness type missing for " + x.str());
  };
  for (const auto& node : spec.nodes) {
    support.push_back(first_type(witness.at(node.variable), node.cls));
  }
  for (const auto& e : spec.part_edges) {
    support.push_back(graph.find(witness.at(e.whole), vocab::hasProperContinuantPart(),
                                 witness.at(e.part)).front());
  }
  for (const auto& e : spec.quality_edges) {
    for (const auto& a : graph.find(witness.at(e.bearer), vocab::bearsQuality(), std::nullopt)) {
      if (graph.has_type(a.object, e.quality_type)) {
        support.push_back(a);
        support.push_back(first_type(a.object, e.quality_type));
        break;
      }
    }
  }
  std::sort(support.begin(), support.end(), FactLess{});
  support.erase(std::unique(support.begin(), support.end(), same_fact), support.end());
  return support;
}

}  // namespace

SatisfactionResult check_arrangement(const Graph& graph, const Term& y,
                                     const ArrangementSpec& spec) {
  check_well_formed(spec, graph);
  if (!graph.mentions(y)) throw UnknownIndividual(y.str() + " does not occur in the graph");
  HomomorphismSearch search(graph, spec);
  SatisfactionResult result;
  if (search.run(y)) {
    result.satisfied = true;
    result.witness = search.witness();
    result.support = collect_support(graph, spec, result.witness);
  }
  return result;
}

ArrangementSpec arrangement_from_document(const Document& doc, const Graph& schema) {
  static const Term kRoot = vocab::dto("rootVariable");
  static const Term kDistinct = vocab::dto("allDistinct");
  static const Term kQualityOfType = vocab::dto("bearsQualityOfType");

  ArrangementSpec spec;
  std::optional<Term> id;
  std::map<std::string, Term> classes;
  std::vector<std::string> appearance;
  auto note = [&](const std::string& v) {
    if (std::find(appearance.begin(), appearance.end(), v) == appearance.end()) {
      appearance.push_back(v);
    }
  };
  auto malformed = [](const Statement& st, const std::string& what) {
    return MalformedSpec("line " + std::to_string(st.line) + ": " + what);
  };

  for (const auto& st : doc.statements) {
    if (st.subject.is_name()) {
      if (st.predicate == kRoot) {
        if (!st.object.is_variable()) throw malformed(st, "dto:rootVariable expects ?variable");
        if (id) throw malformed(st, "more than one dto:rootVariable");
        id = st.subject;
        spec.root = st.object.local();
        note(spec.root);
      } else if (st.predicate == kDistinct) {
        spec.all_distinct = st.object.kind() == Term::Kind::String && st.object.local() == "true";
      } else if (st.predicate == type_of() && st.object == vocab::ArrangementSpecification()) {
        // Informational.
      } else {
        throw malformed(st, "unexpected statement about " + st.subject.str());
      }
      continue;
    }
    if (!st.subject.is_variable()) throw malformed(st, "unexpected subject");
    const std::string& v = st.subject.local();
    note(v);
    if (st.predicate == type_of()) {
      if (!st.object.is_name()) throw malformed(st, "type of ?" + v + " must be a class");
      if (!classes.emplace(v, st.object).second) {
        throw malformed(st, "?" + v + " has more than one class");
      }
    } else if (st.predicate == vocab::hasProperContinuantPart()) {
      if (!st.object.is_variable()) throw malformed(st, "part edge must end in a ?variable");
      note(st.object.local());
      spec.part_edges.push_back({v, st.object.local()});
    } else if (st.predicate == kQualityOfType) {
      if (!st.object.is_name()) throw malformed(st, "quality edge must name a quality type");
      spec.quality_edges.push_back({v, st.object});
    } else {
      throw malformed(st, "unsupported predicate " + st.predicate.str());
    }
  }
  if (!id) throw MalformedSpec("missing dto:rootVariable declaration");
  spec.id = *id;
  for (const auto& v : appearance) {
    auto it = classes.find(v);
    if (it == classes.end()) throw MalformedSpec("?" + v + " has no class");
    spec.nodes.push_back({v, it->second});
  }
  check_well_formed(spec, schema);
  return spec;
}

ArrangementSpec parse_arrangement(std::string_view text, const Graph& schema) {
  ParseOptions options;
  options.allow_variables = true;
  return arrangement_from_document(parse_document(text, options), schema);
}

}  // namespace dtkg
