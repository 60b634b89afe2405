#include "dtkg/reasoner.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "dtkg/errors.hpp"
#include "dtkg/schema.hpp"

namespace dtkg {

namespace {

Term var(std::string_view name) { return Term::variable(name); }

Atom type_atom(std::string_view v, const Term& cls, std::string interval_var = {}) {
  return Atom{var(v), type_of(), cls, std::move(interval_var)};
}

Atom rel_atom(std::string_view s, const Term& p, std::string_view o) {
  return Atom{var(s), p, var(o), {}};
}

bool is_class_atom(const Atom& atom) {
  return atom.predicate == type_of() && !atom.object.is_variable();
}

// Partial rule instantiation during a join.
struct Match {
  std::map<std::string, Term> vars;
  std::map<std::string, std::optional<TimeInterval>> intervals;
  std::vector<Assertion> premises;  // indexed like Rule::premises
  std::vector<bool> bound;
  std::vector<Assertion> support;   // facts a Satisfies guard relied on
};

std::optional<Term> resolve(const Term& t, const Match& m) {
  if (!t.is_variable()) return t;
  auto it = m.vars.find(t.local());
  if (it == m.vars.end()) return std::nullopt;
  return it->second;
}

bool bind(const Term& pattern, const Term& value, Match& m) {
  if (!pattern.is_variable()) return pattern == value;
  auto [it, inserted] = m.vars.emplace(pattern.local(), value);
  return inserted || it->second == value;
}

bool unify(const Graph& g, const Atom& atom, const Assertion& a, Match& m) {
  if (a.predicate != atom.predicate) return false;
  if (!bind(atom.subject, a.subject, m)) return false;
  if (is_class_atom(atom)) {
    if (!g.class_ancestors(a.object).contains(atom.object)) return false;
  } else if (!bind(atom.object, a.object, m)) {
    return false;
  }
  if (!atom.interval_var.empty()) m.intervals[atom.interval_var] = a.interval;
  return true;
}

class RuleEngine {
 public:
  RuleEngine(const Graph& graph, const ReasonerOptions& options)
      : graph_(graph), options_(options) {
    for (const auto& [id, c] : graph.classes()) {
      for (const auto& up : graph.class_ancestors(id)) descendants_[up].push_back(id);
    }
  }

  using Emit = std::function<void(const Assertion&, Derivation)>;

  // Every instantiation of rule whose premise seed_index matches seed.
  void fire_seeded(const Rule& rule, std::size_t seed_index, const Assertion& seed,
                   const Emit& emit) const {
    Match m = fresh(rule);
    if (!unify(graph_, rule.premises[seed_index], seed, m)) return;
    m.premises[seed_index] = seed;
    m.bound[seed_index] = true;
    join(rule, std::move(m), emit);
  }

  void fire_all(const Rule& rule, const Emit& emit) const { join(rule, fresh(rule), emit); }

 private:
  static Match fresh(const Rule& rule) {
    Match m;
    m.premises.resize(rule.premises.size());
    m.bound.assign(rule.premises.size(), false);
    return m;
  }

  std::vector<Assertion> candidates(const Atom& atom, const Match& m) const {
    auto s = resolve(atom.subject, m);
    if (is_class_atom(atom)) {
      if (s) return graph_.find(s, type_of(), std::nullopt);
      std::vector<Assertion> out;
      auto it = descendants_.find(atom.object);
      if (it == descendants_.end()) return out;
      for (const auto& cls : it->second) {
        auto part = graph_.find(std::nullopt, type_of(), cls);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
    return graph_.find(s, atom.predicate, resolve(atom.object, m));
  }

  static int boundness(const Atom& atom, const Match& m) {
    int n = 0;
    if (resolve(atom.subject, m)) n += 2;
    if (resolve(atom.object, m)) n += 1;
    return n;
  }

  void join(const Rule& rule, Match m, const Emit& emit) const {
    std::optional<std::size_t> next;
    for (std::size_t i = 0; i < rule.premises.size(); ++i) {
      if (m.bound[i]) continue;
      if (!next || boundness(rule.premises[i], m) > boundness(rule.premises[*next], m)) next = i;
    }
    if (!next) {
      if (guards_hold(rule, m)) emit(instantiate(rule.conclusion, m), derivation(rule, m));
      return;
    }
    for (const auto& a : candidates(rule.premises[*next], m)) {
      Match m2 = m;
      if (!unify(graph_, rule.premises[*next], a, m2)) continue;
      m2.premises[*next] = a;
      m2.bound[*next] = true;
      join(rule, std::move(m2), emit);
    }
  }

  static TimeInterval extent(const Match& m, const std::string& v) {
    auto it = m.intervals.find(v);
    if (it == m.intervals.end() || !it->second) return TimeInterval::unbounded_from(0);
    return *it->second;
  }

  bool guards_hold(const Rule& rule, Match& m) const {
    for (const auto& g : rule.guards) {
      switch (g.kind) {
        case GuardKind::Overlaps:
          if (!extent(m, g.first).overlaps(extent(m, g.second))) return false;
          break;
        case GuardKind::IsName:
          if (!m.vars.at(g.first).is_name()) return false;
          break;
        case GuardKind::Satisfies: {
          const Term& y = m.vars.at(g.first);
          auto spec = options_.arrangements.find(m.vars.at(g.second));
          if (spec == options_.arrangements.end() || !graph_.mentions(y)) return false;
          auto result = check_arrangement(graph_, y, spec->second);
          if (!result.satisfied) return false;
          m.support.insert(m.support.end(), result.support.begin(), result.support.end());
          break;
        }
      }
    }
    return true;
  }

  static Assertion instantiate(const Atom& atom, const Match& m) {
    Assertion a;
    a.subject = *resolve(atom.subject, m);
    a.predicate = atom.predicate;
    a.object = *resolve(atom.object, m);
    if (!atom.interval_var.empty()) {
      auto it = m.intervals.find(atom.interval_var);
      if (it != m.intervals.end()) a.interval = it->second;
    }
    return a;
  }

  static Derivation derivation(const Rule& rule, const Match& m) {
    Derivation d{rule.id, m.premises};
    for (const auto& s : m.support) {
      bool dup = std::any_of(d.premises.begin(), d.premises.end(),
                             [&](const Assertion& p) { return same_fact(p, s); });
      if (!dup) d.premises.push_back(s);
    }
    return d;
  }

  const Graph& graph_;
  const ReasonerOptions& options_;
  std::map<Term, std::vector<Term>> descendants_;
};

bool has_satisfies_guard(const Rule& rule) {
  return std::any_of(rule.guards.begin(), rule.guards.end(),
                     [](const Guard& g) { return g.kind == GuardKind::Satisfies; });
}

std::string display(const Assertion& a) {
  std::string out = a.subject.str() + " " +
                    (a.predicate == type_of() ? std::string("a") : a.predicate.str()) + " " +
                    a.object.str();
  if (a.interval) out += " @" + a.interval->str();
  return out;
}

}  // namespace

std::vector<Rule> make_rules(const Graph& schema, DomainRangeMode mode) {
  using namespace vocab;
  std::vector<Rule> rules;
  for (const auto& [id, r] : schema.relations()) {
    for (const auto& super : r.superrelations) {
      rules.push_back({"R2", {{var("s"), id, var("o"), "i"}}, {}, {var("s"), super, var("o"), "i"}});
    }
  }
  if (mode == DomainRangeMode::Lenient) {
    for (const auto& [id, r] : schema.relations()) {
      if (r.domain != Entity()) {
        rules.push_back({"R3", {rel_atom("s", id, "o")}, {}, type_atom("s", r.domain)});
      }
      if (r.range != Entity()) {
        rules.push_back({"R3", {rel_atom("s", id, "o")}, {{GuardKind::IsName, "o", {}}},
                         type_atom("o", r.range)});
      }
    }
  }
  rules.push_back({"R4",
                   {type_atom("x", DigitalTwin()), rel_atom("x", represents(), "y"),
                    type_atom("y", MaterialEntity())},
                   {},
                   type_atom("x", DigitalTwinInstance())});
  rules.push_back({"R5",
                   {type_atom("x", DigitalTwin()), rel_atom("x", represents(), "y"),
                    type_atom("y", Process())},
                   {},
                   type_atom("x", DigitalTwinInstance())});
  rules.push_back({"R6", {type_atom("x", DigitalTwinInstance())}, {},
                   type_atom("x", RepresentationalICE())});
  rules.push_back({"R7",
                   {type_atom("x", DigitalTwinInstance()), rel_atom("x", represents(), "y"),
                    type_atom("y", MaterialEntity()), type_atom("s", SynchronizingProcess()),
                    rel_atom("x", participatesIn(), "s"), rel_atom("y", participatesIn(), "s")},
                   {},
                   rel_atom("x", isCounterpartMaterialEntity(), "y")});
  rules.push_back({"R8",
                   {type_atom("x", DigitalTwinInstance()), rel_atom("x", represents(), "y"),
                    type_atom("y", Process(), "iy"), type_atom("s", SynchronizingProcess(), "is"),
                    rel_atom("x", participatesIn(), "s")},
                   {{GuardKind::Overlaps, "is", "iy"}},
                   rel_atom("x", isCounterpartProcess(), "y")});
  rules.push_back({"R9",
                   {type_atom("x", DigitalTwinPrototype()),
                    rel_atom("x", prescribesArrangement(), "a"), rel_atom("x", represents(), "y")},
                   {{GuardKind::Satisfies, "y", "a"}},
                   type_atom("x", DigitalTwinInstance())});
  return rules;
}

Closure compute_closure(const Graph& graph, const ReasonerOptions& options,
                        bool check_domain_range) {
  Closure closure{graph, {}, {}, 0};
  const auto rules = make_rules(graph, options.mode);
  std::vector<Assertion> delta(graph.assertions().begin(), graph.assertions().end());

  while (!delta.empty()) {
    ++closure.rounds;
    std::map<Assertion, Derivation, FactLess> pending;
    RuleEngine engine(closure.graph, options);
    auto emit = [&](const Assertion& fact, Derivation d) {
      closure.conclusions.insert(fact);
      if (!closure.graph.contains(fact)) pending.emplace(fact, std::move(d));
    };
    for (const auto& rule : rules) {
      if (has_satisfies_guard(rule)) {
        engine.fire_all(rule, emit);
        continue;
      }
      for (std::size_t i = 0; i < rule.premises.size(); ++i) {
        for (const auto& d : delta) engine.fire_seeded(rule, i, d, emit);
      }
    }
    delta.clear();
    for (auto& [fact, d] : pending) {
      Assertion a = fact;
      a.provenance = Provenance::inferred(d.rule);
      closure.graph.add(a);
      closure.derivations.emplace(a, std::move(d));
      delta.push_back(a);
    }
  }

  if (check_domain_range && options.mode == DomainRangeMode::Strict) {
    auto violations = domain_range_violations(closure.graph);
    if (!violations.empty()) {
      std::string msg = violations.front().message;
      if (violations.size() > 1) {
        msg += " (and " + std::to_string(violations.size() - 1) + " more)";
      }
      throw DomainRangeViolation(msg);
    }
  }
  return closure;
}

Graph infer_closure(const Graph& graph, const ReasonerOptions& options) {
  return compute_closure(graph, options).graph;
}

std::size_t DerivationTree::depth() const {
  std::size_t deepest = 0;
  for (const auto& c : children) deepest = std::max(deepest, c.depth() + 1);
  return deepest;
}

std::string DerivationTree::str() const {
  std::ostringstream out;
  auto write = [&](auto&& self, const DerivationTree& node, int indent) -> void {
    out << std::string(indent * 2, ' ') << display(node.conclusion) << "  [" << node.rule
        << "]\n";
    for (const auto& c : node.children) self(self, c, indent + 1);
  };
  write(write, *this, 0);
  return out.str();
}

DerivationTree explain(const Closure& closure, const Assertion& target) {
  auto build = [&](auto&& self, const Assertion& fact) -> DerivationTree {
    auto it = closure.derivations.find(fact);
    if (it == closure.derivations.end()) return {fact, "asserted", {}};
    DerivationTree node{it->first, it->second.rule, {}};
    for (const auto& p : it->second.premises) node.children.push_back(self(self, p));
    return node;
  };

  const auto& facts = closure.graph.assertions();
  if (auto it = facts.find(target); it != facts.end()) return build(build, *it);
  if (!target.interval) {
    auto same = closure.graph.find(target.subject, target.predicate, target.object);
    if (!same.empty()) return build(build, same.front());
  }
  if (target.predicate == type_of() && closure.graph.has_class(target.object)) {
    std::optional<DerivationTree> best;
    for (const auto& a : closure.graph.find(target.subject, type_of(), std::nullopt)) {
      if (target.interval && a.interval != target.interval) continue;
      if (!closure.graph.class_ancestors(a.object).contains(target.object)) continue;
      DerivationTree t = build(build, a);
      if (!best || t.depth() < best->depth()) best = std::move(t);
    }
    if (best) {
      Assertion conclusion = target;
      conclusion.interval = best->conclusion.interval;
      conclusion.provenance = Provenance::inferred("R1");
      return {conclusion, "R1", {std::move(*best)}};
    }
  }
  throw NotDerivable(display(target) + " is not entailed");
}

DerivationTree explain(const Graph& graph, const Assertion& target,
                       const ReasonerOptions& options) {
  return explain(compute_closure(graph, options, false), target);
}

bool replay(const DerivationTree& tree, const Graph& asserted, const ReasonerOptions& options) {
  if (tree.rule == "asserted") return tree.children.empty() && asserted.contains(tree.conclusion);
  for (const auto& c : tree.children) {
    if (!replay(c, asserted, options)) return false;
  }
  if (tree.rule == "R1") {
    if (tree.children.size() != 1) return false;
    const Assertion& premise = tree.children.front().conclusion;
    const Assertion& goal = tree.conclusion;
    return premise.predicate == type_of() && goal.predicate == type_of() &&
           premise.subject == goal.subject && premise.interval == goal.interval &&
           asserted.has_class(premise.object) && asserted.has_class(goal.object) &&
           asserted.is_subclass_of(premise.object, goal.object);
  }

  Graph premises = asserted;
  premises.clear_assertions();
  for (const auto& c : tree.children) {
    Assertion a = c.conclusion;
    a.provenance = Provenance::asserted();
    premises.add(std::move(a));
  }
  RuleEngine engine(premises, options);
  bool reproduced = false;
  for (const auto& rule : make_rules(asserted, options.mode)) {
    if (rule.id != tree.rule) continue;
    engine.fire_all(rule, [&](const Assertion& fact, const Derivation&) {
      if (same_fact(fact, tree.conclusion)) reproduced = true;
    });
    if (reproduced) return true;
  }
  return false;
}

}  // namespace dtkg
