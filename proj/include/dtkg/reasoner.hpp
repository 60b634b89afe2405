#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dtkg/arrangement.hpp"
#include "dtkg/graph.hpp"

namespace dtkg {

// Strict: a closure containing a domain/range conflict (C1) is an error.
// Lenient: rule R3 instead types subjects and objects from relation
// domains and ranges.
enum class DomainRangeMode { Strict, Lenient };

struct ReasonerOptions {
  DomainRangeMode mode = DomainRangeMode::Strict;
  ArrangementRegistry arrangements;
};

// Triple pattern inside a rule. Variable terms bind; a type-of atom with a
// constant class matches any type-of assertion to a subclass. interval_var,
// when set, binds the matched assertion's interval (premise) or supplies the
// conclusion's interval.
struct Atom {
  Term subject;
  Term predicate;
  Term object;
  std::string interval_var;
};

enum class GuardKind {
  Overlaps,   // first, second: interval variables; missing interval = [0, inf)
  Satisfies,  // first: individual variable, second: arrangement spec variable
  IsName,     // first: variable bound to a name (not a literal)
};

struct Guard {
  GuardKind kind;
  std::string first;
  std::string second;
};

struct Rule {
  std::string id;
  std::vector<Atom> premises;
  std::vector<Guard> guards;
  Atom conclusion;
};

// R2 and R3 are instantiated once per relation of the schema; R4-R9 are
// fixed. R1 (type propagation along the class DAG) has no instances: type
// atoms already match under subsumption.
std::vector<Rule> make_rules(const Graph& schema, DomainRangeMode mode);

struct Derivation {
  std::string rule;
  std::vector<Assertion> premises;
};

struct Closure {
  Graph graph;
  // First (earliest-round) derivation of every inferred assertion.
  std::map<Assertion, Derivation, FactLess> derivations;
  // Every distinct rule conclusion, including ones that were already present.
  std::set<Assertion, FactLess> conclusions;
  std::size_t rounds = 0;
};

// Least fixpoint of the rule set by semi-naive evaluation: each round joins
// the previous round's new facts against the full store, so a fact first
// appears in the round equal to its minimal derivation depth.
//
// Termination: rules only combine terms and intervals already present in the
// input and the finite schema, so the set of derivable facts is finite and
// every non-final round adds at least one.
//
// In strict mode with check_domain_range, throws DomainRangeViolation when
// the closure breaks a declared domain or range.
Closure compute_closure(const Graph& graph, const ReasonerOptions& options = {},
                        bool check_domain_range = true);

// compute_closure(...).graph
Graph infer_closure(const Graph& graph, const ReasonerOptions& options = {});

struct DerivationTree {
  Assertion conclusion;
  std::string rule;  // "asserted", "R1" .. "R9"
  std::vector<DerivationTree> children;

  std::size_t depth() const;
  // Indented, one node per line.
  std::string str() const;
};

// Minimal-depth derivation of target from asserted facts. A type-of target
// entailed only through subsumption gets an R1 node. A target without an
// interval also matches the same triple with an interval when no exact
// fact exists. Throws NotDerivable.
DerivationTree explain(const Closure& closure, const Assertion& target);
DerivationTree explain(const Graph& graph, const Assertion& target,
                       const ReasonerOptions& options = {});

// Re-checks a derivation bottom-up: every non-leaf must be reproduced by
// one application of its rule to its children's conclusions (leaves must be
// facts of `asserted`). Returns false on the first node that does not replay.
bool replay(const DerivationTree& tree, const Graph& asserted,
            const ReasonerOptions& options = {});

}  // namespace dtkg
