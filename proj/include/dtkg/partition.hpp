#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dtkg/graph.hpp"

namespace dtkg {

// A cell projects onto one material individual and records which quality
// types the twin tracks for it. Children project onto proper parts.
struct Cell {
  std::string id;
  Term target;
  std::set<Term> tracked;
  std::vector<Cell> children;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Immutable cell tree. graph_ref names the graph the targets live in (a file
// path or any caller-chosen label); it is carried along, not interpreted.
struct Partition {
  Cell root;
  std::string graph_ref;

  friend bool operator==(const Partition&, const Partition&) = default;
};

// (individual, quality type); a missing quality type is the part-presence
// marker, i.e. "this part is represented at all".
struct CoverageItem {
  Term target;
  std::optional<Term> quality_type;

  std::string str() const;
  friend auto operator<=>(const CoverageItem&, const CoverageItem&) = default;
};

using Coverage = std::set<CoverageItem>;

enum class FidelityOrder { Higher, Lower, Equal, Incomparable };

std::string_view order_name(FidelityOrder order);

// Transitive closure of asserted hasProperContinuantPart.
bool is_proper_part(const Graph& graph, const Term& part, const Term& whole);

// Single root cell. Throws UnknownIndividual, NotMaterialEntity.
Partition create_partition(const Graph& graph, const Term& root_target,
                           const std::set<Term>& tracked);

// Adds a child under parent_cell_id. Throws UnknownCell, UnknownIndividual,
// NotMaterialEntity, NotAProperPart, DuplicateSiblingTarget.
Partition refine(const Partition& partition, const Graph& graph, const std::string& parent_cell_id,
                 const Term& new_target, const std::set<Term>& tracked);

// New root over new_root_target with the old root as its only child.
// Throws UnknownIndividual, NotMaterialEntity, NotAProperPart.
Partition extend_root(const Partition& partition, const Graph& graph, const Term& new_root_target,
                      const std::set<Term>& tracked);

// Re-checks every invariant against graph: unique ids, targets present and
// material, children proper parts of their parent, distinct sibling targets.
// Throws StalePartition for a target no longer in the graph, otherwise
// MalformedPartition / NotMaterialEntity / NotAProperPart /
// DuplicateSiblingTarget.
void check_partition(const Partition& partition, const Graph& graph);

// Throws StalePartition.
Coverage coverage(const Partition& partition, const Graph& graph);

// Set inclusion of coverages, never cardinality. Throws StalePartition.
FidelityOrder compare_fidelity(const Partition& a, const Partition& b, const Graph& graph);

const Cell* find_cell(const Partition& partition, const std::string& id);

// .part text, one cell per line, two spaces of indentation per depth:
//
//   cell vehicle1 -> ex:vehicle1 tracks {}
//     cell engine1 -> ex:engine1 tracks {dto:Temperature, dto:Weight}
//
// '#' starts a comment. Throws SyntaxError, MalformedPartition.
Partition parse_partition(std::string_view text, std::string graph_ref = {});
std::string serialize_partition(const Partition& partition);

}  // namespace dtkg
