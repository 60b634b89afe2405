#pragma once

#include <string>
#include <vector>

#include "dtkg/graph.hpp"

namespace dtkg {

// Names of the built-in classes and relations.
namespace vocab {

Term bfo(std::string_view local);
Term cco(std::string_view local);
Term dto(std::string_view local);

// Classes
inline const Term& Entity() { static const Term t = bfo("Entity"); return t; }
inline const Term& Continuant() { static const Term t = bfo("Continuant"); return t; }
inline const Term& Occurrent() { static const Term t = bfo("Occurrent"); return t; }
inline const Term& IndependentContinuant() { static const Term t = bfo("IndependentContinuant"); return t; }
inline const Term& SpecificallyDependentContinuant() { static const Term t = bfo("SpecificallyDependentContinuant"); return t; }
inline const Term& GenericallyDependentContinuant() { static const Term t = bfo("GenericallyDependentContinuant"); return t; }
inline const Term& MaterialEntity() { static const Term t = bfo("MaterialEntity"); return t; }
inline const Term& Quality() { static const Term t = bfo("Quality"); return t; }
inline const Term& Process() { static const Term t = bfo("Process"); return t; }
inline const Term& InformationContentEntity() { static const Term t = cco("InformationContentEntity"); return t; }
inline const Term& InformationBearingEntity() { static const Term t = cco("InformationBearingEntity"); return t; }
inline const Term& DescriptiveICE() { static const Term t = cco("DescriptiveICE"); return t; }
inline const Term& DirectiveICE() { static const Term t = cco("DirectiveICE"); return t; }
inline const Term& RepresentationalICE() { static const Term t = cco("RepresentationalICE"); return t; }
inline const Term& Stasis() { static const Term t = cco("Stasis"); return t; }
inline const Term& Change() { static const Term t = cco("Change"); return t; }
inline const Term& EnvironmentalFeature() { static const Term t = cco("EnvironmentalFeature"); return t; }
inline const Term& Artifact() { static const Term t = cco("Artifact"); return t; }
inline const Term& DigitalTwin() { static const Term t = dto("DigitalTwin"); return t; }
inline const Term& DigitalTwinInstance() { static const Term t = dto("DigitalTwinInstance"); return t; }
inline const Term& DigitalTwinPrototype() { static const Term t = dto("DigitalTwinPrototype"); return t; }
inline const Term& SynchronizingProcess() { static const Term t = dto("SynchronizingProcess"); return t; }
inline const Term& TwinningRate() { static const Term t = dto("TwinningRate"); return t; }
inline const Term& Fidelity() { static const Term t = dto("Fidelity"); return t; }
inline const Term& DigitalTwinInstanceLifecycle() { static const Term t = dto("DigitalTwinInstanceLifecycle"); return t; }
inline const Term& ArrangementSpecification() { static const Term t = dto("ArrangementSpecification"); return t; }
inline const Term& QualityChange() { static const Term t = dto("QualityChange"); return t; }
inline const Term& PartReplacementChange() { static const Term t = dto("PartReplacementChange"); return t; }
inline const Term& Temperature() { static const Term t = dto("Temperature"); return t; }
inline const Term& Weight() { static const Term t = dto("Weight"); return t; }
inline const Term& Pressure() { static const Term t = dto("Pressure"); return t; }
inline const Term& Velocity() { static const Term t = dto("Velocity"); return t; }
inline const Term& ThermalConductivity() { static const Term t = dto("ThermalConductivity"); return t; }

// Relations
inline const Term& genericallyDependsOn() { static const Term t = bfo("genericallyDependsOn"); return t; }
inline const Term& represents() { static const Term t = cco("represents"); return t; }
inline const Term& describes() { static const Term t = cco("describes"); return t; }
inline const Term& prescribes() { static const Term t = cco("prescribes"); return t; }
inline const Term& participatesIn() { static const Term t = bfo("participatesIn"); return t; }
inline const Term& hasContinuantPart() { static const Term t = bfo("hasContinuantPart"); return t; }
inline const Term& hasProperContinuantPart() { static const Term t = bfo("hasProperContinuantPart"); return t; }
inline const Term& hasOccurrentPart() { static const Term t = bfo("hasOccurrentPart"); return t; }
inline const Term& bearsQuality() { static const Term t = bfo("bearsQuality"); return t; }
inline const Term& isCounterpartMaterialEntity() { static const Term t = dto("isCounterpartMaterialEntity"); return t; }
inline const Term& isCounterpartProcess() { static const Term t = dto("isCounterpartProcess"); return t; }
inline const Term& prescribesArrangement() { static const Term t = dto("prescribesArrangement"); return t; }
inline const Term& recordsQualityType() { static const Term t = dto("recordsQualityType"); return t; }
inline const Term& recordsValue() { static const Term t = dto("recordsValue"); return t; }
inline const Term& affectsQualityType() { static const Term t = dto("affectsQualityType"); return t; }
inline const Term& oldValue() { static const Term t = dto("oldValue"); return t; }
inline const Term& newValue() { static const Term t = dto("newValue"); return t; }
inline const Term& removedPart() { static const Term t = dto("removedPart"); return t; }
inline const Term& addedPart() { static const Term t = dto("addedPart"); return t; }

}  // namespace vocab

// The shipped ontology: BFO/CCO scaffolding plus the digital twin classes
// and relations, without instance assertions. DigitalTwinInstance is not
// declared under RepresentationalICE; rule R6 derives that per individual.
Graph builtin_schema();

// True for classes/relations that builtin_schema() declares identically.
bool is_builtin_class(const SchemaClass& c);
bool is_builtin_relation(const SchemaRelation& r);

enum class Severity { Error, Warning };

struct Violation {
  std::string constraint;  // "C1" .. "C6"
  Severity severity;
  Term focus;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  std::size_t errors() const;
  std::size_t warnings() const;
  bool empty() const { return violations.empty(); }
};

struct ReasonerOptions;

// Closed-world constraint check, evaluated over the deductive closure of
// `graph` (rules applied without the strict-mode exception).
//
//   C1 error    subject/object type disjoint from relation domain/range, or
//               a literal where the range is constrained
//   C2 warning  ICE instance with no genericallyDependsOn to a bearer
//   C3 error    synchronizing process without a DTI participant
//   C4 error    isCounterpart* assertion whose R7/R8 premises do not hold
//   C5 warning  part-replacement change whose bearer has no quality change
//   C6 error    hasProperContinuantPart cycle or self-loop
//
// Violations are sorted by (constraint, focus, message).
ValidationReport validate(const Graph& graph);
ValidationReport validate(const Graph& graph, const ReasonerOptions& options);

// C1 alone, over the graph exactly as given. Used by the strict reasoner.
std::vector<Violation> domain_range_violations(const Graph& graph);

}  // namespace dtkg
