#include "dtkg/schema.hpp"

namespace dtkg {

namespace vocab {

Term bfo(std::string_view local) { return Term::name("bfo", local); }
Term cco(std::string_view local) { return Term::name("cco", local); }
Term dto(std::string_view local) { return Term::name("dto", local); }

}  // namespace vocab

namespace {

using namespace vocab;

std::vector<SchemaClass> builtin_classes() {
  auto cls = [](const Term& id, std::set<Term> supers, std::string def) {
    return SchemaClass{id, std::move(supers), std::move(def)};
  };
  return {
      cls(Entity(), {}, "Anything that exists; top of the class hierarchy."),
      cls(Continuant(), {Entity()}, "Entity that endures through time while keeping its identity."),
      cls(Occurrent(), {Entity()}, "Entity that unfolds in time, or a temporal boundary or region."),
      cls(IndependentContinuant(), {Continuant()}, "Continuant that is a bearer of qualities and does not depend on other entities."),
      cls(SpecificallyDependentContinuant(), {Continuant()}, "Continuant that inheres in one specific bearer."),
      cls(GenericallyDependentContinuant(), {Continuant()}, "Continuant that can be copied across interchangeable bearers."),
      cls(MaterialEntity(), {IndependentContinuant()}, "Independent continuant with some portion of matter as part."),
      cls(Quality(), {SpecificallyDependentContinuant()}, "Specifically dependent continuant such as a temperature or a weight."),
      cls(Process(), {Occurrent()}, "Occurrent with temporal proper parts in which some material entity participates."),
      cls(InformationContentEntity(), {GenericallyDependentContinuant()}, "Content that depends on some information bearing entity and is about something."),
      cls(InformationBearingEntity(), {MaterialEntity()}, "Material entity on which information content generically depends."),
      cls(DescriptiveICE(), {InformationContentEntity()}, "Information content that describes some entity."),
      cls(DirectiveICE(), {InformationContentEntity()}, "Information content that prescribes some entity."),
      cls(RepresentationalICE(), {InformationContentEntity()}, "Information content that represents some entity."),
      cls(Stasis(), {Process()}, "Process in which independent continuants stay unchanged."),
      cls(Change(), {Process()}, "Process in which a bearer gains, loses, or changes the intensity of dependents."),
      cls(EnvironmentalFeature(), {MaterialEntity()}, "Natural or man-made feature of the environment."),
      cls(Artifact(), {MaterialEntity()}, "Material entity designed to realize some function."),
      cls(DigitalTwin(), {InformationContentEntity()}, "Information content that represents a material entity or process, or prescribes an arrangement of types yielding one."),
      cls(DigitalTwinInstance(), {DigitalTwin()}, "Digital twin that represents some existing material entity or process."),
      cls(DigitalTwinPrototype(), {DigitalTwin(), DirectiveICE()}, "Digital twin prescribing a class-level arrangement from which a counterpart can be produced."),
      cls(SynchronizingProcess(), {Change()}, "Change during which a digital twin instance is updated from its counterpart in real time."),
      cls(TwinningRate(), {InformationContentEntity()}, "Measurement of how often synchronization between a twin and its counterpart occurs."),
      cls(Fidelity(), {InformationContentEntity()}, "Measurement of the information types transferred between a twin and its counterpart."),
      cls(DigitalTwinInstanceLifecycle(), {Process()}, "Process made of the processes in which a twin instance and its counterpart participate."),
      cls(ArrangementSpecification(), {DirectiveICE()}, "Class-level arrangement prescribed by a digital twin prototype."),
      cls(QualityChange(), {Change()}, "Change in which a quality of the bearer is replaced."),
      cls(PartReplacementChange(), {Change()}, "Change in which a material part of the bearer is replaced."),
      cls(Temperature(), {Quality()}, "Temperature quality type."),
      cls(Weight(), {Quality()}, "Weight quality type."),
      cls(Pressure(), {Quality()}, "Pressure quality type."),
      cls(Velocity(), {Quality()}, "Velocity quality type."),
      cls(ThermalConductivity(), {Quality()}, "Thermal conductivity quality type."),
  };
}

std::vector<SchemaRelation> builtin_relations() {
  auto rel = [](const Term& id, std::set<Term> supers, const Term& domain,
                const Term& range, std::string def) {
    return SchemaRelation{id, std::move(supers), domain, range, std::move(def)};
  };
  return {
      rel(genericallyDependsOn(), {}, InformationContentEntity(), InformationBearingEntity(), "Content depends on one of its interchangeable bearers."),
      rel(represents(), {}, InformationContentEntity(), Entity(), "Aboutness grounded in a correspondence between the carrier and the target."),
      rel(describes(), {}, InformationContentEntity(), Entity(), "Aboutness of the characteristics by which the target is recognized."),
      rel(prescribes(), {}, InformationContentEntity(), Entity(), "Content serves as a rule, guide or model for the target."),
      rel(participatesIn(), {}, Continuant(), Occurrent(), "A continuant takes part in an occurrent."),
      rel(hasContinuantPart(), {}, Continuant(), Continuant(), "Continuant parthood, reflexive."),
      rel(hasProperContinuantPart(), {}, Continuant(), Continuant(), "Continuant parthood, irreflexive and acyclic."),
      rel(hasOccurrentPart(), {}, Occurrent(), Occurrent(), "Occurrent parthood."),
      rel(bearsQuality(), {}, MaterialEntity(), Quality(), "A material entity bears a reified quality individual."),
      rel(isCounterpartMaterialEntity(), {represents()}, DigitalTwinInstance(), MaterialEntity(), "Twin instance represents and synchronizes with a material entity."),
      rel(isCounterpartProcess(), {represents()}, DigitalTwinInstance(), Process(), "Twin instance represents a process overlapping one of its synchronizations."),
      rel(prescribesArrangement(), {}, DigitalTwinPrototype(), ArrangementSpecification(), "Prototype prescribes a class-level arrangement."),
      rel(recordsQualityType(), {}, DescriptiveICE(), Entity(), "Quality type a descriptive part records."),
      rel(recordsValue(), {}, DescriptiveICE(), Entity(), "Literal value a descriptive part records."),
      rel(affectsQualityType(), {}, QualityChange(), Entity(), "Quality type replaced by a quality change."),
      rel(oldValue(), {}, QualityChange(), Entity(), "Value before a quality change."),
      rel(newValue(), {}, QualityChange(), Entity(), "Value after a quality change."),
      rel(removedPart(), {}, PartReplacementChange(), MaterialEntity(), "Part removed by a part replacement."),
      rel(addedPart(), {}, PartReplacementChange(), MaterialEntity(), "Part added by a part replacement."),
  };
}

std::vector<DisjointPair> builtin_disjoint() {
  return {
      {Continuant(), Occurrent()},
      {IndependentContinuant(), GenericallyDependentContinuant()},
      {IndependentContinuant(), SpecificallyDependentContinuant()},
      {GenericallyDependentContinuant(), SpecificallyDependentContinuant()},
  };
}

const Graph& builtin_graph() {
  static const Graph graph = [] {
    Graph g;
    auto classes = builtin_classes();
    auto relations = builtin_relations();
    auto disjoint = builtin_disjoint();
    g.extend_schema(classes, relations, disjoint);
    return g;
  }();
  return graph;
}

}  // namespace

Graph builtin_schema() { return builtin_graph(); }

bool is_builtin_class(const SchemaClass& c) {
  const auto& classes = builtin_graph().classes();
  auto it = classes.find(c.id);
  return it != classes.end() && it->second == c;
}

bool is_builtin_relation(const SchemaRelation& r) {
  const auto& relations = builtin_graph().relations();
  auto it = relations.find(r.id);
  return it != relations.end() && it->second == r;
}

}  // namespace dtkg
