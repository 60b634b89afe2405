#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dtkg/errors.hpp"
#include "dtkg/schema.hpp"
#include "dtkg/turtle.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"

namespace dtkg {
namespace {

using testing::t;

TEST(ParseDocument, MinimalDocument) {
  Document doc = parse_document("@prefix ex: <http://ex/> . ex:dt1 a dto:DigitalTwin .");
  ASSERT_EQ(doc.statements.size(), 1u);
  EXPECT_EQ(doc.statements[0].predicate, type_of());
  EXPECT_EQ(doc.prefixes.at("ex"), "http://ex/");
}

TEST(ParseDocument, UndeclaredPrefixReportsLine) {
  try {
    parse_document("ex:s ex:p ex:o .");
    FAIL() << "expected UndeclaredPrefix";
  } catch (const UndeclaredPrefix& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.name(), "ex");
  }
}

TEST(ParseDocument, VehicleTwinFixtureHasNineStatements) {
  EXPECT_EQ(parse_document(testing::read_fixture("vehicle_twin.dto.ttl")).statements.size(), 9u);
}

TEST(ParseDocument, PredicateListsCommentsLiteralsIntervals) {
  Document doc = parse_document(
      "@prefix ex: <http://ex/> .\n"
      "# comment\n"
      "ex:d a cco:DescriptiveICE ; # trailing comment\n"
      "  dto:recordsValue \"a \\\"b\\\"\\n\" ;\n"
      "  dto:recordsQualityType 2.5 ;\n"
      "  bfo:participatesIn ex:p @[1/3,] .\n");
  ASSERT_EQ(doc.statements.size(), 4u);
  EXPECT_EQ(doc.statements[1].object, Term::string_literal("a \"b\"\n"));
  EXPECT_EQ(doc.statements[2].object, Term::number(Rational(5, 2)));
  EXPECT_EQ(doc.statements[3].interval, TimeInterval::unbounded_from(Rational(1, 3)));
  EXPECT_EQ(doc.statements[3].line, 6u);
}

TEST(ParseDocument, SyntaxErrorsCarryPositions) {
  for (const char* bad : {"@prefix ex <x> .", "ex:a", "@prefix ex: <http://ex/> .\nex:a ex:b",
                          "@prefix ex: <http://ex/> .\nex:a a ex:B @[5,1] .",
                          "\"lit\" a dto:DigitalTwin .", "?x a dto:DigitalTwin ."}) {
    EXPECT_THROW(parse_document(bad), SyntaxError) << bad;
  }
  try {
    parse_document("@prefix ex: <http://ex/> .\nex:a a ;");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GE(e.column(), 1u);
    EXPECT_LE(e.column(), 9u);
  }
}

TEST(ParseDocument, VariablesOnlyWhenAllowed) {
  ParseOptions opts;
  opts.allow_variables = true;
  EXPECT_EQ(parse_document("?x a bfo:MaterialEntity .", opts).statements[0].subject,
            Term::variable("x"));
}

TEST(LoadGraph, SchemaStatementsExtendTheSchema) {
  Graph g = parse_graph(
      "@prefix ex: <http://ex/> .\n"
      "ex:Vehicle a owl:Class ; rdfs:subClassOf cco:Artifact .\n"
      "ex:drives a owl:ObjectProperty ; rdfs:domain bfo:MaterialEntity ;"
      " rdfs:range bfo:MaterialEntity .\n"
      "ex:v1 a ex:Vehicle ; ex:drives ex:v2 .\n");
  EXPECT_TRUE(g.is_subclass_of(t("ex:Vehicle"), vocab::MaterialEntity()));
  EXPECT_TRUE(g.has_relation(t("ex:drives")));
  EXPECT_EQ(g.size(), 2u);
}

TEST(LoadGraph, UnknownPredicatePropagates) {
  EXPECT_THROW(parse_graph("@prefix ex: <http://ex/> . ex:a ex:likes ex:b ."), UnknownPredicate);
}

TEST(Serialize, EmptyGraphIsPrefixBlockOnly) {
  Graph empty;
  std::string text = serialize_document(empty);
  EXPECT_NE(text.find("@prefix dto:"), std::string::npos);
  for (const auto& line : {std::string("ex:"), std::string(" a ")}) {
    EXPECT_EQ(text.find(line), std::string::npos);
  }
  EXPECT_EQ(load_graph(parse_document(text), Graph{}), empty);
}

TEST(Serialize, BuiltinSchemaRoundTrips) {
  Graph schema = builtin_schema();
  Graph back = load_graph(parse_document(serialize_document(schema)), Graph{});
  EXPECT_EQ(back, schema);
  EXPECT_EQ(back.classes(), schema.classes());
  EXPECT_EQ(back.relations(), schema.relations());
  EXPECT_EQ(back.disjoint_pairs(), schema.disjoint_pairs());
}

TEST(Serialize, PermutedBatchesSerializeIdentically) {
  testing::Rng rng(7);
  for (int round = 0; round < 20; ++round) {
    Graph g = testing::random_graph(rng);
    std::vector<Assertion> facts(g.assertions().begin(), g.assertions().end());
    std::shuffle(facts.begin(), facts.end(), rng.engine());
    Graph h = testing::test_schema();
    for (const auto& a : facts) h.add(a);
    EXPECT_EQ(serialize_document(g), serialize_document(h));
    EXPECT_EQ(testing::facts_of(load_graph(parse_document(serialize_document(h)), Graph{})),
              testing::facts_of(g));
  }
}

TEST(Serialize, ProvenanceCommentsStillParse) {
  Graph g = testing::fixture_graph("vehicle_twin.dto.ttl");
  Assertion inferred{t("ex:dt1"), type_of(), vocab::DigitalTwinInstance(), std::nullopt,
                     Provenance::inferred("R4")};
  g.add(inferred);
  SerializeOptions opts;
  opts.annotate_provenance = true;
  opts.schema = SerializeOptions::Schema::NonBuiltin;
  std::string text = serialize_document(g, opts);
  EXPECT_NE(text.find("# R4"), std::string::npos);
  EXPECT_EQ(parse_graph(text), g);
}

TEST(ParserFuzz, ArbitraryBytesOnlyRaiseSyntaxErrors) {
  std::mt19937_64 rng(11);
  const std::string alphabet = "@prefix ex:<>.;#\"\\?[],/0123456789abc a\n\t\r-_";
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    int len = static_cast<int>(rng() % 60);
    for (int k = 0; k < len; ++k) {
      text += (rng() % 4 == 0) ? static_cast<char>(rng() % 256) : alphabet[rng() % alphabet.size()];
    }
    try {
      parse_document(text);
    } catch (const SyntaxError& e) {
      std::size_t lines = std::count(text.begin(), text.end(), '\n') + 1;
      ASSERT_GE(e.line(), 1u);
      ASSERT_LE(e.line(), lines);
      std::size_t begin = 0;
      for (std::size_t l = 1; l < e.line(); ++l) begin = text.find('\n', begin) + 1;
      std::size_t end = text.find('\n', begin);
      std::size_t width = (end == std::string::npos ? text.size() : end) - begin;
      ASSERT_GE(e.column(), 1u);
      ASSERT_LE(e.column(), width + 1) << text;
    }
  }
}

}  // namespace
}  // namespace dtkg
