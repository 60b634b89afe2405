#include <gtest/gtest.h>

#include <algorithm>

#include "dtkg/errors.hpp"
#include "dtkg/graph.hpp"
#include "dtkg/schema.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"

namespace dtkg {
namespace {

using testing::t;

TEST(Rational, ParsesDecimalsAndFractions) {
  EXPECT_EQ(*parse_rational("12"), Rational(12));
  EXPECT_EQ(*parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(*parse_rational("3/8"), Rational(3, 8));
  EXPECT_EQ(*parse_rational("0.1"), Rational(1, 10));
  EXPECT_FALSE(parse_rational(""));
  EXPECT_FALSE(parse_rational("1e3"));
  EXPECT_FALSE(parse_rational("1/0"));
  EXPECT_FALSE(parse_rational("1234567890123456789012"));
}

TEST(Rational, FormatRoundTrips) {
  for (const Rational& r : {Rational(0), Rational(1, 3), Rational(-7, 4), Rational(5, 2),
                            Rational(1, 1024), Rational(22, 7)}) {
    EXPECT_EQ(*parse_rational(format_rational(r)), r) << format_rational(r);
  }
  EXPECT_EQ(format_rational(Rational(1, 5)), "0.2");
  EXPECT_EQ(format_rational(Rational(1, 3)), "1/3");
}

TEST(TimeInterval, RejectsEndBeforeStart) {
  EXPECT_THROW(TimeInterval(Rational(5), Rational(4)), MalformedInterval);
  EXPECT_NO_THROW(TimeInterval(Rational(4), Rational(4)));
}

TEST(TimeInterval, OverlapIsClosed) {
  TimeInterval a(0, Rational(10));
  TimeInterval b(10, Rational(12));
  TimeInterval c(Rational(21, 2), std::nullopt);
  EXPECT_TRUE(a.overlaps(b));
  EXPECT_FALSE(a.overlaps(c));
  EXPECT_TRUE(b.overlaps(c));
  EXPECT_EQ(a.hull(c), TimeInterval::unbounded_from(0));
  EXPECT_EQ(a.str(), "[0,10]");
  EXPECT_EQ(c.str(), "[10.5,]");
}

TEST(Term, NamesValidateAndOrder) {
  EXPECT_THROW(Term::name("ex", ""), InvalidTerm);
  EXPECT_THROW(Term::name("ex", "has space"), InvalidTerm);
  EXPECT_THROW(Term::parse_qname("noColon"), InvalidTerm);
  EXPECT_EQ(t("ex:dt1").str(), "ex:dt1");
  EXPECT_LT(t("ex:a"), t("ex:b"));
  EXPECT_LT(t("zz:a"), Term::string_literal("a"));
  EXPECT_EQ(Term::string_literal("say \"hi\"").str(), "\"say \\\"hi\\\"\"");
  EXPECT_EQ(Term::number(Rational(1, 2)).str(), "0.5");
}

class GraphTest : public ::testing::Test {
 protected:
  Graph g = builtin_schema();
  Assertion fact(const char* s, const Term& p, const char* o) {
    return Assertion{t(s), p, t(o), std::nullopt, {}};
  }
};

TEST_F(GraphTest, AddIsIdempotent) {
  EXPECT_TRUE(g.add(fact("ex:dt1", type_of(), "dto:DigitalTwin")));
  EXPECT_FALSE(g.add(fact("ex:dt1", type_of(), "dto:DigitalTwin")));
  EXPECT_EQ(g.size(), 1u);
}

TEST_F(GraphTest, RejectsUnknownPredicateAndClass) {
  EXPECT_THROW(g.add(fact("ex:a", t("ex:likes"), "ex:b")), UnknownPredicate);
  EXPECT_THROW(g.add(fact("ex:a", type_of(), "ex:Nothing")), UnknownClass);
  EXPECT_TRUE(g.empty());
}

TEST_F(GraphTest, IntervalIsPartOfIdentity) {
  Assertion plain = fact("ex:s", type_of(), "dto:SynchronizingProcess");
  Assertion timed = plain;
  timed.interval = TimeInterval(0, Rational(10));
  EXPECT_TRUE(g.add(plain));
  EXPECT_TRUE(g.add(timed));
  EXPECT_EQ(g.find(t("ex:s"), type_of(), std::nullopt).size(), 2u);
}

TEST_F(GraphTest, SubsumptionQueries) {
  EXPECT_TRUE(g.is_subclass_of(vocab::SynchronizingProcess(), vocab::Process()));
  EXPECT_FALSE(g.is_subclass_of(vocab::DigitalTwinInstance(), vocab::RepresentationalICE()));
  EXPECT_THROW(g.is_subclass_of(t("ex:Nope"), vocab::Process()), UnknownClass);
  EXPECT_TRUE(g.is_subrelation_of(vocab::isCounterpartMaterialEntity(), vocab::represents()));
  EXPECT_TRUE(g.are_disjoint(vocab::Artifact(), vocab::InformationContentEntity()));
  EXPECT_FALSE(g.are_disjoint(vocab::Artifact(), vocab::InformationBearingEntity()));
}

TEST_F(GraphTest, ExtendSchemaChecksReferencesAndCycles) {
  std::vector<SchemaClass> dangling{{t("ex:A"), {t("ex:Missing")}, ""}};
  EXPECT_THROW(g.extend_schema(dangling, {}), DanglingReference);
  std::vector<SchemaClass> cycle{{t("ex:A"), {t("ex:B")}, ""}, {t("ex:B"), {t("ex:A")}, ""}};
  EXPECT_THROW(g.extend_schema(cycle, {}), CycleError);
  EXPECT_FALSE(g.has_class(t("ex:A")));
  std::vector<SchemaRelation> clash{
      {vocab::represents(), {}, vocab::Entity(), vocab::Entity(), ""}};
  EXPECT_THROW(g.extend_schema({}, clash), SchemaConflict);
  std::vector<SchemaClass> ok{{t("ex:Vehicle"), {vocab::Artifact()}, ""}};
  g.extend_schema(ok, {});
  EXPECT_TRUE(g.is_subclass_of(t("ex:Vehicle"), vocab::MaterialEntity()));
}

TEST_F(GraphTest, MatchBindsVariablesWithClassFilter) {
  g.add(fact("ex:dt1", vocab::represents(), "ex:vehicle1"));
  g.add(fact("ex:dt1", vocab::represents(), "ex:proc1"));
  g.add(fact("ex:vehicle1", type_of(), "cco:Artifact"));
  g.add(fact("ex:proc1", type_of(), "bfo:Process"));
  TriplePattern p{Term::variable("x"), vocab::represents(), Term::variable("y")};
  EXPECT_EQ(match(g, p).size(), 2u);
  auto only_material = match(g, p, {{"y", vocab::MaterialEntity()}});
  ASSERT_EQ(only_material.size(), 1u);
  EXPECT_EQ(only_material[0].vars.at("y"), t("ex:vehicle1"));
  EXPECT_THROW(match(g, p, {{"y", t("ex:Nope")}}), UnknownClass);
}

TEST_F(GraphTest, RepeatedVariableMustAgree) {
  g.add(fact("ex:a", vocab::hasProperContinuantPart(), "ex:a"));
  g.add(fact("ex:a", vocab::hasProperContinuantPart(), "ex:b"));
  TriplePattern loop{Term::variable("x"), vocab::hasProperContinuantPart(), Term::variable("x")};
  EXPECT_EQ(match(g, loop).size(), 1u);
}

TEST_F(GraphTest, SpecExamples) {
  std::vector<SchemaClass> rotor{{t("dto:Rotor"), {vocab::Artifact()}, ""}};
  Graph bigger = extend_schema(g, rotor, {});
  EXPECT_EQ(bigger.classes().size(), g.classes().size() + 1);
  EXPECT_TRUE(is_subclass_of(g, vocab::DigitalTwinInstance(), vocab::InformationContentEntity()));
  EXPECT_TRUE(is_subclass_of(g, vocab::MaterialEntity(), vocab::MaterialEntity()));
  EXPECT_FALSE(is_subclass_of(g, vocab::MaterialEntity(), vocab::Occurrent()));
  Graph one = assert_fact(g, fact("ex:dt1", type_of(), "dto:DigitalTwin"));
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(assert_fact(one, fact("ex:dt1", type_of(), "dto:DigitalTwin")), one);
  EXPECT_TRUE(g.empty());
}

TEST_F(GraphTest, MatchExamples) {
  Graph twin = testing::fixture_graph("vehicle_twin.dto.ttl");
  auto x = match(twin, {Term::variable("x"), vocab::represents(), t("ex:vehicle1")});
  ASSERT_EQ(x.size(), 1u);
  EXPECT_EQ(x[0].vars, (std::map<std::string, Term>{{"x", t("ex:dt1")}}));
  auto ground = match(twin, {t("ex:dt1"), vocab::represents(), t("ex:vehicle1")});
  ASSERT_EQ(ground.size(), 1u);
  EXPECT_TRUE(ground[0].vars.empty());
  EXPECT_TRUE(match(g, {Term::variable("x"), type_of(), vocab::DigitalTwinInstance()}).empty());
}

TEST(GraphProperties, WildcardMatchReturnsEveryAssertion) {
  testing::Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    Graph g = testing::random_graph(rng);
    TriplePattern all{Term::variable("s"), Term::variable("p"), Term::variable("o")};
    ASSERT_EQ(match(g, all).size(), g.size());
  }
}

TEST(GraphProperties, PermutedBatchesGiveEqualGraphs) {
  testing::Rng rng(2);
  for (int i = 0; i < 30; ++i) {
    Graph g = testing::random_graph(rng);
    std::vector<Assertion> batch(g.assertions().begin(), g.assertions().end());
    std::shuffle(batch.begin(), batch.end(), rng.engine());
    Graph h = testing::test_schema();
    for (const auto& a : batch) h.add(a);
    for (const auto& a : batch) h.add(a);
    ASSERT_EQ(h, g);
  }
}

// Random DAGs over up to 30 classes, checked against plain reachability.
TEST(GraphProperties, SubsumptionMatchesReachability) {
  testing::Rng rng(3);
  for (int round = 0; round < 40; ++round) {
    Graph g;
    const int n = rng.uniform(1, 30);
    std::vector<SchemaClass> classes;
    std::vector<std::vector<int>> up(n);
    for (int i = 0; i < n; ++i) {
      SchemaClass c{Term::name("ex", "C" + std::to_string(i)), {}, ""};
      for (int j = 0; j < i; ++j) {
        if (rng.chance(0.15)) {
          c.superclasses.insert(Term::name("ex", "C" + std::to_string(j)));
          up[i].push_back(j);
        }
      }
      classes.push_back(c);
    }
    std::shuffle(classes.begin(), classes.end(), rng.engine());
    g.extend_schema(classes, {});
    for (int a = 0; a < n; ++a) {
      std::vector<bool> seen(n, false);
      std::vector<int> stack{a};
      seen[a] = true;
      while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        for (int s : up[c]) {
          if (!seen[s]) {
            seen[s] = true;
            stack.push_back(s);
          }
        }
      }
      Term ta = Term::name("ex", "C" + std::to_string(a));
      for (int b = 0; b < n; ++b) {
        Term tb = Term::name("ex", "C" + std::to_string(b));
        ASSERT_EQ(g.is_subclass_of(ta, tb), static_cast<bool>(seen[b]));
        if (a != b && seen[b]) {
          ASSERT_FALSE(g.is_subclass_of(tb, ta));
        }
      }
    }
    const Term first = Term::name("ex", "C0");
    const Term last = Term::name("ex", "C" + std::to_string(n - 1));
    if (n >= 2 && g.is_subclass_of(last, first)) {
      std::vector<SchemaClass> back{{first, {last}, ""}};
      Graph before = g;
      ASSERT_THROW(g.extend_schema(back, {}), CycleError);
      ASSERT_EQ(g.classes(), before.classes());
    }
  }
}

TEST(Schema, BuiltinSchemaHasNoInstances) {
  Graph g = builtin_schema();
  EXPECT_TRUE(g.empty());
  EXPECT_TRUE(g.is_subclass_of(vocab::SynchronizingProcess(), vocab::Process()));
  EXPECT_TRUE(g.is_subclass_of(vocab::DigitalTwinPrototype(), vocab::DirectiveICE()));
}

}  // namespace
}  // namespace dtkg
