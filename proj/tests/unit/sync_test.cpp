#include <gtest/gtest.h>

#include <algorithm>

#include "dtkg/errors.hpp"
#include "dtkg/schema.hpp"
#include "dtkg/sync.hpp"
#include "dtkg/turtle.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

namespace dtkg {
namespace {

using namespace vocab;
using testing::t;

SyncLogRecord update(Rational at, const std::string& twin, const std::string& entity = "ex:vehicle1",
                     std::optional<Term> quality = Temperature(), const std::string& value = "v") {
  SyncLogRecord r;
  r.kind = RecordKind::Update;
  r.t = at;
  r.twin = t(twin);
  r.entity = t(entity);
  r.quality_type = std::move(quality);
  r.value = value;
  return r;
}

SyncLogRecord change(Rational at, const std::string& entity, std::optional<Term> quality) {
  SyncLogRecord r;
  r.t = at;
  r.entity = t(entity);
  if (quality) {
    r.kind = RecordKind::ChangeQuality;
    r.quality_type = std::move(quality);
  } else {
    r.kind = RecordKind::ChangePart;
    r.removed_part = t("ex:old");
    r.added_part = t("ex:new");
  }
  return r;
}

TEST(TwinningRate, FourUpdatesOverTwoSeconds) {
  std::vector<SyncLogRecord> log;
  for (int i = 0; i < 4; ++i) log.push_back(update(Rational(i, 2), "ex:dt1"));
  log.push_back(update(2, "ex:dt1"));
  TwinningRateMeasure m = twinning_rate(log, t("ex:dt1"), TimeInterval(0, Rational(2)));
  EXPECT_EQ(m.update_count, 4u);
  EXPECT_EQ(m.rate, Rational(2));
}

TEST(TwinningRate, EmptyLog) {
  TwinningRateMeasure m = twinning_rate({}, t("ex:dt1"), TimeInterval(0, Rational(5)));
  EXPECT_EQ(m.update_count, 0u);
  EXPECT_EQ(m.rate, Rational(0));
}

TEST(TwinningRate, FiltersByTwin) {
  std::vector<SyncLogRecord> log;
  for (int i = 0; i < 3; ++i) log.push_back(update(i, "ex:dt1"));
  for (int i = 0; i < 5; ++i) log.push_back(update(i, "ex:dt2"));
  TwinningRateMeasure m = twinning_rate(log, t("ex:dt1"), TimeInterval(0, Rational(10)));
  EXPECT_EQ(m.update_count, 3u);
  EXPECT_EQ(m.rate, Rational(3, 10));
}

TEST(TwinningRate, DegenerateWindows) {
  EXPECT_THROW(twinning_rate({}, t("ex:dt1"), TimeInterval(1, Rational(1))), DegenerateWindow);
  EXPECT_THROW(twinning_rate({}, t("ex:dt1"), TimeInterval::unbounded_from(0)), DegenerateWindow);
}

TEST(TwinningRate, DoublingWindowHalvesRate) {
  testing::Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    std::vector<SyncLogRecord> log;
    int n = rng.uniform(0, 40);
    Rational width(rng.uniform(1, 50), rng.uniform(1, 7));
    for (int k = 0; k < n; ++k) log.push_back(update(width * Rational(rng.uniform(0, 99), 100), "ex:dt1"));
    auto a = twinning_rate(log, t("ex:dt1"), TimeInterval(0, width));
    auto b = twinning_rate(log, t("ex:dt1"), TimeInterval(0, width * 2));
    ASSERT_EQ(a.update_count, b.update_count);
    ASSERT_EQ(b.rate * 2, a.rate);
  }
}

class VehicleTwinSync : public ::testing::Test {
 protected:
  Graph graph = testing::fixture_graph("vehicle_twin.dto.ttl");
  std::vector<SyncLogRecord> log = parse_sync_log(testing::read_fixture("vehicle_twin.synclog"));
  Partition partition = create_partition(graph, t("ex:vehicle1"), {Temperature()});
};

TEST_F(VehicleTwinSync, ChangePropagates) {
  SyncReport r = check_propagation(log, graph, t("ex:dt1"), partition, Rational(1, 2));
  ASSERT_EQ(r.propagated.size(), 1u);
  EXPECT_EQ(r.propagated[0].lag, Rational(1, 5));
  EXPECT_TRUE(r.missed.empty());
  EXPECT_TRUE(r.out_of_scope.empty());
  EXPECT_EQ(r.signals.size(), 1u);
  EXPECT_EQ(r.max_observed_lag, Rational(1, 5));
}

TEST_F(VehicleTwinSync, DeletedUpdateIsMissed) {
  log.pop_back();
  SyncReport r = check_propagation(log, graph, t("ex:dt1"), partition, Rational(1, 2));
  EXPECT_TRUE(r.propagated.empty());
  EXPECT_EQ(r.missed.size(), 1u);
}

TEST_F(VehicleTwinSync, LateUpdateIsMissed) {
  SyncReport r = check_propagation(log, graph, t("ex:dt1"), partition, Rational(1, 10));
  EXPECT_EQ(r.missed.size(), 1u);
}

TEST_F(VehicleTwinSync, UntrackedQualityIsOutOfScope) {
  std::vector<SyncLogRecord> pressure{change(0, "ex:vehicle1", Pressure())};
  SyncReport r = check_propagation(pressure, graph, t("ex:dt1"), partition, Rational(1));
  EXPECT_EQ(r.out_of_scope.size(), 1u);
  EXPECT_TRUE(r.missed.empty());
}

TEST_F(VehicleTwinSync, NonTwinRejected) {
  EXPECT_THROW(check_propagation(log, graph, t("ex:vehicle1"), partition, 1), NotADTI);
  EXPECT_THROW(apply_updates(graph, log, t("ex:hw1")), NotADTI);
}

TEST_F(VehicleTwinSync, EachUpdateMatchesOnce) {
  log.insert(log.begin() + 1, change(Rational(1, 10), "ex:vehicle1", Temperature()));
  SyncReport r = check_propagation(log, graph, t("ex:dt1"), partition, Rational(1));
  EXPECT_EQ(r.propagated.size(), 1u);
  EXPECT_EQ(r.missed.size(), 1u);
  EXPECT_EQ(r.missed[0].t, Rational(1, 10));
}

TEST_F(VehicleTwinSync, ApplyUpdateAddsDescriptivePart) {
  Graph out = apply_updates(graph, log, t("ex:dt1"));
  auto parts = out.find(t("ex:dt1"), hasContinuantPart(), std::nullopt);
  ASSERT_EQ(parts.size(), 1u);
  const Term& d = parts[0].object;
  EXPECT_EQ(parts[0].interval, TimeInterval::unbounded_from(Rational(1, 5)));
  EXPECT_TRUE(out.has_type(d, DescriptiveICE()));
  EXPECT_FALSE(out.find(d, describes(), t("ex:vehicle1")).empty());
  EXPECT_FALSE(out.find(d, recordsQualityType(), Temperature()).empty());
  EXPECT_FALSE(out.find(d, recordsValue(), Term::string_literal("25C")).empty());
  EXPECT_TRUE(validate(out).empty());
}

TEST_F(VehicleTwinSync, EmptyLogLeavesGraphUnchanged) {
  EXPECT_EQ(apply_updates(graph, {}, t("ex:dt1")), graph);
}

TEST_F(VehicleTwinSync, SecondUpdateRetiresFirst) {
  std::vector<SyncLogRecord> two{update(1, "ex:dt1", "ex:vehicle1", Temperature(), "25C"),
                                 update(3, "ex:dt1", "ex:vehicle1", Temperature(), "27C")};
  Graph out = apply_updates(graph, two, t("ex:dt1"));
  auto parts = out.find(t("ex:dt1"), hasContinuantPart(), std::nullopt);
  ASSERT_EQ(parts.size(), 2u);
  auto current = std::count_if(parts.begin(), parts.end(),
                               [](const Assertion& a) { return !a.interval->bounded(); });
  EXPECT_EQ(current, 1);
  for (const auto& a : parts) {
    if (a.interval->bounded()) {
      EXPECT_EQ(*a.interval, TimeInterval(1, Rational(3)));
    }
  }
}

TEST_F(VehicleTwinSync, ApplyingOneRecordAtATimeIsTheSame) {
  testing::Rng rng(12);
  std::vector<CoverageItem> keys{{t("ex:vehicle1"), Temperature()},
                                 {t("ex:vehicle1"), Weight()},
                                 {t("ex:vehicle1"), std::nullopt}};
  for (int i = 0; i < 20; ++i) {
    auto random_log = testing::random_sensor_log(rng, 40, t("ex:dt1"), keys, Rational(1));
    Graph all = apply_updates(graph, random_log, t("ex:dt1"));
    Graph stepwise = graph;
    for (const auto& r : random_log) stepwise = apply_updates(stepwise, {r}, t("ex:dt1"));
    ASSERT_EQ(all, stepwise);
    ASSERT_EQ(serialize_document(all), serialize_document(stepwise));
  }
}

TEST_F(VehicleTwinSync, LifecycleIsSyncInterval) {
  EXPECT_EQ(lifecycle_interval(graph, log, t("ex:dt1")), TimeInterval(0, Rational(10)));
}

TEST(Lifecycle, HullOfTwoProcesses) {
  Graph g = parse_graph(
      "@prefix ex: <http://ex/> .\n"
      "ex:dt1 a dto:DigitalTwin ; cco:represents ex:v ; bfo:genericallyDependsOn ex:hw ;\n"
      "  bfo:participatesIn ex:s1 ; bfo:participatesIn ex:s2 .\n"
      "ex:hw a cco:InformationBearingEntity .\n"
      "ex:v a cco:Artifact ; bfo:participatesIn ex:s1 ; bfo:participatesIn ex:s2 .\n"
      "ex:s1 a dto:SynchronizingProcess @[0,2] .\n"
      "ex:s2 a dto:SynchronizingProcess @[5,9] .\n");
  EXPECT_EQ(lifecycle_interval(g, {}, t("ex:dt1")), TimeInterval(0, Rational(9)));
  std::vector<SyncLogRecord> late{update(12, "ex:dt1", "ex:v")};
  EXPECT_EQ(lifecycle_interval(g, late, t("ex:dt1")), TimeInterval(0, Rational(12)));
}

TEST(Lifecycle, NoSharedProcess) {
  Graph g = parse_graph(
      "@prefix ex: <http://ex/> .\n"
      "ex:dt1 a dto:DigitalTwin ; cco:represents ex:v .\n"
      "ex:v a cco:Artifact .\n");
  EXPECT_THROW(lifecycle_interval(g, {}, t("ex:dt1")), NoSharedProcesses);
}

class RandomLogs : public ::testing::Test {
 protected:
  Graph graph = testing::fixture_graph("vehicle_parts.dto.ttl");
  Term twin = t("ex:dt1");
  std::vector<CoverageItem> keys{{t("ex:vehicle1"), Temperature()},
                                 {t("ex:vehicle1"), std::nullopt},
                                 {t("ex:engine1"), Temperature()},
                                 {t("ex:engine1"), Weight()},
                                 {t("ex:engine1"), std::nullopt},
                                 {t("ex:window1"), std::nullopt},
                                 {t("ex:piston1"), Pressure()}};
  std::vector<Partition> partitions() {
    std::vector<Partition> out;
    for (const char* name : {"vehicle.part", "vehicle_engine.part", "vehicle_engine_piston.part", "tempweight.part",
                             "window_presence.part"}) {
      out.push_back(parse_partition(testing::read_fixture(name)));
    }
    return out;
  }
};

std::size_t in_scope(const std::vector<SyncLogRecord>& log, const Coverage& scope) {
  return std::count_if(log.begin(), log.end(), [&](const SyncLogRecord& r) {
    return (r.kind == RecordKind::ChangeQuality || r.kind == RecordKind::ChangePart) &&
           scope.contains(coverage_key(r));
  });
}

TEST_F(RandomLogs, Conservation) {
  testing::Rng rng(77);
  for (int i = 0; i < 60; ++i) {
    auto log = testing::random_sensor_log(rng, 200, twin, keys, Rational(1));
    for (const auto& p : partitions()) {
      SyncReport r = check_propagation(log, graph, twin, p, Rational(1));
      ASSERT_EQ(in_scope(log, coverage(p, graph)), r.propagated.size() + r.missed.size());
      for (const auto& m : r.propagated) {
        ASSERT_GE(m.lag, 0);
        ASSERT_LE(m.lag, 1);
        ASSERT_EQ(coverage_key(m.change), coverage_key(m.update));
      }
    }
  }
}

TEST_F(RandomLogs, DeletingMatchedUpdateMissesExactlyOne) {
  testing::Rng rng(78);
  Partition p = parse_partition(testing::read_fixture("tempweight.part"));
  for (int i = 0; i < 30; ++i) {
    auto log = testing::random_sensor_log(rng, 120, twin, keys, Rational(1));
    SyncReport base = check_propagation(log, graph, twin, p, Rational(1));
    for (const auto& m : base.propagated) {
      std::vector<SyncLogRecord> fewer;
      for (const auto& r : log) {
        if (!(r == m.update)) fewer.push_back(r);
      }
      SyncReport r = check_propagation(fewer, graph, twin, p, Rational(1));
      ASSERT_EQ(r.propagated.size() + 1, base.propagated.size());
      ASSERT_EQ(r.missed.size(), base.missed.size() + 1);
    }
  }
}

TEST_F(RandomLogs, WiderPartitionsOnlyGrowScope) {
  testing::Rng rng(79);
  Partition narrow = parse_partition(testing::read_fixture("temponly.part"));
  Partition wide = parse_partition(testing::read_fixture("tempweight.part"));
  Partition with_piston = parse_partition(testing::read_fixture("vehicle_engine_piston.part"));
  Partition with_engine = parse_partition(testing::read_fixture("vehicle_engine.part"));
  for (int i = 0; i < 40; ++i) {
    auto log = testing::random_sensor_log(rng, 150, twin, keys, Rational(1));
    for (const auto& [small, big] : {std::pair{narrow, wide}, std::pair{with_engine, with_piston}}) {
      SyncReport a = check_propagation(log, graph, twin, small, Rational(1));
      SyncReport b = check_propagation(log, graph, twin, big, Rational(1));
      ASSERT_LE(a.propagated.size() + a.missed.size(), b.propagated.size() + b.missed.size());
      for (const auto& m : a.missed) {
        ASSERT_EQ(std::find(b.out_of_scope.begin(), b.out_of_scope.end(), m), b.out_of_scope.end());
      }
    }
  }
}

TEST(SyncReportFormat, TextAndJsonl) {
  Graph graph = testing::fixture_graph("vehicle_twin.dto.ttl");
  auto log = parse_sync_log(testing::read_fixture("vehicle_twin.synclog"));
  Partition p = create_partition(graph, t("ex:vehicle1"), {Temperature()});
  SyncReport r = check_propagation(log, graph, t("ex:dt1"), p, Rational(1));
  auto rate = twinning_rate(log, t("ex:dt1"), TimeInterval(0, Rational(10)));
  std::string text = format_report(r, rate);
  EXPECT_NE(text.find("propagated: 1"), std::string::npos);
  EXPECT_NE(text.find("lag 0.2"), std::string::npos);
  EXPECT_NE(text.find("= 0.1 per second"), std::string::npos);

  std::string jsonl = format_report_jsonl(r);
  std::vector<std::string> warnings;
  auto back = parse_sync_log(jsonl, &warnings);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].kind, RecordKind::ChangeQuality);
  EXPECT_EQ(back[1].kind, RecordKind::Signal);
  EXPECT_NE(jsonl.find("\"verdict\": \"propagated\""), std::string::npos);
}

}  // namespace
}  // namespace dtkg
