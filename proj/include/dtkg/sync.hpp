#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dtkg/graph.hpp"
#include "dtkg/partition.hpp"
#include "dtkg/synclog.hpp"

namespace dtkg {

struct TwinningRateMeasure {
  Term twin;
  TimeInterval window;
  std::size_t update_count = 0;
  Rational rate;  // updates per second
};

// Counts update records of twin with t in [start, end). Throws
// DegenerateWindow unless the window is bounded with start < end.
TwinningRateMeasure twinning_rate(const std::vector<SyncLogRecord>& log, const Term& twin,
                                  const TimeInterval& window);

struct Propagation {
  SyncLogRecord change;
  SyncLogRecord update;
  Rational lag;
};

struct SyncReport {
  std::vector<Propagation> propagated;
  std::vector<SyncLogRecord> missed;
  std::vector<SyncLogRecord> out_of_scope;
  std::vector<SyncLogRecord> signals;  // context only, never matched
  Rational max_observed_lag;
};

// Coverage key of a change or update record: (entity, quality type) with the
// part-presence marker for part changes.
CoverageItem coverage_key(const SyncLogRecord& record);

// A change is in scope when its coverage key is covered by the partition.
// Each in-scope change, in log order, consumes the earliest unconsumed update
// for twin with the same key and change.t <= update.t <= change.t + max_lag;
// changes with no such update are missed. Throws NotADTI (twin is not a
// digital twin instance in the closure of graph) and StalePartition.
SyncReport check_propagation(const std::vector<SyncLogRecord>& log, const Graph& graph,
                             const Term& twin, const Partition& partition,
                             const Rational& max_lag);

// For each update of twin, in t order: a fresh gen:descN descriptive part
// that describes the entity and records the quality type and value, attached
// with twin hasContinuantPart d @[t,]. The previous current part for the same
// (entity, quality type) is retired: its interval becomes [t0,t]. New parts
// depend on the twin's information bearing entities. Throws NotADTI.
Graph apply_updates(const Graph& graph, const std::vector<SyncLogRecord>& log, const Term& twin);

// Adds change records as gen:changeN events (QualityChange or
// PartReplacementChange @[t,t]) in which the entity participates, so the
// validator can check part replacements against quality changes.
Graph materialize_changes(const Graph& graph, const std::vector<SyncLogRecord>& log);

// Convex hull of the intervals of synchronizing processes shared by twin and
// a represented material entity (unannotated processes count as [0,)), and
// the times of log records involving both. Throws NotADTI, NoSharedProcesses.
TimeInterval lifecycle_interval(const Graph& graph, const std::vector<SyncLogRecord>& log,
                                const Term& twin);

// Human-readable report.
std::string format_report(const SyncReport& report, const std::optional<TwinningRateMeasure>& rate);
// One JSON line per change/signal record with a "verdict" field
// (propagated, missed, out-of-scope, signal), in log order.
std::string format_report_jsonl(const SyncReport& report);

}  // namespace dtkg
