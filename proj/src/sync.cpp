#include "dtkg/sync.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dtkg/errors.hpp"
#include "dtkg/reasoner.hpp"
#include "dtkg/schema.hpp"

namespace dtkg {

namespace {

using namespace vocab;

void require_dti(const Graph& closed, const Term& twin) {
  if (!closed.has_type(twin, DigitalTwinInstance())) {
    throw NotADTI(twin.str() + " is not a digital twin instance");
  }
}

std::vector<SyncLogRecord> sorted(std::vector<SyncLogRecord> log) {
  std::stable_sort(log.begin(), log.end(),
                   [](const SyncLogRecord& a, const SyncLogRecord& b) { return a.t < b.t; });
  return log;
}

// Largest N among existing gen:<stem>N names.
std::size_t next_index(const Graph& graph, const std::string& stem) {
  std::size_t next = 1;
  for (const auto& t : graph.individuals()) {
    if (t.prefix() != "gen" || !t.local().starts_with(stem)) continue;
    std::string digits = t.local().substr(stem.size());
    if (digits.empty() || digits.size() > 9 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      continue;
    }
    next = std::max<std::size_t>(next, std::stoul(digits) + 1);
  }
  return next;
}

Term quality_term(const std::optional<Term>& q) {
  return q ? *q : Term::string_literal(std::string(kPartPresence));
}

std::string lag_json(const Rational& r) {
  std::string s = format_rational(r);
  return s.find('/') == std::string::npos ? s : "\"" + s + "\"";
}

}  // namespace

TwinningRateMeasure twinning_rate(const std::vector<SyncLogRecord>& log, const Term& twin,
                                  const TimeInterval& window) {
  if (!window.bounded() || !(window.start() < *window.end())) {
    throw DegenerateWindow("twinning-rate window " + window.str() +
                           " must be bounded with start < end");
  }
  std::size_t count = 0;
  for (const auto& r : log) {
    if (r.kind == RecordKind::Update && r.twin == twin && r.t >= window.start() &&
        r.t < *window.end()) {
      ++count;
    }
  }
  Rational width = *window.end() - window.start();
  return {twin, window, count, Rational(static_cast<std::int64_t>(count)) / width};
}

CoverageItem coverage_key(const SyncLogRecord& r) {
  if (r.kind == RecordKind::ChangePart) return {r.entity, std::nullopt};
  return {r.entity, r.quality_type};
}

SyncReport check_propagation(const std::vector<SyncLogRecord>& log, const Graph& graph,
                             const Term& twin, const Partition& partition,
                             const Rational& max_lag) {
  require_dti(compute_closure(graph, {}, false).graph, twin);
  const Coverage scope = coverage(partition, graph);
  const auto records = sorted(log);

  struct Queue {
    std::vector<const SyncLogRecord*> updates;
    std::size_t next = 0;
  };
  std::map<CoverageItem, Queue> queues;
  for (const auto& r : records) {
    if (r.kind == RecordKind::Update && r.twin == twin) queues[coverage_key(r)].updates.push_back(&r);
  }

  SyncReport report;
  for (const auto& r : records) {
    if (r.kind == RecordKind::Signal) {
      report.signals.push_back(r);
      continue;
    }
    if (r.kind == RecordKind::Update) continue;
    CoverageItem key = coverage_key(r);
    if (!scope.contains(key)) {
      report.out_of_scope.push_back(r);
      continue;
    }
    auto it = queues.find(key);
    if (it != queues.end()) {
      Queue& q = it->second;
      while (q.next < q.updates.size() && q.updates[q.next]->t < r.t) ++q.next;
      if (q.next < q.updates.size() && q.updates[q.next]->t <= r.t + max_lag) {
        const SyncLogRecord& u = *q.updates[q.next++];
        Rational lag = u.t - r.t;
        report.max_observed_lag = std::max(report.max_observed_lag, lag);
        report.propagated.push_back({r, u, lag});
        continue;
      }
    }
    report.missed.push_back(r);
  }
  return report;
}

Graph apply_updates(const Graph& graph, const std::vector<SyncLogRecord>& log, const Term& twin) {
  require_dti(compute_closure(graph, {}, false).graph, twin);
  Graph out = graph;
  std::vector<Term> bearers;
  for (const auto& a : graph.find(twin, genericallyDependsOn(), std::nullopt)) {
    if (graph.has_type(a.object, InformationBearingEntity())) bearers.push_back(a.object);
  }
  std::size_t index = next_index(graph, "desc");

  for (const auto& r : sorted(log)) {
    if (r.kind != RecordKind::Update || r.twin != twin) continue;
    const Term quality = quality_term(r.quality_type);

    for (const auto& part : out.find(twin, hasContinuantPart(), std::nullopt)) {
      if (!part.interval || part.interval->bounded()) continue;
      const Term& d = part.object;
      if (out.find(d, describes(), r.entity).empty() ||
          out.find(d, recordsQualityType(), quality).empty()) {
        continue;
      }
      Assertion retired = part;
      retired.interval = TimeInterval(part.interval->start(), r.t);
      out.remove(part);
      out.add(retired);
    }

    Term d = Term::name("gen", "desc" + std::to_string(index++));
    out.add({d, type_of(), DescriptiveICE(), std::nullopt, {}});
    out.add({twin, hasContinuantPart(), d, TimeInterval::unbounded_from(r.t), {}});
    out.add({d, describes(), r.entity, std::nullopt, {}});
    out.add({d, recordsQualityType(), quality, std::nullopt, {}});
    out.add({d, recordsValue(), Term::string_literal(r.value), std::nullopt, {}});
    for (const auto& b : bearers) out.add({d, genericallyDependsOn(), b, std::nullopt, {}});
  }
  return out;
}

Graph materialize_changes(const Graph& graph, const std::vector<SyncLogRecord>& log) {
  Graph out = graph;
  std::size_t index = next_index(graph, "change");
  for (const auto& r : sorted(log)) {
    if (r.kind != RecordKind::ChangeQuality && r.kind != RecordKind::ChangePart) continue;
    Term c = Term::name("gen", "change" + std::to_string(index++));
    TimeInterval at(r.t, r.t);
    out.add({r.entity, participatesIn(), c, std::nullopt, {}});
    if (r.kind == RecordKind::ChangeQuality) {
      out.add({c, type_of(), QualityChange(), at, {}});
      out.add({c, affectsQualityType(), quality_term(r.quality_type), std::nullopt, {}});
      out.add({c, oldValue(), Term::string_literal(r.old_value), std::nullopt, {}});
      out.add({c, newValue(), Term::string_literal(r.new_value), std::nullopt, {}});
    } else {
      out.add({c, type_of(), PartReplacementChange(), at, {}});
      out.add({c, removedPart(), r.removed_part, std::nullopt, {}});
      out.add({c, addedPart(), r.added_part, std::nullopt, {}});
    }
  }
  return out;
}

TimeInterval lifecycle_interval(const Graph& graph, const std::vector<SyncLogRecord>& log,
                                const Term& twin) {
  const Graph closed = compute_closure(graph, {}, false).graph;
  require_dti(closed, twin);
  std::set<Term> counterparts;
  for (const auto& a : closed.find(twin, represents(), std::nullopt)) {
    if (closed.has_type(a.object, MaterialEntity())) counterparts.insert(a.object);
  }

  std::optional<TimeInterval> hull;
  auto include = [&](const TimeInterval& i) { hull = hull ? hull->hull(i) : i; };

  for (const auto& p : closed.find(twin, participatesIn(), std::nullopt)) {
    const Term& s = p.object;
    if (!closed.has_type(s, SynchronizingProcess())) continue;
    bool shared = std::any_of(counterparts.begin(), counterparts.end(), [&](const Term& y) {
      return !closed.find(y, participatesIn(), s).empty();
    });
    if (!shared) continue;
    std::optional<TimeInterval> extent;
    for (const auto& a : closed.find(s, type_of(), std::nullopt)) {
      if (a.interval && closed.class_ancestors(a.object).contains(SynchronizingProcess())) {
        extent = extent ? extent->hull(*a.interval) : *a.interval;
      }
    }
    include(extent.value_or(TimeInterval::unbounded_from(0)));
  }

  for (const auto& r : log) {
    bool both = false;
    if (r.kind == RecordKind::Update) both = r.twin == twin && counterparts.contains(r.entity);
    if (r.kind == RecordKind::Signal) {
      both = (r.source == twin && counterparts.contains(r.target)) ||
             (r.target == twin && counterparts.contains(r.source));
    }
    if (both) include(TimeInterval(r.t, r.t));
  }
  if (!hull) {
    throw NoSharedProcesses(twin.str() +
                            " shares no synchronizing process or log record with a counterpart");
  }
  return *hull;
}

std::string format_report(const SyncReport& report,
                          const std::optional<TwinningRateMeasure>& rate) {
  std::ostringstream out;
  auto key = [](const SyncLogRecord& r) { return coverage_key(r).str(); };
  out << "propagated: " << report.propagated.size() << "\n";
  for (const auto& p : report.propagated) {
    out << "  t=" << format_rational(p.change.t) << " " << key(p.change) << " -> update t="
        << format_rational(p.update.t) << " lag " << format_rational(p.lag) << "\n";
  }
  out << "missed: " << report.missed.size() << "\n";
  for (const auto& r : report.missed) {
    out << "  t=" << format_rational(r.t) << " " << key(r) << "\n";
  }
  out << "out of scope: " << report.out_of_scope.size() << "\n";
  for (const auto& r : report.out_of_scope) {
    out << "  t=" << format_rational(r.t) << " " << key(r) << "\n";
  }
  out << "signals: " << report.signals.size() << "\n";
  out << "max observed lag: " << format_rational(report.max_observed_lag) << "\n";
  if (rate) {
    out << "twinning rate: " << rate->twin.str() << " " << rate->update_count << " updates in ["
        << format_rational(rate->window.start()) << "," << format_rational(*rate->window.end())
        << ") = " << format_rational(rate->rate) << " per second\n";
  }
  return out.str();
}

std::string format_report_jsonl(const SyncReport& report) {
  struct Line {
    const SyncLogRecord* record;
    std::vector<std::pair<std::string, std::string>> extra;
  };
  std::vector<Line> lines;
  for (const auto& p : report.propagated) {
    lines.push_back({&p.change,
                     {{"verdict", "\"propagated\""},
                      {"updateT", lag_json(p.update.t)},
                      {"lag", lag_json(p.lag)}}});
  }
  for (const auto& r : report.missed) lines.push_back({&r, {{"verdict", "\"missed\""}}});
  for (const auto& r : report.out_of_scope) lines.push_back({&r, {{"verdict", "\"out-of-scope\""}}});
  for (const auto& r : report.signals) lines.push_back({&r, {{"verdict", "\"signal\""}}});
  std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return std::tie(a.record->t, a.record->line) < std::tie(b.record->t, b.record->line);
  });
  std::string out;
  for (const auto& l : lines) out += format_record(*l.record, l.extra) + "\n";
  return out;
}

}  // namespace dtkg
