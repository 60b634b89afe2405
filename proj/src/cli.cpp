#include "dtkg/cli.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "dtkg/arrangement.hpp"
#include "dtkg/errors.hpp"
#include "dtkg/partition.hpp"
#include "dtkg/reasoner.hpp"
#include "dtkg/schema.hpp"
#include "dtkg/sync.hpp"
#include "dtkg/synclog.hpp"
#include "dtkg/turtle.hpp"

namespace dtkg {

namespace {

// Bad arguments, unreadable files and unparsable inputs: exit status 2.
class InputFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFailure(path + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

template <typename Parse>
auto load(const std::string& path, Parse parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const Error& e) {
    throw InputFailure(path + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw InputFailure(path + ": cannot write file");
}

Term parse_term_arg(const std::string& text) {
  if (text == "a") return type_of();
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    return Term::string_literal(text.substr(1, text.size() - 2));
  }
  if (auto r = parse_rational(text)) return Term::number(*r);
  try {
    return Term::parse_qname(text);
  } catch (const InvalidTerm& e) {
    throw InputFailure("'" + text + "' is not a term: " + e.what());
  }
}

TimeInterval parse_window(const std::string& text) {
  auto comma = text.find(',');
  std::optional<Rational> a, b;
  if (comma != std::string::npos) {
    a = parse_rational(text.substr(0, comma));
    b = parse_rational(text.substr(comma + 1));
  }
  if (!a || !b || !(*a < *b)) {
    throw InputFailure("--window expects start,end with start < end, got '" + text + "'");
  }
  return TimeInterval(*a, *b);
}

struct ReasoningFlags {
  bool lenient = false;
  std::vector<std::string> arrangements;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--lenient", lenient, "Infer types from relation domains/ranges");
    cmd->add_option("--arrangement", arrangements, "Arrangement spec file (.spec.ttl)");
  }

  ReasonerOptions options(const Graph& schema) const {
    ReasonerOptions opts;
    opts.mode = lenient ? DomainRangeMode::Lenient : DomainRangeMode::Strict;
    for (const auto& path : arrangements) {
      ArrangementSpec spec =
          load(path, [&](const std::string& t) { return parse_arrangement(t, schema); });
      opts.arrangements[spec.id] = std::move(spec);
    }
    return opts;
  }
};

Graph load_graph_file(const std::string& path) {
  return load(path, [](const std::string& t) { return parse_graph(t); });
}

int cmd_validate(const std::string& path, const ReasoningFlags& flags, bool strict_warnings,
                 std::ostream& out) {
  Graph graph = load_graph_file(path);
  ValidationReport report = validate(graph, flags.options(graph));
  for (const auto& v : report.violations) {
    out << v.constraint << " " << (v.severity == Severity::Error ? "error" : "warning") << " "
        << v.focus.str() << ": " << v.message << "\n";
  }
  out << report.errors() << " errors, " << report.warnings() << " warnings\n";
  bool failed = report.errors() > 0 || (strict_warnings && report.warnings() > 0);
  return failed ? kExitFindings : kExitOk;
}

int cmd_infer(const std::string& path, const ReasoningFlags& flags, const std::string& output,
              std::ostream& out) {
  Graph graph = load_graph_file(path);
  Graph closed = infer_closure(graph, flags.options(graph));
  SerializeOptions opts;
  opts.schema = SerializeOptions::Schema::NonBuiltin;
  opts.annotate_provenance = true;
  write_output(output, serialize_document(closed, opts), out);
  return kExitOk;
}

int cmd_explain(const std::string& path, const std::vector<std::string>& triple,
                const ReasoningFlags& flags, std::ostream& out) {
  Graph graph = load_graph_file(path);
  Assertion target{parse_term_arg(triple[0]), parse_term_arg(triple[1]),
                   parse_term_arg(triple[2]), std::nullopt, {}};
  out << explain(graph, target, flags.options(graph)).str();
  return kExitOk;
}

void print_coverage(const std::string& label, const Coverage& c, std::ostream& out) {
  out << label << " (" << c.size() << " items)\n";
  for (const auto& item : c) out << "  " << item.str() << "\n";
}

int cmd_fidelity(const std::string& graph_path, const std::string& a_path,
                 const std::string& b_path, std::ostream& out) {
  Graph graph = load_graph_file(graph_path);
  auto load_part = [&](const std::string& p) {
    return load(p, [&](const std::string& t) {
      Partition part = parse_partition(t, graph_path);
      check_partition(part, graph);
      return part;
    });
  };
  Partition a = load_part(a_path);
  Partition b = load_part(b_path);
  print_coverage("a: " + a_path, coverage(a, graph), out);
  print_coverage("b: " + b_path, coverage(b, graph), out);
  out << "verdict: " << order_name(compare_fidelity(a, b, graph)) << "\n";
  return kExitOk;
}

struct SyncArgs {
  std::string graph;
  std::string log;
  std::string twin;
  std::string partition;
  std::string max_lag = "1.0";
  std::string window;
  bool jsonl = false;
};

int cmd_sync_report(const SyncArgs& args, std::ostream& out, std::ostream& err) {
  Graph graph = load_graph_file(args.graph);
  std::vector<std::string> warnings;
  auto log = load(args.log, [&](const std::string& t) { return parse_sync_log(t, &warnings); });
  for (const auto& w : warnings) err << args.log << ": warning: " << w << "\n";
  Partition partition = load(args.partition, [&](const std::string& t) {
    Partition p = parse_partition(t, args.graph);
    check_partition(p, graph);
    return p;
  });
  Term twin = parse_term_arg(args.twin);
  auto max_lag = parse_rational(args.max_lag);
  if (!max_lag || *max_lag < 0) throw InputFailure("--max-lag expects a non-negative number");
  std::optional<TwinningRateMeasure> rate;
  if (!args.window.empty()) rate = twinning_rate(log, twin, parse_window(args.window));

  SyncReport report = check_propagation(log, graph, twin, partition, *max_lag);
  out << (args.jsonl ? format_report_jsonl(report) : format_report(report, rate));
  return report.missed.empty() ? kExitOk : kExitFindings;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Digital twin knowledge graph tool", "dtkg"};
  app.require_subcommand(1);

  ReasoningFlags flags;
  std::string graph_path;
  std::string output;

  auto* validate_cmd = app.add_subcommand("validate", "Check a graph against the constraints");
  bool strict_warnings = false;
  validate_cmd->add_option("graph", graph_path, "Graph file (.dto.ttl)")->required();
  validate_cmd->add_flag("--strict-warnings", strict_warnings, "Warnings also fail");
  flags.attach(validate_cmd);

  auto* infer_cmd = app.add_subcommand("infer", "Print the deductive closure");
  infer_cmd->add_option("graph", graph_path, "Graph file (.dto.ttl)")->required();
  infer_cmd->add_option("-o,--output", output, "Write to file instead of stdout");
  flags.attach(infer_cmd);

  auto* explain_cmd = app.add_subcommand("explain", "Show a derivation tree");
  std::vector<std::string> triple;
  explain_cmd->add_option("graph", graph_path, "Graph file (.dto.ttl)")->required();
  explain_cmd->add_option("triple", triple, "Subject, predicate, object")->required()->expected(3);
  flags.attach(explain_cmd);

  auto* fidelity_cmd = app.add_subcommand("fidelity", "Compare two partitions by coverage");
  std::string part_a, part_b;
  fidelity_cmd->add_option("graph", graph_path, "Graph file (.dto.ttl)")->required();
  fidelity_cmd->add_option("a", part_a, "First partition (.part)")->required();
  fidelity_cmd->add_option("b", part_b, "Second partition (.part)")->required();

  auto* sync_cmd = app.add_subcommand("sync-report", "Check change propagation in a sync log");
  SyncArgs sync;
  sync_cmd->add_option("graph", sync.graph, "Graph file (.dto.ttl)")->required();
  sync_cmd->add_option("log", sync.log, "Sync log (.synclog)")->required();
  sync_cmd->add_option("--twin", sync.twin, "Twin individual")->required();
  sync_cmd->add_option("--partition", sync.partition, "Partition file (.part)")->required();
  sync_cmd->add_option("--max-lag", sync.max_lag, "Seconds an update may trail its change");
  sync_cmd->add_option("--window", sync.window, "Twinning-rate window start,end");
  sync_cmd->add_flag("--jsonl", sync.jsonl, "One JSON line per record with a verdict");

  auto* export_cmd = app.add_subcommand("export-schema", "Print the built-in schema");
  export_cmd->add_option("-o,--output", output, "Write to file instead of stdout");

  std::vector<std::string> argv_storage{"dtkg"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "dtkg: " << e.what() << "\nRun 'dtkg --help' for usage.\n";
    return kExitUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(graph_path, flags, strict_warnings, out);
    if (*infer_cmd) return cmd_infer(graph_path, flags, output, out);
    if (*explain_cmd) return cmd_explain(graph_path, triple, flags, out);
    if (*fidelity_cmd) return cmd_fidelity(graph_path, part_a, part_b, out);
    if (*sync_cmd) return cmd_sync_report(sync, out, err);
    if (*export_cmd) {
      write_output(output, serialize_document(builtin_schema()), out);
      return kExitOk;
    }
  } catch (const InputFailure& e) {
    err << "dtkg: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "dtkg: error: " << e.what() << "\n";
    return kExitFindings;
  }
  return kExitUsage;
}

}  // namespace dtkg
