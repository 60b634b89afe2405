#include "dtkg/turtle.hpp"

#include <algorithm>
#include <cctype>

#include "dtkg/errors.hpp"
#include "dtkg/schema.hpp"

namespace dtkg {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
}

const Graph& standard_prefixes() {
  static const Graph g;
  return g;
}

class TurtleParser {
 public:
  TurtleParser(std::string_view text, const ParseOptions& options)
      : text_(text), options_(options) {
    doc_.prefixes = standard_prefixes().prefixes();
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (text_[i] == '\n') newlines_.push_back(i);
    }
  }

  Document parse() {
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (starts_with("@prefix")) {
        parse_prefix();
      } else {
        parse_statement();
      }
    }
    return std::move(doc_);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  bool starts_with(std::string_view s) const {
    return text_.substr(pos_).substr(0, s.size()) == s;
  }

  std::pair<std::size_t, std::size_t> line_col(std::size_t at) const {
    at = std::min(at, text_.size());
    auto before = std::lower_bound(newlines_.begin(), newlines_.end(), at);
    std::size_t line = static_cast<std::size_t>(before - newlines_.begin()) + 1;
    std::size_t line_start = before == newlines_.begin() ? 0 : *(before - 1) + 1;
    return {line, at - line_start + 1};
  }

  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    auto [line, col] = line_col(at);
    throw SyntaxError(line, col, what);
  }
  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }

  std::string describe_here() const {
    if (at_end()) return "end of input";
    char c = peek();
    if (std::isprint(static_cast<unsigned char>(c))) return std::string("'") + c + "'";
    return "byte " + std::to_string(static_cast<unsigned char>(c));
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (is_space(c)) {
        ++pos_;
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c, const char* context) {
    skip_ws();
    if (peek() != c || at_end()) {
      fail(std::string("expected '") + c + "' " + context + ", found " + describe_here());
    }
    ++pos_;
  }

  std::string read_prefix_name() {
    std::size_t start = pos_;
    if (is_alpha(peek())) {
      while (!at_end() && is_name_char(peek())) ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string read_local_name() {
    std::size_t start = pos_;
    if (!at_end() && is_name_char(peek()) && peek() != '-') {
      while (!at_end() && (is_name_char(peek()) || peek() == '.')) ++pos_;
      // A trailing '.' terminates the statement rather than the name.
      while (pos_ > start && text_[pos_ - 1] == '.') --pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void parse_prefix() {
    pos_ += std::string_view("@prefix").size();
    if (at_end() || !is_space(peek())) fail("expected whitespace after @prefix");
    skip_ws();
    std::size_t name_at = pos_;
    std::string prefix = read_prefix_name();
    if (peek() != ':' || at_end()) {
      fail("expected prefix name ending in ':', found " + describe_here());
    }
    ++pos_;
    skip_ws();
    if (peek() != '<' || at_end()) fail("expected <IRI>, found " + describe_here());
    std::size_t iri_start = ++pos_;
    while (!at_end() && peek() != '>') {
      if (is_space(peek())) fail("whitespace inside IRI");
      ++pos_;
    }
    if (at_end()) fail("unterminated IRI", iri_start - 1);
    std::string iri(text_.substr(iri_start, pos_ - iri_start));
    ++pos_;
    expect('.', "after @prefix declaration");
    auto [it, inserted] = doc_.prefixes.emplace(prefix, iri);
    if (!inserted && it->second != iri) {
      fail("prefix '" + prefix + ":' is already bound to <" + it->second + ">", name_at);
    }
  }

  enum class Slot { Subject, Predicate, Object };

  Term parse_term(Slot slot) {
    skip_ws();
    if (at_end()) fail("unexpected end of input, expected a term");
    std::size_t start = pos_;
    char c = peek();
    if (c == '?') {
      if (!options_.allow_variables || slot == Slot::Predicate) {
        fail("variables are not allowed here");
      }
      ++pos_;
      std::string name = read_local_name();
      if (name.empty()) fail("expected variable name after '?'");
      return Term::variable(name);
    }
    if (c == '"') {
      if (slot != Slot::Object) fail("string literal only allowed as object");
      return Term::string_literal(read_string());
    }
    if (is_digit(c) || c == '-') {
      if (slot != Slot::Object) fail("number only allowed as object");
      return Term::number(read_number(false));
    }
    if (slot == Slot::Predicate && c == 'a' &&
        (pos_ + 1 >= text_.size() || is_space(peek(1)))) {
      ++pos_;
      return type_of();
    }
    if (is_alpha(c) || c == ':') {
      std::string prefix = read_prefix_name();
      if (peek() != ':' || at_end()) {
        fail("expected prefixed name (prefix:local), found " + describe_here(), start);
      }
      ++pos_;
      std::string local = read_local_name();
      if (local.empty()) fail("expected local name after '" + prefix + ":'");
      if (!doc_.prefixes.contains(prefix)) {
        auto [line, col] = line_col(start);
        throw UndeclaredPrefix(line, col, prefix);
      }
      return Term::name(prefix, local);
    }
    fail("unexpected " + describe_here());
  }

  std::string read_string() {
    std::size_t open = pos_++;
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated string literal", open);
      char c = text_[pos_];
      if (c == '"') {
        ++pos_;
        return value;
      }
      if (c == '\n') fail("newline inside string literal");
      if (c == '\\') {
        char e = peek(1);
        switch (e) {
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case 'r': value += '\r'; break;
          default: fail("invalid escape sequence");
        }
        pos_ += 2;
        continue;
      }
      value += c;
      ++pos_;
    }
  }

  Rational read_number(bool allow_fraction) {
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    if (!is_digit(peek())) fail("expected digits", pos_);
    while (!at_end() && is_digit(peek())) ++pos_;
    if (peek() == '.' && is_digit(peek(1))) {
      ++pos_;
      while (!at_end() && is_digit(peek())) ++pos_;
    } else if (allow_fraction && peek() == '/' && is_digit(peek(1))) {
      ++pos_;
      while (!at_end() && is_digit(peek())) ++pos_;
    }
    auto value = parse_rational(text_.substr(start, pos_ - start));
    if (!value) fail("number out of range or malformed", start);
    return *value;
  }

  std::optional<TimeInterval> parse_interval() {
    skip_ws();
    if (!(peek() == '@' && peek(1) == '[')) return std::nullopt;
    std::size_t at = pos_;
    pos_ += 2;
    skip_ws();
    Rational start = read_number(true);
    expect(',', "in interval");
    skip_ws();
    std::optional<Rational> end;
    if (peek() != ']') end = read_number(true);
    expect(']', "closing interval");
    if (end && *end < start) fail("interval end precedes start", at);
    return TimeInterval(start, end);
  }

  void parse_statement() {
    Term subject = parse_term(Slot::Subject);
    std::size_t line = line_col(pos_).first;
    while (true) {
      Term predicate = parse_term(Slot::Predicate);
      Term object = parse_term(Slot::Object);
      auto interval = parse_interval();
      doc_.statements.push_back(Statement{subject, predicate, object, interval, line});
      skip_ws();
      if (at_end()) fail("expected ';' or '.' before end of input");
      if (peek() == '.') {
        ++pos_;
        return;
      }
      if (peek() != ';') fail("expected ';' or '.', found " + describe_here());
      while (peek() == ';' && !at_end()) {
        ++pos_;
        skip_ws();
      }
      if (peek() == '.' && !at_end()) {
        ++pos_;
        return;
      }
      line = line_col(pos_).first;
    }
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> newlines_;
  Document doc_;
};

const Term& owl_class() { static const Term t = Term::name("owl", "Class"); return t; }
const Term& owl_object_property() { static const Term t = Term::name("owl", "ObjectProperty"); return t; }
const Term& owl_disjoint_with() { static const Term t = Term::name("owl", "disjointWith"); return t; }
const Term& rdfs_sub_class_of() { static const Term t = Term::name("rdfs", "subClassOf"); return t; }
const Term& rdfs_sub_property_of() { static const Term t = Term::name("rdfs", "subPropertyOf"); return t; }
const Term& rdfs_domain() { static const Term t = Term::name("rdfs", "domain"); return t; }
const Term& rdfs_range() { static const Term t = Term::name("rdfs", "range"); return t; }
const Term& rdfs_comment() { static const Term t = Term::name("rdfs", "comment"); return t; }

bool is_schema_predicate(const Term& p) {
  return p == rdfs_sub_class_of() || p == rdfs_sub_property_of() || p == rdfs_domain() ||
         p == rdfs_range() || p == rdfs_comment() || p == owl_disjoint_with();
}

template <typename E>
[[noreturn]] void rethrow_at(const E& e, std::size_t line) {
  throw E("line " + std::to_string(line) + ": " + e.what());
}

struct PendingRelation {
  std::set<Term> supers;
  std::optional<Term> domain;
  std::optional<Term> range;
};

}  // namespace

Document parse_document(std::string_view text, const ParseOptions& options) {
  return TurtleParser(text, options).parse();
}

Graph load_graph(const Document& doc, Graph base) {
  Graph graph = std::move(base);
  for (const auto& [prefix, iri] : doc.prefixes) graph.declare_prefix(prefix, iri);

  std::map<Term, SchemaClass> classes;
  std::map<Term, PendingRelation> relations;
  std::map<Term, std::string> comments;
  std::vector<DisjointPair> disjoint;
  std::vector<const Statement*> facts;

  auto set_once = [](std::optional<Term>& slot, const Statement& st, const char* what) {
    if (slot && *slot != st.object) {
      throw SchemaConflict("line " + std::to_string(st.line) + ": conflicting " + what +
                           " for " + st.subject.str());
    }
    slot = st.object;
  };

  for (const auto& st : doc.statements) {
    if (st.subject.is_variable() || st.object.is_variable()) {
      throw SyntaxError(st.line, 1, "variables are only allowed in arrangement specs");
    }
    bool schema_statement = is_schema_predicate(st.predicate) ||
                            (st.predicate == type_of() &&
                             (st.object == owl_class() || st.object == owl_object_property()));
    if (!schema_statement) {
      facts.push_back(&st);
      continue;
    }
    if (st.interval) {
      throw SyntaxError(st.line, 1, "schema statements cannot carry an interval");
    }
    const Term& p = st.predicate;
    if (p == type_of() && st.object == owl_class()) {
      classes.try_emplace(st.subject, SchemaClass{st.subject, {}, ""});
    } else if (p == type_of()) {
      relations.try_emplace(st.subject);
    } else if (p == rdfs_sub_class_of()) {
      classes.try_emplace(st.subject, SchemaClass{st.subject, {}, ""})
          .first->second.superclasses.insert(st.object);
    } else if (p == rdfs_sub_property_of()) {
      relations[st.subject].supers.insert(st.object);
    } else if (p == rdfs_domain()) {
      set_once(relations[st.subject].domain, st, "domain");
    } else if (p == rdfs_range()) {
      set_once(relations[st.subject].range, st, "range");
    } else if (p == owl_disjoint_with()) {
      disjoint.emplace_back(st.subject, st.object);
    } else if (p == rdfs_comment()) {
      if (st.object.kind() != Term::Kind::String) {
        throw SyntaxError(st.line, 1, "rdfs:comment expects a string literal");
      }
      comments[st.subject] = st.object.local();
    }
  }

  std::vector<SchemaClass> class_batch;
  for (auto& [id, c] : classes) {
    if (auto it = comments.find(id); it != comments.end()) c.definition = it->second;
    class_batch.push_back(c);
  }
  std::vector<SchemaRelation> relation_batch;
  for (auto& [id, pending] : relations) {
    SchemaRelation r{id, pending.supers, Term{}, Term{}, ""};
    if (auto it = comments.find(id); it != comments.end()) r.definition = it->second;
    const SchemaRelation* existing =
        graph.has_relation(id) ? &graph.relation(id) : nullptr;
    auto fallback = [&](const std::optional<Term>& given, const Term& from_existing) {
      if (given) return *given;
      if (existing) return from_existing;
      return vocab::Entity();
    };
    r.domain = fallback(pending.domain, existing ? existing->domain : Term{});
    r.range = fallback(pending.range, existing ? existing->range : Term{});
    relation_batch.push_back(std::move(r));
  }
  for (const auto& [id, text] : comments) {
    if (!classes.contains(id) && !relations.contains(id)) {
      if (graph.has_class(id)) {
        SchemaClass c = graph.classes().at(id);
        if (c.definition.empty()) c.definition = text;
        class_batch.push_back(std::move(c));
      } else if (!graph.has_relation(id)) {
        throw UnknownPredicate("rdfs:comment on " + id.str() +
                               ", which is neither a class nor a relation");
      }
    }
  }
  graph.extend_schema(class_batch, relation_batch, disjoint);

  for (const Statement* st : facts) {
    try {
      graph.add(Assertion{st->subject, st->predicate, st->object, st->interval, {}});
    } catch (const UnknownPredicate& e) {
      rethrow_at(e, st->line);
    } catch (const UnknownClass& e) {
      rethrow_at(e, st->line);
    } catch (const InvalidTerm& e) {
      rethrow_at(e, st->line);
    }
  }
  return graph;
}

Graph parse_graph(std::string_view text) {
  return load_graph(parse_document(text), builtin_schema());
}

namespace {

struct Line {
  Term predicate;
  std::string object;
  std::string comment;
};

std::string predicate_text(const Term& p) { return p == type_of() ? "a" : p.str(); }

void write_block(std::string& out, const Term& subject, std::vector<Line> lines) {
  std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    return a.object < b.object;
  });
  out += "\n" + subject.str() + " ";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out += "    ";
    out += predicate_text(lines[i].predicate) + " " + lines[i].object;
    out += i + 1 < lines.size() ? " ;" : " .";
    if (!lines[i].comment.empty()) out += "  # " + lines[i].comment;
    out += "\n";
  }
}

}  // namespace

std::string serialize_document(const Graph& graph, const SerializeOptions& options) {
  std::string out;
  for (const auto& [prefix, iri] : graph.prefixes()) {
    out += "@prefix " + prefix + ": <" + iri + "> .\n";
  }

  using Scope = SerializeOptions::Schema;
  if (options.schema != Scope::None) {
    bool all = options.schema == Scope::All;
    std::map<Term, std::vector<Line>> schema_lines;
    for (const auto& [id, c] : graph.classes()) {
      if (!all && is_builtin_class(c)) continue;
      auto& lines = schema_lines[id];
      lines.push_back({type_of(), owl_class().str(), ""});
      if (!c.definition.empty()) lines.push_back({rdfs_comment(), quote_string(c.definition), ""});
      for (const auto& sup : c.superclasses) lines.push_back({rdfs_sub_class_of(), sup.str(), ""});
    }
    for (const auto& [id, r] : graph.relations()) {
      if (!all && is_builtin_relation(r)) continue;
      auto& lines = schema_lines[id];
      lines.push_back({type_of(), owl_object_property().str(), ""});
      if (!r.definition.empty()) lines.push_back({rdfs_comment(), quote_string(r.definition), ""});
      lines.push_back({rdfs_domain(), r.domain.str(), ""});
      lines.push_back({rdfs_range(), r.range.str(), ""});
      for (const auto& sup : r.superrelations) {
        lines.push_back({rdfs_sub_property_of(), sup.str(), ""});
      }
    }
    const auto builtin_pairs = builtin_schema().disjoint_pairs();
    for (const auto& pair : graph.disjoint_pairs()) {
      if (!all && builtin_pairs.contains(pair)) continue;
      schema_lines[pair.first].push_back({owl_disjoint_with(), pair.second.str(), ""});
    }
    for (auto& [subject, lines] : schema_lines) write_block(out, subject, std::move(lines));
  }

  const auto& facts = graph.assertions();
  for (auto it = facts.begin(); it != facts.end();) {
    const Term& subject = it->subject;
    std::vector<Line> lines;
    for (; it != facts.end() && it->subject == subject; ++it) {
      std::string object = it->object.str();
      if (it->interval) object += " @" + it->interval->str();
      lines.push_back({it->predicate, std::move(object),
                       options.annotate_provenance ? it->provenance.rule : ""});
    }
    write_block(out, subject, std::move(lines));
  }
  return out;
}

}  // namespace dtkg
