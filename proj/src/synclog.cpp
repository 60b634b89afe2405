#include "dtkg/synclog.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "json.hpp"

#include "dtkg/errors.hpp"

namespace dtkg {

std::string_view kind_name(RecordKind kind) {
  switch (kind) {
    case RecordKind::ChangeQuality: return "change-quality";
    case RecordKind::ChangePart: return "change-part";
    case RecordKind::Signal: return "signal";
    case RecordKind::Update: return "update";
  }
  return "";
}

namespace {

struct Field {
  enum class Type { String, Number, Other } type = Type::Other;
  std::string text;                // string value, or the number as written
  std::optional<Rational> number;  // exact value for numbers
};

// Collects the top-level members of one JSON object, keeping number text.
class FlatObject : public nlohmann::json_sax<nlohmann::json> {
 public:
  std::map<std::string, Field> fields;
  std::vector<std::string> nested;  // keys whose value is an object or array
  std::optional<std::pair<std::size_t, std::string>> error;  // byte position, message
  bool top_is_object = false;

  bool null() override { return scalar({Field::Type::Other, "null", {}}); }
  bool boolean(bool v) override { return scalar({Field::Type::Other, v ? "true" : "false", {}}); }
  bool number_integer(number_integer_t v) override {
    return scalar({Field::Type::Number, std::to_string(v), Rational(v)});
  }
  bool number_unsigned(number_unsigned_t v) override {
    std::optional<Rational> exact;
    if (v <= static_cast<number_unsigned_t>(INT64_MAX)) exact = Rational(static_cast<std::int64_t>(v));
    return scalar({Field::Type::Number, std::to_string(v), exact});
  }
  bool number_float(number_float_t, const string_t& s) override {
    return scalar({Field::Type::Number, s, parse_rational(s)});
  }
  bool string(string_t& v) override { return scalar({Field::Type::String, v, {}}); }
  bool binary(binary_t&) override { return scalar({}); }

  bool start_object(std::size_t) override {
    if (depth_ == 0) top_is_object = true;
    else if (depth_ == 1) nested.push_back(key_);
    ++depth_;
    return true;
  }
  bool end_object() override {
    --depth_;
    return true;
  }
  bool start_array(std::size_t) override {
    if (depth_ == 1) nested.push_back(key_);
    ++depth_;
    return true;
  }
  bool end_array() override {
    --depth_;
    return true;
  }
  bool key(string_t& k) override {
    if (depth_ == 1) key_ = k;
    return true;
  }
  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    error = {position, ex.what()};
    return false;
  }

 private:
  bool scalar(Field f) {
    if (depth_ == 1) fields[key_] = std::move(f);
    return true;
  }

  int depth_ = 0;
  std::string key_;
};

// Strips nlohmann's "[json.exception.parse_error.101] parse error at ...: " prefix.
std::string short_message(const std::string& what) {
  auto colon = what.rfind(": ");
  return colon == std::string::npos ? what : what.substr(colon + 2);
}

class LineReader {
 public:
  LineReader(std::string_view line, std::size_t number, std::vector<std::string>* warnings)
      : line_(line), number_(number), warnings_(warnings) {}

  SyncLogRecord read() {
    FlatObject sax;
    bool ok = nlohmann::json::sax_parse(line_, &sax);
    if (!ok || sax.error) {
      std::size_t pos = sax.error ? sax.error->first : 1;
      std::size_t col = std::clamp<std::size_t>(pos, 1, line_.size() + 1);
      throw SyntaxError(number_, col, sax.error ? short_message(sax.error->second)
                                                : std::string("malformed JSON"));
    }
    if (!sax.top_is_object) throw SyntaxError(number_, 1, "expected a JSON object");
    fields_ = std::move(sax.fields);
    for (const auto& k : sax.nested) fields_[k] = Field{};

    SyncLogRecord r;
    r.line = number_;
    r.t = time();
    std::string kind = text("kind");
    if (kind == "change-quality") {
      r.kind = RecordKind::ChangeQuality;
      r.entity = term("entity");
      r.quality_type = quality("qualityType");
      r.old_value = value("old");
      r.new_value = value("new");
    } else if (kind == "change-part") {
      r.kind = RecordKind::ChangePart;
      r.entity = term("entity");
      r.removed_part = term("removedPart");
      r.added_part = term("addedPart");
    } else if (kind == "signal") {
      r.kind = RecordKind::Signal;
      r.source = term("source");
      r.target = term("target");
    } else if (kind == "update") {
      r.kind = RecordKind::Update;
      r.twin = term("twin");
      r.entity = term("describes");
      r.quality_type = quality("qualityType");
      r.value = value("value");
    } else {
      throw UnknownKind("line " + std::to_string(number_) + ": unknown record kind '" + kind + "'");
    }
    if (warnings_) {
      for (const auto& [k, f] : fields_) {
        if (!used_.contains(k)) {
          warnings_->push_back("line " + std::to_string(number_) + ": ignoring unknown field '" +
                               k + "'");
        }
      }
    }
    return r;
  }

 private:
  const Field& field(const std::string& name) {
    auto it = fields_.find(name);
    if (it == fields_.end()) {
      throw MissingField("line " + std::to_string(number_) + ": missing field '" + name + "'");
    }
    used_.insert(name);
    return it->second;
  }

  [[noreturn]] void bad(const std::string& name, const std::string& what) {
    throw SyntaxError(number_, column_of(name), "field '" + name + "': " + what);
  }

  // Column of the field's key in the line, or 1.
  std::size_t column_of(const std::string& name) const {
    auto pos = line_.find("\"" + name + "\"");
    return pos == std::string_view::npos ? 1 : pos + 1;
  }

  Rational time() {
    const Field& f = field("t");
    std::optional<Rational> r;
    if (f.type == Field::Type::Number) r = f.number;
    if (f.type == Field::Type::String) r = parse_rational(f.text);
    if (!r) bad("t", "expected an exact decimal or n/d time");
    return *r;
  }

  std::string text(const std::string& name) {
    const Field& f = field(name);
    if (f.type != Field::Type::String) bad(name, "expected a string");
    return f.text;
  }

  std::string value(const std::string& name) {
    const Field& f = field(name);
    if (f.type == Field::Type::Other) bad(name, "expected a string or number");
    return f.text;
  }

  Term term(const std::string& name) {
    std::string s = text(name);
    try {
      return Term::parse_qname(s);
    } catch (const InvalidTerm&) {
      bad(name, "'" + s + "' is not a prefixed name");
    }
  }

  std::optional<Term> quality(const std::string& name) {
    if (text(name) == kPartPresence) return std::nullopt;
    return term(name);
  }

  std::string_view line_;
  std::size_t number_;
  std::vector<std::string>* warnings_;
  std::map<std::string, Field> fields_;
  std::set<std::string> used_{"kind"};
};

std::string json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

}  // namespace

std::vector<SyncLogRecord> parse_sync_log(std::string_view text,
                                          std::vector<std::string>* warnings) {
  std::vector<SyncLogRecord> records;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) {
      records.push_back(LineReader(line, number, warnings).read());
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const SyncLogRecord& a, const SyncLogRecord& b) { return a.t < b.t; });
  return records;
}

std::string format_record(const SyncLogRecord& r,
                          const std::vector<std::pair<std::string, std::string>>& extra) {
  std::vector<std::pair<std::string, std::string>> fields;
  std::string t = format_rational(r.t);
  fields.emplace_back("t", t.find('/') == std::string::npos ? t : json_string(t));
  fields.emplace_back("kind", json_string(kind_name(r.kind)));
  auto quality = [&] {
    return json_string(r.quality_type ? r.quality_type->str() : std::string(kPartPresence));
  };
  switch (r.kind) {
    case RecordKind::ChangeQuality:
      fields.emplace_back("entity", json_string(r.entity.str()));
      fields.emplace_back("qualityType", quality());
      fields.emplace_back("old", json_string(r.old_value));
      fields.emplace_back("new", json_string(r.new_value));
      break;
    case RecordKind::ChangePart:
      fields.emplace_back("entity", json_string(r.entity.str()));
      fields.emplace_back("removedPart", json_string(r.removed_part.str()));
      fields.emplace_back("addedPart", json_string(r.added_part.str()));
      break;
    case RecordKind::Signal:
      fields.emplace_back("source", json_string(r.source.str()));
      fields.emplace_back("target", json_string(r.target.str()));
      break;
    case RecordKind::Update:
      fields.emplace_back("twin", json_string(r.twin.str()));
      fields.emplace_back("describes", json_string(r.entity.str()));
      fields.emplace_back("qualityType", quality());
      fields.emplace_back("value", json_string(r.value));
      break;
  }
  fields.insert(fields.end(), extra.begin(), extra.end());
  std::string out = "{";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ", ";
    out += json_string(fields[i].first) + ": " + fields[i].second;
  }
  return out + "}";
}

}  // namespace dtkg
