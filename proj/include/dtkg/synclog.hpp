#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dtkg/term.hpp"
#include "dtkg/time.hpp"

namespace dtkg {

enum class RecordKind { ChangeQuality, ChangePart, Signal, Update };

std::string_view kind_name(RecordKind kind);

// One line of a .synclog file. Which fields are meaningful depends on kind:
//
//   change-quality  entity, quality_type, old_value, new_value
//   change-part     entity, removed_part, added_part
//   signal          source, target
//   update          twin, entity (the "describes" field), quality_type, value
//
// quality_type is empty for the part-presence marker: an update written with
// "qualityType": "PART-PRESENCE" reports a part change rather than a quality.
struct SyncLogRecord {
  Rational t;
  RecordKind kind = RecordKind::Signal;
  Term entity;
  std::optional<Term> quality_type;
  std::string old_value;
  std::string new_value;
  Term removed_part;
  Term added_part;
  Term source;
  Term target;
  Term twin;
  std::string value;
  std::size_t line = 0;  // 1-based line in the parsed text

  friend bool operator==(const SyncLogRecord&, const SyncLogRecord&) = default;
};

inline constexpr std::string_view kPartPresence = "PART-PRESENCE";

// One JSON object per non-blank line. t is a JSON number (or a string such as
// "1/3"); terms are prefixed names like "ex:vehicle1"; values are strings or
// numbers. The result is stable-sorted by t. Unknown fields are skipped and,
// when `warnings` is given, reported there as "line N: ...".
//
// Throws SyntaxError (line, column), UnknownKind, MissingField.
std::vector<SyncLogRecord> parse_sync_log(std::string_view text,
                                          std::vector<std::string>* warnings = nullptr);

// The record as one JSON line, in the input format. `extra` fields (already
// JSON-encoded values) are appended in order.
std::string format_record(const SyncLogRecord& record,
                          const std::vector<std::pair<std::string, std::string>>& extra = {});

}  // namespace dtkg
