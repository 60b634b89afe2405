#include "dtkg/term.hpp"

#include <cctype>

#include "dtkg/errors.hpp"

namespace dtkg {

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
}

}  // namespace

bool is_valid_prefix(std::string_view prefix) {
  if (prefix.empty()) return true;
  if (!is_name_start(prefix.front())) return false;
  for (char c : prefix) {
    if (!is_name_char(c)) return false;
  }
  return true;
}

bool is_valid_local(std::string_view local) {
  if (local.empty() || local.back() == '.') return false;
  if (!is_name_char(local.front()) || local.front() == '-') return false;
  for (char c : local) {
    if (!is_name_char(c) && c != '.') return false;
  }
  return true;
}

std::string quote_string(std::string_view value) {
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

Term::Term(Kind kind, std::string prefix, std::string local)
    : kind_(kind), prefix_(std::move(prefix)), local_(std::move(local)) {
  key_ = kind_ == Kind::Name ? prefix_ + ":" + local_ : local_;
}

Term Term::name(std::string_view prefix, std::string_view local) {
  if (!is_valid_prefix(prefix) || !is_valid_local(local)) {
    throw InvalidTerm("invalid term name '" + std::string(prefix) + ":" +
                      std::string(local) + "'");
  }
  return Term(Kind::Name, std::string(prefix), std::string(local));
}

Term Term::parse_qname(std::string_view qname) {
  auto colon = qname.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidTerm("expected prefix:local, got '" + std::string(qname) + "'");
  }
  return name(qname.substr(0, colon), qname.substr(colon + 1));
}

Term Term::variable(std::string_view name) {
  if (!is_valid_local(name)) {
    throw InvalidTerm("invalid variable name '" + std::string(name) + "'");
  }
  return Term(Kind::Variable, "", std::string(name));
}

Term Term::string_literal(std::string_view value) {
  return Term(Kind::String, "", std::string(value));
}

Term Term::number(const Rational& value) {
  return Term(Kind::Number, "", format_rational(value));
}

std::string Term::str() const {
  switch (kind_) {
    case Kind::Name: return key_;
    case Kind::Variable: return "?" + local_;
    case Kind::String: return quote_string(local_);
    case Kind::Number: return local_;
  }
  return key_;
}

}  // namespace dtkg
