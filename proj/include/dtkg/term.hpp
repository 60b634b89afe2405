#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "dtkg/time.hpp"

namespace dtkg {

// A name in the graph (prefix:local), a pattern variable (?x), or a literal.
// Identity and order are by kind, then by the qualified text.
class Term {
 public:
  enum class Kind { Name = 0, Variable = 1, String = 2, Number = 3 };

  Term() = default;

  // Throws InvalidTerm if the parts contain whitespace or local is empty.
  static Term name(std::string_view prefix, std::string_view local);
  // "ex:dt1" -> Term::name("ex", "dt1").
  static Term parse_qname(std::string_view qname);
  static Term variable(std::string_view name);
  static Term string_literal(std::string_view value);
  static Term number(const Rational& value);

  Kind kind() const { return kind_; }
  bool is_name() const { return kind_ == Kind::Name; }
  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_literal() const {
    return kind_ == Kind::String || kind_ == Kind::Number;
  }

  const std::string& prefix() const { return prefix_; }
  // Local part of a name, variable name, string value or number text.
  const std::string& local() const { return local_; }

  // Text form usable in the graph format: ex:dt1, ?x, "25C" (escaped), 0.5.
  std::string str() const;

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind_ == b.kind_ && a.key_ == b.key_;
  }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    return a.key_.compare(b.key_) <=> 0;
  }

 private:
  Term(Kind kind, std::string prefix, std::string local);

  Kind kind_ = Kind::Name;
  std::string prefix_;
  std::string local_;
  std::string key_;
};

// Grammar helpers shared by the parser and Term validation.
bool is_valid_prefix(std::string_view prefix);
bool is_valid_local(std::string_view local);

// Quotes and escapes a string literal value.
std::string quote_string(std::string_view value);

}  // namespace dtkg
