#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtkg {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DTKG_DEFINE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

// kg-core
DTKG_DEFINE_ERROR(InvalidTerm);
DTKG_DEFINE_ERROR(CycleError);
DTKG_DEFINE_ERROR(DanglingReference);
DTKG_DEFINE_ERROR(SchemaConflict);
DTKG_DEFINE_ERROR(UnknownPredicate);
DTKG_DEFINE_ERROR(MalformedInterval);
DTKG_DEFINE_ERROR(UnknownClass);
DTKG_DEFINE_ERROR(UnknownIndividual);

// parser
DTKG_DEFINE_ERROR(UnknownKind);
DTKG_DEFINE_ERROR(MissingField);

// reasoner
DTKG_DEFINE_ERROR(DomainRangeViolation);
DTKG_DEFINE_ERROR(NotDerivable);
DTKG_DEFINE_ERROR(MalformedSpec);

// granularity
DTKG_DEFINE_ERROR(NotMaterialEntity);
DTKG_DEFINE_ERROR(NotAProperPart);
DTKG_DEFINE_ERROR(UnknownCell);
DTKG_DEFINE_ERROR(DuplicateSiblingTarget);
DTKG_DEFINE_ERROR(StalePartition);
DTKG_DEFINE_ERROR(MalformedPartition);

// sync
DTKG_DEFINE_ERROR(DegenerateWindow);
DTKG_DEFINE_ERROR(NotADTI);
DTKG_DEFINE_ERROR(NoSharedProcesses);

#undef DTKG_DEFINE_ERROR

// Positioned parse failure. Line and column are 1-based byte positions.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UndeclaredPrefix : public SyntaxError {
 public:
  UndeclaredPrefix(std::size_t line, std::size_t column, std::string name)
      : SyntaxError(line, column, "undeclared prefix '" + name + ":'"),
        name_(std::move(name)) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace dtkg
