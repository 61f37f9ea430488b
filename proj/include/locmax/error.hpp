#pragma once

#include <stdexcept>
#include <string>

namespace locmax {

// Every failure the library reports carries one of these codes so callers and
// tests can match on the code instead of message text.
enum class Errc {
  EmptyRelation,
  ArityOutOfRange,
  TupleOutOfRange,
  ArityMismatch,
  AllPositionsZero,
  DuplicateName,
  TooManyRelations,
  UnknownRelation,
  UnknownVariable,
  EmptyLanguage,
  NotSatisfying,
  TooLarge,
  LanguageMismatch,
  EssentiallyMonotone,
  VerificationFailed,
  RelationMismatch,
  ReservedName,
  WitnessMissing,
  BadArguments,
  Parse,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(Errc::Parse, message + " (line " + std::to_string(line) +
                               ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace locmax
