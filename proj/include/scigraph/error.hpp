#pragma once

#include <stdexcept>
#include <string>

namespace scigraph {

/// Every failure the engine can signal, one code per contract violation.
enum class Errc {
  // graph store
  InvalidLabel,
  InvalidRelType,
  MissingNameProperty,
  NonFiniteFloat,
  UnknownNode,
  IncompatibleEndpoints,
  CitesSelfLoop,
  GraphFrozen,
  TypeMismatch,
  // similarity
  InvalidThreshold,
  // indicators
  NotAnArticle,
  NotAJournal,
  NoArticles,
  SelfExceedsTotal,
  // internationality
  DimensionMismatch,
  NegativeInput,
  NegativeElasticity,
  NonPositiveScale,
  ZeroInput,
  // query engine
  SyntaxError,
  UndeclaredVariable,
  // chart export
  UnknownColumn,
  NonIntegerX,
  NonNumericColumn,
  EmptyTable,
  // cli / snapshot
  JournalNotFound,
  SnapshotFormat,
  IoError,
};

const char* errc_name(Errc code);

/// Exception carrying a machine-checkable code plus a human message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Query syntax error with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& message)
      : Error(Errc::SyntaxError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace scigraph
