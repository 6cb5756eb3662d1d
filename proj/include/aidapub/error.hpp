#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aidapub {

enum class Errc {
  InvalidSentence,
  BadPrefix,
  MalformedEscape,
  DecodedTextNotAida,
  RuleSyntax,
  AlreadyFormalized,
  CycleIntroduced,
  DanglingGraphRef,
  SyntaxError,
  StructureError,
  EmptyCorpus,
  CorpusTooSmall,
  StructureInvalid,
  ConflictingContentForUri,
  MalformedUri,
  UnknownAgent,
  DuplicateAgent,
  SelfLink,
  NotFound,
  InvalidArgument,
  Io,
};

std::string_view to_string(Errc code);

/// Base of every exception thrown by the library. The code is stable and is
/// what the CLI and HTTP layers report to clients.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// A TriG (or rule file) syntax error with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace aidapub
