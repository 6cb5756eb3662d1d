#include "aidapub/error.hpp"

namespace aidapub {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidSentence: return "InvalidSentence";
    case Errc::BadPrefix: return "BadPrefix";
    case Errc::MalformedEscape: return "MalformedEscape";
    case Errc::DecodedTextNotAida: return "DecodedTextNotAida";
    case Errc::RuleSyntax: return "RuleSyntax";
    case Errc::AlreadyFormalized: return "AlreadyFormalized";
    case Errc::CycleIntroduced: return "CycleIntroduced";
    case Errc::DanglingGraphRef: return "DanglingGraphRef";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::StructureError: return "StructureError";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::CorpusTooSmall: return "CorpusTooSmall";
    case Errc::StructureInvalid: return "StructureInvalid";
    case Errc::ConflictingContentForUri: return "ConflictingContentForUri";
    case Errc::MalformedUri: return "MalformedUri";
    case Errc::UnknownAgent: return "UnknownAgent";
    case Errc::DuplicateAgent: return "DuplicateAgent";
    case Errc::SelfLink: return "SelfLink";
    case Errc::NotFound: return "NotFound";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

SyntaxError::SyntaxError(const std::string& message, std::size_t line,
                         std::size_t column)
    : Error(Errc::SyntaxError, std::to_string(line) + ":" +
                                   std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace aidapub
