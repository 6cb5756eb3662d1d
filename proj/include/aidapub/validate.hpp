#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aidapub/rules.hpp"

namespace aidapub {

/// Quality categories. Inaccurate is a human curation judgment only;
/// validate() never produces it.
enum class Verdict { Perfect, MinorIssue, NotAida, Inaccurate };

std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view name);

struct ValidationReport {
  Verdict verdict = Verdict::Perfect;
  std::set<Violation> violations;
  std::vector<std::string> minor_issues;
  /// Every rule that matched, in rule-set order (built-in checks first).
  std::vector<std::string> matched_rules;
  /// The first matched rule carrying a violation; set iff verdict is NotAida.
  std::optional<std::string> rejecting_rule;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Ids of the structural checks applied before the rule set. They keep every
/// Perfect/MinorIssue text constructible as an AidaSentence (after trimming).
namespace builtin_rule {
inline constexpr std::string_view kEmpty = "builtin-empty";
inline constexpr std::string_view kEncoding = "builtin-encoding";
inline constexpr std::string_view kControl = "builtin-control-character";
inline constexpr std::string_view kLength = "builtin-length";
inline constexpr std::string_view kWhitespace = "builtin-surrounding-whitespace";
inline constexpr std::string_view kWellFormed = "builtin-well-formed";
}  // namespace builtin_rule

/// Heuristic AIDA check. Total and deterministic; text is NFC-normalized
/// before matching.
ValidationReport validate(std::string_view text, const RuleSet& rules);

}  // namespace aidapub
