#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aidapub {

/// The four AIDA criteria, in the order reports list them.
enum class Violation { NotAtomic, NotIndependent, NotDeclarative, NotAbsolute };

std::string_view to_string(Violation v);
std::optional<Violation> parse_violation(std::string_view name);

enum class RuleKind { Exclude, Strip };

/// A compiled Perl-syntax regular expression. Matching is byte-oriented on
/// UTF-8 text; use (?i) in the pattern for case-insensitive rules.
class Pattern {
 public:
  explicit Pattern(std::string source);  // throws Error(RuleSyntax)

  const std::string& source() const noexcept { return source_; }
  bool search(std::string_view text) const;
  /// Length of the match anchored at offset 0, if any.
  std::optional<std::size_t> match_prefix(std::string_view text) const;

 private:
  struct Compiled;
  std::string source_;
  std::shared_ptr<const Compiled> compiled_;
};

struct Rule {
  std::string id;
  RuleKind kind = RuleKind::Exclude;
  /// Exclusion rules without a violation flag a minor issue instead.
  std::optional<Violation> violation;
  Pattern pattern;
};

/// Ordered exclusion and prefix-strip rules. List order is application
/// order; ids are unique across both lists.
class RuleSet {
 public:
  RuleSet() = default;

  /// Parses the tab-separated rule file format:
  ///   <rule-id> TAB <EXCLUDE|STRIP> TAB <violation-or-empty> TAB <pattern>
  /// "#" lines are comments; a "# version: X" comment sets the version.
  static RuleSet parse(std::string_view text, std::string_view source_name = "<rules>");
  static RuleSet load(const std::filesystem::path& path);

  const std::string& version() const noexcept { return version_; }
  const std::vector<Rule>& exclusion_rules() const noexcept { return exclusion_; }
  const std::vector<Rule>& strip_rules() const noexcept { return strip_; }
  const Rule* find(std::string_view id) const;

  /// Serializes back to the file format (comments other than the version
  /// line are not preserved).
  std::string to_text() const;

 private:
  std::string version_ = "unversioned";
  std::vector<Rule> exclusion_;
  std::vector<Rule> strip_;
};

/// The rule set shipped in data/rules/default.tsv.
const RuleSet& default_ruleset();

}  // namespace aidapub
