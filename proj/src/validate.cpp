#include "aidapub/validate.hpp"

#include "aidapub/sentence.hpp"
#include "aidapub/unicode.hpp"

namespace aidapub {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Perfect: return "Perfect";
    case Verdict::MinorIssue: return "MinorIssue";
    case Verdict::NotAida: return "NotAida";
    case Verdict::Inaccurate: return "Inaccurate";
  }
  return "";
}

std::optional<Verdict> parse_verdict(std::string_view name) {
  for (auto v : {Verdict::Perfect, Verdict::MinorIssue, Verdict::NotAida, Verdict::Inaccurate}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

namespace {

void reject(ValidationReport& report, std::string_view rule, Violation v) {
  report.violations.insert(v);
  report.matched_rules.emplace_back(rule);
  if (!report.rejecting_rule) report.rejecting_rule = std::string(rule);
}

void minor(ValidationReport& report, std::string_view rule) {
  report.minor_issues.emplace_back(rule);
  report.matched_rules.emplace_back(rule);
}

}  // namespace

ValidationReport validate(std::string_view raw, const RuleSet& rules) {
  ValidationReport report;

  if (!unicode::is_valid_utf8(raw)) reject(report, builtin_rule::kEncoding, Violation::NotDeclarative);
  const std::string text = unicode::nfc(raw);

  if (unicode::trim(text).empty()) {
    reject(report, builtin_rule::kEmpty, Violation::NotDeclarative);
  } else {
    const auto cps = unicode::codepoints(text);
    bool control = false;
    for (char32_t cp : cps) control = control || unicode::is_control(cp);
    if (control) reject(report, builtin_rule::kControl, Violation::NotDeclarative);
    if (unicode::codepoint_count(unicode::trim(text)) > kMaxSentenceLength) {
      reject(report, builtin_rule::kLength, Violation::NotAtomic);
    }
    if (unicode::is_space(cps.front()) || unicode::is_space(cps.back())) {
      minor(report, builtin_rule::kWhitespace);
    }
  }

  const std::string_view body = unicode::trim(text);
  for (const auto& rule : rules.exclusion_rules()) {
    if (!rule.pattern.search(body)) continue;
    if (rule.violation) {
      reject(report, rule.id, *rule.violation);
    } else {
      minor(report, rule.id);
    }
  }

  // Rule sets may omit the terminal-stop rule; the sentence invariants still hold.
  if (report.violations.empty() && AidaSentence::defect(body)) {
    reject(report, builtin_rule::kWellFormed, Violation::NotDeclarative);
  }

  if (!report.violations.empty()) {
    report.verdict = Verdict::NotAida;
  } else if (!report.minor_issues.empty()) {
    report.verdict = Verdict::MinorIssue;
  } else {
    report.verdict = Verdict::Perfect;
  }
  return report;
}

}  // namespace aidapub
