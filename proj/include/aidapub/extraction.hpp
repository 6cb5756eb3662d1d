#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aidapub/generif.hpp"
#include "aidapub/nanopub.hpp"
#include "aidapub/rules.hpp"
#include "aidapub/validate.hpp"

namespace aidapub {

struct StripResult {
  std::string text;
  std::optional<std::string> rule_id;

  friend bool operator==(const StripResult&, const StripResult&) = default;
};

/// Removes the first matching reporting prefix and capitalizes what is left.
StripResult strip_prefix(std::string_view text, const RuleSet& rules);

/// Tallies of extraction decisions. Rejected records count once, under the
/// rule that rejected them; violation tallies count every violation found.
struct ExtractionReport {
  std::size_t total = 0;
  std::size_t accepted = 0;
  std::map<std::string, std::size_t> rejected_by_rule;
  std::size_t stripped_prefix_count = 0;

  std::size_t perfect = 0;
  std::size_t minor_issue = 0;
  std::size_t not_aida = 0;
  std::map<Violation, std::size_t> violations;

  std::size_t rejected() const;
  /// accepted + sum(rejected_by_rule) == total, and the verdict counts agree.
  bool consistent() const;
  std::size_t violation_count(Violation v) const;

  ExtractionReport& operator+=(const ExtractionReport& other);
  friend bool operator==(const ExtractionReport&, const ExtractionReport&) = default;
};

struct RecordDecision {
  std::string text;  // after trimming, stripping and normalization
  std::optional<std::string> strip_rule;
  ValidationReport validation;
  bool accepted = false;
};

RecordDecision assess(std::string_view raw_text, const RuleSet& rules);

/// Record-at-a-time extraction. Accepted sentences are deduplicated by exact
/// text; nanopublications come out in order of first acceptance.
class Extractor {
 public:
  /// Throws InvalidArgument unless the template is a TextMining provenance
  /// with an agent.
  Extractor(const RuleSet& rules, Provenance prov_template, std::string salt = "");

  const RecordDecision& add(const GeneRifRecord& record);
  const ExtractionReport& report() const noexcept { return report_; }
  std::size_t unique_sentences() const noexcept { return order_.size(); }
  std::vector<Nanopublication> finish() const;

 private:
  const RuleSet& rules_;
  Provenance template_;
  std::string salt_;
  ExtractionReport report_;
  RecordDecision last_;
  std::vector<std::string> order_;
  std::map<std::string, std::vector<std::string>> sources_;  // text -> PubMed IRIs
};

std::pair<std::vector<Nanopublication>, ExtractionReport> extract_corpus(
    std::span<const GeneRifRecord> records, const RuleSet& rules,
    const Provenance& prov_template);

std::string pubmed_iri(std::int64_t pmid);

enum class ReportFormat { Text, Csv };

std::string emit_quality_report(const ExtractionReport& report, ReportFormat format);
/// Reads back the csv form. Throws InvalidArgument.
ExtractionReport parse_quality_csv(std::string_view csv);

}  // namespace aidapub
