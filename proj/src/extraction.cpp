#include "aidapub/extraction.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "aidapub/error.hpp"
#include "aidapub/unicode.hpp"
#include "aidapub/vocab.hpp"

namespace aidapub {
namespace {

constexpr Violation kAllViolations[] = {Violation::NotAtomic, Violation::NotIndependent,
                                        Violation::NotDeclarative, Violation::NotAbsolute};

std::string row_label(Violation v) {
  switch (v) {
    case Violation::NotAtomic: return "not atomic";
    case Violation::NotIndependent: return "not independent";
    case Violation::NotDeclarative: return "not declarative";
    case Violation::NotAbsolute: return "not absolute";
  }
  return "?";
}

std::string percent(std::size_t n, std::size_t total) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * static_cast<double>(n) / static_cast<double>(total));
  return buf;
}

}  // namespace

StripResult strip_prefix(std::string_view text, const RuleSet& rules) {
  for (const Rule& r : rules.strip_rules()) {
    const auto len = r.pattern.match_prefix(text);
    if (!len || *len == 0) continue;
    const auto rest = unicode::trim(text.substr(*len));
    if (rest.empty()) continue;  // would strip everything
    return {unicode::upper_first(rest), r.id};
  }
  return {std::string(text), std::nullopt};
}

std::size_t ExtractionReport::rejected() const {
  return std::accumulate(rejected_by_rule.begin(), rejected_by_rule.end(), std::size_t{0},
                         [](std::size_t acc, const auto& kv) { return acc + kv.second; });
}

bool ExtractionReport::consistent() const {
  return accepted + rejected() == total && perfect + minor_issue == accepted &&
         not_aida == rejected() && stripped_prefix_count <= total;
}

std::size_t ExtractionReport::violation_count(Violation v) const {
  const auto it = violations.find(v);
  return it == violations.end() ? 0 : it->second;
}

ExtractionReport& ExtractionReport::operator+=(const ExtractionReport& o) {
  total += o.total;
  accepted += o.accepted;
  stripped_prefix_count += o.stripped_prefix_count;
  perfect += o.perfect;
  minor_issue += o.minor_issue;
  not_aida += o.not_aida;
  for (const auto& [k, n] : o.rejected_by_rule) rejected_by_rule[k] += n;
  for (const auto& [k, n] : o.violations) violations[k] += n;
  return *this;
}

RecordDecision assess(std::string_view raw_text, const RuleSet& rules) {
  RecordDecision d;
  auto stripped = strip_prefix(unicode::trim(raw_text), rules);
  d.strip_rule = std::move(stripped.rule_id);
  d.text = unicode::is_valid_utf8(stripped.text) ? unicode::nfc(stripped.text) : stripped.text;
  d.validation = validate(d.text, rules);
  d.accepted = d.validation.verdict == Verdict::Perfect ||
               d.validation.verdict == Verdict::MinorIssue;
  return d;
}

std::string pubmed_iri(std::int64_t pmid) {
  return std::string(vocab::kPubmedPrefix) + std::to_string(pmid);
}

Extractor::Extractor(const RuleSet& rules, Provenance prov_template, std::string salt)
    : rules_(rules), template_(std::move(prov_template)), salt_(std::move(salt)) {
  if (template_.channel != Channel::TextMining)
    throw Error(Errc::InvalidArgument, "extraction provenance must use the TextMining channel");
  if (template_.attributed_to.empty())
    throw Error(Errc::InvalidArgument, "extraction provenance must name the extractor agent");
}

const RecordDecision& Extractor::add(const GeneRifRecord& record) {
  last_ = assess(record.text, rules_);
  ++report_.total;
  if (last_.strip_rule) ++report_.stripped_prefix_count;
  for (Violation v : last_.validation.violations) ++report_.violations[v];
  switch (last_.validation.verdict) {
    case Verdict::Perfect: ++report_.perfect; break;
    case Verdict::MinorIssue: ++report_.minor_issue; break;
    default: ++report_.not_aida; break;
  }
  if (!last_.accepted) {
    ++report_.rejected_by_rule[last_.validation.rejecting_rule.value_or("unknown")];
    return last_;
  }
  ++report_.accepted;
  auto [it, fresh] = sources_.try_emplace(last_.text);
  if (fresh) order_.push_back(last_.text);
  for (auto pmid : record.pmids) {
    auto iri = pubmed_iri(pmid);
    if (std::find(it->second.begin(), it->second.end(), iri) == it->second.end())
      it->second.push_back(std::move(iri));
  }
  return last_;
}

std::vector<Nanopublication> Extractor::finish() const {
  std::vector<Nanopublication> out;
  out.reserve(order_.size());
  for (const auto& text : order_) {
    Provenance prov = template_;
    prov.derived_from = sources_.at(text);
    out.push_back(build_aida_nanopub(AidaSentence::make(text), prov, salt_));
  }
  return out;
}

std::pair<std::vector<Nanopublication>, ExtractionReport> extract_corpus(
    std::span<const GeneRifRecord> records, const RuleSet& rules,
    const Provenance& prov_template) {
  Extractor ex(rules, prov_template);
  for (const auto& r : records) ex.add(r);
  return {ex.finish(), ex.report()};
}

std::string emit_quality_report(const ExtractionReport& r, ReportFormat format) {
  std::vector<std::pair<std::string, std::size_t>> rows = {
      {"total", r.total}, {"perfect", r.perfect}, {"minor issue", r.minor_issue},
      {"not AIDA", r.not_aida}};
  for (Violation v : kAllViolations) rows.emplace_back(row_label(v), r.violation_count(v));
  rows.emplace_back("prefix stripped", r.stripped_prefix_count);

  std::ostringstream out;
  if (format == ReportFormat::Text) {
    for (const auto& [label, n] : rows)
      out << label << ", " << (r.total == 0 ? std::string("n/a") : percent(n, r.total) + "%")
          << '\n';
    return out.str();
  }
  rows.insert(rows.begin() + 1, {"accepted", r.accepted});
  for (const auto& [rule, n] : r.rejected_by_rule) rows.emplace_back("rule:" + rule, n);
  out << "category,count,percent\n";
  for (const auto& [label, n] : rows)
    out << label << ',' << n << ',' << (r.total == 0 ? std::string("n/a") : percent(n, r.total))
        << '\n';
  return out.str();
}

ExtractionReport parse_quality_csv(std::string_view csv) {
  ExtractionReport r;
  std::istringstream in{std::string(csv)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      if (line != "category,count,percent")
        throw Error(Errc::InvalidArgument, "unexpected quality report header");
      header = false;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw Error(Errc::InvalidArgument, "malformed quality report row: " + line);
    const std::string label = line.substr(0, c1);
    const std::string_view count_text = std::string_view(line).substr(c1 + 1, c2 - c1 - 1);
    std::size_t n = 0;
    const auto [p, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), n);
    if (ec != std::errc() || p != count_text.data() + count_text.size())
      throw Error(Errc::InvalidArgument, "malformed count in row: " + line);

    if (label == "total") r.total = n;
    else if (label == "accepted") r.accepted = n;
    else if (label == "perfect") r.perfect = n;
    else if (label == "minor issue") r.minor_issue = n;
    else if (label == "not AIDA") r.not_aida = n;
    else if (label == "prefix stripped") r.stripped_prefix_count = n;
    else if (label.starts_with("rule:")) r.rejected_by_rule[label.substr(5)] = n;
    else {
      bool matched = false;
      for (Violation v : kAllViolations) {
        if (label == row_label(v)) {
          if (n > 0) r.violations[v] = n;
          matched = true;
        }
      }
      if (!matched) throw Error(Errc::InvalidArgument, "unknown category: " + label);
    }
  }
  if (header) throw Error(Errc::InvalidArgument, "empty quality report");
  return r;
}

}  // namespace aidapub
