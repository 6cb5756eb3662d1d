#include "aidapub/rules.hpp"

#include <boost/regex.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "aidapub/error.hpp"

namespace aidapub {

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::NotAtomic: return "NotAtomic";
    case Violation::NotIndependent: return "NotIndependent";
    case Violation::NotDeclarative: return "NotDeclarative";
    case Violation::NotAbsolute: return "NotAbsolute";
  }
  return "";
}

std::optional<Violation> parse_violation(std::string_view name) {
  for (auto v : {Violation::NotAtomic, Violation::NotIndependent,
                 Violation::NotDeclarative, Violation::NotAbsolute}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

struct Pattern::Compiled {
  boost::regex re;
};

Pattern::Pattern(std::string source) : source_(std::move(source)) {
  try {
    auto compiled = std::make_shared<Compiled>();
    compiled->re.assign(source_, boost::regex::perl | boost::regex::no_mod_m);
    compiled_ = std::move(compiled);
  } catch (const boost::regex_error& e) {
    throw Error(Errc::RuleSyntax, "pattern does not compile: " + source_ + " (" + e.what() + ")");
  }
}

bool Pattern::search(std::string_view text) const {
  return boost::regex_search(text.begin(), text.end(), compiled_->re);
}

std::optional<std::size_t> Pattern::match_prefix(std::string_view text) const {
  boost::match_results<std::string_view::const_iterator> m;
  if (!boost::regex_search(text.begin(), text.end(), m, compiled_->re,
                           boost::match_continuous)) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(m.length(0));
}

namespace {

std::vector<std::string_view> split_tabs(std::string_view line, std::size_t max_fields) {
  std::vector<std::string_view> out;
  while (out.size() + 1 < max_fields) {
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) break;
    out.push_back(line.substr(0, tab));
    line.remove_prefix(tab + 1);
  }
  out.push_back(line);
  return out;
}

[[noreturn]] void fail(std::string_view source, std::size_t line_no, const std::string& what) {
  throw Error(Errc::RuleSyntax,
              std::string(source) + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

RuleSet RuleSet::parse(std::string_view text, std::string_view source_name) {
  RuleSet rules;
  std::set<std::string, std::less<>> ids;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kVersion = "# version:";
      if (line.starts_with(kVersion)) {
        std::string_view v = line.substr(kVersion.size());
        while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
        rules.version_ = std::string(v);
      }
      continue;
    }
    const auto fields = split_tabs(line, 4);
    if (fields.size() != 4) fail(source_name, line_no, "expected 4 tab-separated fields");
    const std::string id(fields[0]);
    if (id.empty()) fail(source_name, line_no, "empty rule id");
    if (!ids.insert(id).second) fail(source_name, line_no, "duplicate rule id '" + id + "'");
    if (fields[3].empty()) fail(source_name, line_no, "empty pattern");

    std::optional<Violation> violation;
    RuleKind kind;
    if (fields[1] == "EXCLUDE") {
      kind = RuleKind::Exclude;
      if (!fields[2].empty()) {
        violation = parse_violation(fields[2]);
        if (!violation) {
          fail(source_name, line_no, "unknown violation '" + std::string(fields[2]) + "'");
        }
      }
    } else if (fields[1] == "STRIP") {
      kind = RuleKind::Strip;
      if (!fields[2].empty()) fail(source_name, line_no, "STRIP rules take no violation");
    } else {
      fail(source_name, line_no, "unknown rule kind '" + std::string(fields[1]) + "'");
    }

    try {
      Rule rule{id, kind, violation, Pattern(std::string(fields[3]))};
      (kind == RuleKind::Exclude ? rules.exclusion_ : rules.strip_).push_back(std::move(rule));
    } catch (const Error& e) {
      fail(source_name, line_no, e.what());
    }
  }
  return rules;
}

RuleSet RuleSet::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open rule file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

const Rule* RuleSet::find(std::string_view id) const {
  for (const auto* list : {&exclusion_, &strip_}) {
    for (const auto& r : *list) {
      if (r.id == id) return &r;
    }
  }
  return nullptr;
}

std::string RuleSet::to_text() const {
  std::string out = "# version: " + version_ + "\n";
  for (const auto* list : {&exclusion_, &strip_}) {
    for (const auto& r : *list) {
      out += r.id;
      out += r.kind == RuleKind::Exclude ? "\tEXCLUDE\t" : "\tSTRIP\t";
      if (r.violation) out += to_string(*r.violation);
      out += '\t';
      out += r.pattern.source();
      out += '\n';
    }
  }
  return out;
}

const RuleSet& default_ruleset() {
  static const RuleSet rules = RuleSet::parse(
#include "default_rules.inc"
      , "data/rules/default.tsv");
  return rules;
}

}  // namespace aidapub
