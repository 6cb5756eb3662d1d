#include "aidapub/trig.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "aidapub/error.hpp"
#include "aidapub/unicode.hpp"
#include "aidapub/vocab.hpp"

namespace aidapub {

using rdf::NamedGraph;
using rdf::Term;
using rdf::Triple;

namespace {

// ---------------------------------------------------------------------------
// IRI reference resolution (RFC 3986, section 5.2)

struct IriParts {
  std::string scheme;
  std::optional<std::string> authority;
  std::string path;
  std::optional<std::string> query;
  std::optional<std::string> fragment;
};

IriParts split_iri(std::string_view s) {
  IriParts p;
  const auto scheme_end = s.find_first_of(":/?#");
  if (scheme_end != std::string_view::npos && scheme_end > 0 && s[scheme_end] == ':') {
    p.scheme = std::string(s.substr(0, scheme_end));
    s.remove_prefix(scheme_end + 1);
  }
  if (auto hash = s.find('#'); hash != std::string_view::npos) {
    p.fragment = std::string(s.substr(hash + 1));
    s = s.substr(0, hash);
  }
  if (auto q = s.find('?'); q != std::string_view::npos) {
    p.query = std::string(s.substr(q + 1));
    s = s.substr(0, q);
  }
  if (s.starts_with("//")) {
    s.remove_prefix(2);
    const auto slash = s.find('/');
    p.authority = std::string(s.substr(0, slash));
    s = slash == std::string_view::npos ? std::string_view{} : s.substr(slash);
  }
  p.path = std::string(s);
  return p;
}

std::string remove_dot_segments(std::string_view in) {
  std::string input(in);
  std::string out;
  while (!input.empty()) {
    if (input.starts_with("../")) {
      input.erase(0, 3);
    } else if (input.starts_with("./")) {
      input.erase(0, 2);
    } else if (input.starts_with("/./")) {
      input.erase(0, 2);
    } else if (input == "/.") {
      input = "/";
    } else if (input.starts_with("/../") || input == "/..") {
      input = input == "/.." ? "/" : input.substr(3);
      const auto last = out.rfind('/');
      out.erase(last == std::string::npos ? 0 : last);
    } else if (input == "." || input == "..") {
      input.clear();
    } else {
      const auto next = input.find('/', input.front() == '/' ? 1 : 0);
      out += input.substr(0, next);
      input.erase(0, next == std::string::npos ? input.size() : next);
    }
  }
  return out;
}

std::string join_iri(const IriParts& p) {
  std::string out;
  if (!p.scheme.empty()) out += p.scheme + ":";
  if (p.authority) out += "//" + *p.authority;
  out += p.path;
  if (p.query) out += "?" + *p.query;
  if (p.fragment) out += "#" + *p.fragment;
  return out;
}

std::string resolve_iri(std::string_view base, std::string_view ref) {
  const IriParts r = split_iri(ref);
  if (!r.scheme.empty()) return std::string(ref);
  const IriParts b = split_iri(base);
  IriParts t;
  t.scheme = b.scheme;
  t.fragment = r.fragment;
  if (r.authority) {
    t.authority = r.authority;
    t.path = remove_dot_segments(r.path);
    t.query = r.query;
  } else {
    t.authority = b.authority;
    if (r.path.empty()) {
      t.path = b.path;
      t.query = r.query ? r.query : b.query;
    } else {
      if (r.path.front() == '/') {
        t.path = remove_dot_segments(r.path);
      } else {
        std::string merged;
        if (b.authority && b.path.empty()) {
          merged = "/" + r.path;
        } else {
          const auto slash = b.path.rfind('/');
          merged = (slash == std::string::npos ? std::string() : b.path.substr(0, slash + 1)) + r.path;
        }
        t.path = remove_dot_segments(merged);
      }
      t.query = r.query;
    }
  }
  return join_iri(t);
}

// ---------------------------------------------------------------------------
// Parser

bool is_pn_chars_base(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c >= 0x80;
}
bool is_pn_chars_u(unsigned char c) { return is_pn_chars_base(c) || c == '_'; }
bool is_pn_chars(unsigned char c) {
  return is_pn_chars_u(c) || c == '-' || (c >= '0' && c <= '9');
}
bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}
constexpr std::string_view kLocalEscapable = "_~.-!$&'()*+,;=/?#@%";

class TrigParser {
 public:
  TrigParser(std::string_view text, std::string base) : s_(text), base_(std::move(base)) {}

  std::vector<NamedGraph> run() {
    while (true) {
      skip_ws();
      if (eof()) break;
      statement();
    }
    std::vector<NamedGraph> out;
    out.reserve(graphs_.size());
    for (auto& g : graphs_) out.push_back(std::move(g));
    return out;
  }

 private:
  // -- low level ------------------------------------------------------------
  bool eof() const { return pos_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
  }
  bool starts_with(std::string_view t) const { return s_.substr(pos_).starts_with(t); }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

  [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(what, line, col);
  }

  void skip_ws() {
    while (!eof()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (!eof() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  // Case-insensitive keyword followed by a non-name character.
  bool keyword(std::string_view kw) const {
    if (pos_ + kw.size() > s_.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      char c = s_[pos_ + i];
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
      if (c != kw[i]) return false;
    }
    const auto next = static_cast<unsigned char>(peek(kw.size()));
    return !(is_pn_chars(next) || next == ':' || next == '.');
  }

  // -- statements -----------------------------------------------------------
  void statement() {
    if (starts_with("@prefix")) {
      pos_ += 7;
      prefix_decl();
      expect('.');
    } else if (starts_with("@base")) {
      pos_ += 5;
      base_decl();
      expect('.');
    } else if (keyword("PREFIX")) {
      pos_ += 6;
      prefix_decl();
    } else if (keyword("BASE")) {
      pos_ += 4;
      base_decl();
    } else if (keyword("GRAPH")) {
      pos_ += 5;
      skip_ws();
      const Term label = label_or_subject();
      skip_ws();
      if (peek() != '{') fail("expected '{' after GRAPH label");
      wrapped_graph(graph_name(label));
    } else if (peek() == '{') {
      wrapped_graph("");
    } else if (peek() == '[' || peek() == '(') {
      current_ = &graph_for("");
      const std::size_t at = pos_;
      Term subject = peek() == '[' ? blank_or_property_list() : collection();
      skip_ws();
      if (peek() == '{') {
        (void)at;
        fail("blank node graph labels are not supported");
      }
      if (peek() != '.') predicate_object_list(subject);
      expect('.');
    } else {
      const Term label = label_or_subject();
      skip_ws();
      if (peek() == '{') {
        wrapped_graph(graph_name(label));
      } else {
        current_ = &graph_for("");
        predicate_object_list(label);
        expect('.');
      }
    }
  }

  void prefix_decl() {
    skip_ws();
    std::string prefix;
    if (peek() != ':') prefix = pn_prefix();
    if (peek() != ':') fail("expected ':' in prefix declaration");
    ++pos_;
    skip_ws();
    if (peek() != '<') fail("expected IRI in prefix declaration");
    prefixes_[prefix] = iriref();
  }

  void base_decl() {
    skip_ws();
    if (peek() != '<') fail("expected IRI in base declaration");
    base_ = iriref();
  }

  std::string graph_name(const Term& label) {
    if (!label.is_iri()) fail("blank node graph labels are not supported");
    return label.value();
  }

  NamedGraph& graph_for(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, graphs_.size());
    if (inserted) graphs_.push_back(NamedGraph{name, {}});
    return graphs_[it->second];
  }

  void wrapped_graph(const std::string& name) {
    expect('{');
    current_ = &graph_for(name);
    while (true) {
      skip_ws();
      if (eof()) fail("unterminated graph block");
      if (peek() == '}') {
        ++pos_;
        break;
      }
      triples();
      skip_ws();
      if (peek() == '.') {
        ++pos_;
      } else if (peek() != '}') {
        fail("expected '.' or '}'");
      }
    }
  }

  void triples() {
    skip_ws();
    if (peek() == '[') {
      Term subject = blank_or_property_list();
      skip_ws();
      if (peek() != '.' && peek() != '}') predicate_object_list(subject);
      return;
    }
    predicate_object_list(subject());
  }

  void predicate_object_list(const Term& subject) {
    while (true) {
      skip_ws();
      const Term predicate = verb();
      object_list(subject, predicate);
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        ++pos_;
        skip_ws();
      }
      const char c = peek();
      if (c == '.' || c == ']' || c == '}' || eof()) return;
    }
  }

  void object_list(const Term& subject, const Term& predicate) {
    while (true) {
      skip_ws();
      const Term o = object();
      emit(subject, predicate, o);
      skip_ws();
      if (peek() != ',') return;
      ++pos_;
    }
  }

  void emit(const Term& s, const Term& p, const Term& o) {
    current_->triples.emplace(s, p, o);
  }

  // -- terms ----------------------------------------------------------------
  Term label_or_subject() {
    if (peek() == '<') return Term::iri(iriref());
    if (starts_with("_:")) return blank_label();
    if (is_pn_chars_base(static_cast<unsigned char>(peek())) || peek() == ':') {
      return prefixed_name();
    }
    fail("expected IRI or blank node");
  }

  Term subject() {
    const char c = peek();
    if (c == '"' || c == '\'' || c == '+' || c == '-' || (c >= '0' && c <= '9') ||
        (c == '.' && peek(1) >= '0' && peek(1) <= '9') || keyword("TRUE") ||
        keyword("FALSE")) {
      fail("literal in subject position");
    }
    if (c == '[') return blank_or_property_list();
    if (c == '(') return collection();
    return label_or_subject();
  }

  Term verb() {
    if (peek() == 'a') {
      const auto next = static_cast<unsigned char>(peek(1));
      if (!(is_pn_chars(next) || next == ':' || next == '.')) {
        ++pos_;
        return Term::iri(vocab::kRdfType);
      }
    }
    if (peek() == '<') return Term::iri(iriref());
    if (is_pn_chars_base(static_cast<unsigned char>(peek())) || peek() == ':') {
      return prefixed_name();
    }
    fail("expected predicate");
  }

  Term object() {
    const char c = peek();
    if (c == '<') return Term::iri(iriref());
    if (starts_with("_:")) return blank_label();
    if (c == '[') return blank_or_property_list();
    if (c == '(') return collection();
    if (c == '"' || c == '\'') return rdf_literal();
    if (c == '+' || c == '-' || (c >= '0' && c <= '9') || (c == '.' && peek(1) >= '0' && peek(1) <= '9')) {
      return numeric_literal();
    }
    if (keyword("TRUE") && s_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return Term::literal("true", std::string(vocab::kXsd) + "boolean");
    }
    if (keyword("FALSE") && s_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return Term::literal("false", std::string(vocab::kXsd) + "boolean");
    }
    if (is_pn_chars_base(static_cast<unsigned char>(c)) || c == ':') return prefixed_name();
    fail("expected object");
  }

  Term fresh_blank() { return Term::blank("genid" + std::to_string(++blank_counter_)); }

  Term blank_or_property_list() {
    ++pos_;  // '['
    skip_ws();
    const Term node = fresh_blank();
    if (peek() == ']') {
      ++pos_;
      return node;
    }
    predicate_object_list(node);
    expect(']');
    return node;
  }

  Term collection() {
    ++pos_;  // '('
    std::vector<Term> items;
    while (true) {
      skip_ws();
      if (eof()) fail("unterminated collection");
      if (peek() == ')') {
        ++pos_;
        break;
      }
      items.push_back(object());
    }
    const Term nil = Term::iri(std::string(vocab::kRdf) + "nil");
    if (items.empty()) return nil;
    const Term first = Term::iri(std::string(vocab::kRdf) + "first");
    const Term rest = Term::iri(std::string(vocab::kRdf) + "rest");
    std::vector<Term> nodes;
    for (std::size_t i = 0; i < items.size(); ++i) nodes.push_back(fresh_blank());
    for (std::size_t i = 0; i < items.size(); ++i) {
      emit(nodes[i], first, items[i]);
      emit(nodes[i], rest, i + 1 < items.size() ? nodes[i + 1] : nil);
    }
    return nodes.front();
  }

  Term blank_label() {
    pos_ += 2;  // "_:"
    const std::size_t start = pos_;
    const auto c0 = static_cast<unsigned char>(peek());
    if (!(is_pn_chars_u(c0) || (c0 >= '0' && c0 <= '9'))) fail("invalid blank node label");
    ++pos_;
    while (!eof() && (is_pn_chars(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
    while (pos_ > start && s_[pos_ - 1] == '.') --pos_;
    return Term::blank(s_.substr(start, pos_ - start));
  }

  std::string pn_prefix() {
    const std::size_t start = pos_;
    if (!is_pn_chars_base(static_cast<unsigned char>(peek()))) fail("invalid prefix name");
    ++pos_;
    while (!eof() && (is_pn_chars(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
    while (pos_ > start && s_[pos_ - 1] == '.') --pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Term prefixed_name() {
    const std::size_t start = pos_;
    std::string prefix;
    if (peek() != ':') prefix = pn_prefix();
    if (peek() != ':') fail_at(start, "expected prefixed name");
    ++pos_;
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail_at(start, "undeclared prefix '" + prefix + "'");

    std::string local;
    std::size_t committed_len = 0;   // length of `local` up to the last non-'.' char
    std::size_t committed_pos = pos_;
    bool first = true;
    while (!eof()) {
      const auto c = static_cast<unsigned char>(peek());
      if (c == '%') {
        if (!is_hex(peek(1)) || !is_hex(peek(2))) fail("invalid percent escape in local name");
        local.append(s_.substr(pos_, 3));
        pos_ += 3;
      } else if (c == '\\') {
        const char e = peek(1);
        if (kLocalEscapable.find(e) == std::string_view::npos) fail("invalid local name escape");
        local += e;
        pos_ += 2;
      } else if (is_pn_chars_u(c) || c == ':' || (c >= '0' && c <= '9') ||
                 (!first && (c == '-' || c == '.'))) {
        local += static_cast<char>(c);
        ++pos_;
        if (c == '.') {
          first = false;
          continue;
        }
      } else {
        break;
      }
      first = false;
      committed_len = local.size();
      committed_pos = pos_;
    }
    local.resize(committed_len);
    pos_ = committed_pos;
    return Term::iri(it->second + local);
  }

  std::string iriref() {
    const std::size_t start = pos_;
    ++pos_;  // '<'
    std::string out;
    while (true) {
      if (eof()) fail_at(start, "unterminated IRI");
      const auto c = static_cast<unsigned char>(peek());
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '\\') {
        out += uchar();
        continue;
      }
      if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
          c == '`') {
        fail("character not allowed in IRI");
      }
      out += static_cast<char>(c);
      ++pos_;
    }
    if (rdf::is_absolute_iri(out)) return out;
    if (base_.empty()) fail_at(start, "relative IRI <" + out + "> without a base");
    std::string resolved = resolve_iri(base_, out);
    if (!rdf::is_absolute_iri(resolved)) fail_at(start, "cannot resolve IRI <" + out + ">");
    return resolved;
  }

  std::string uchar() {
    const char kind = peek(1);
    const std::size_t n = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (n == 0) fail("invalid escape");
    char32_t cp = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const char h = peek(2 + i);
      if (!is_hex(h)) fail("invalid unicode escape");
      cp = cp * 16 + static_cast<char32_t>(h <= '9' ? h - '0' : (h | 0x20) - 'a' + 10);
    }
    pos_ += 2 + n;
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid code point in escape");
    return unicode::encode(cp);
  }

  Term rdf_literal() {
    const std::string lexical = string_literal();
    if (peek() == '@') {
      ++pos_;
      const std::size_t start = pos_;
      auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
      while (alpha(peek())) ++pos_;
      if (pos_ == start) fail("empty language tag");
      while (peek() == '-' && (alpha(peek(1)) || (peek(1) >= '0' && peek(1) <= '9'))) {
        ++pos_;
        while (alpha(peek()) || (peek() >= '0' && peek() <= '9')) ++pos_;
      }
      return Term::literal(lexical, {}, s_.substr(start, pos_ - start));
    }
    if (starts_with("^^")) {
      pos_ += 2;
      Term dt = peek() == '<' ? Term::iri(iriref()) : prefixed_name();
      return Term::literal(lexical, dt.value());
    }
    return Term::literal(lexical);
  }

  std::string string_literal() {
    const char q = peek();
    const bool long_form = peek(1) == q && peek(2) == q;
    const std::size_t start = pos_;
    pos_ += long_form ? 3 : 1;
    std::string out;
    while (true) {
      if (eof()) fail_at(start, "unterminated string literal");
      const char c = peek();
      if (long_form) {
        if (c == q && peek(1) == q && peek(2) == q) {
          pos_ += 3;
          // A long literal may end with up to two extra quotes.
          while (peek() == q) {
            out += q;
            ++pos_;
          }
          break;
        }
      } else {
        if (c == q) {
          ++pos_;
          break;
        }
        if (c == '\n' || c == '\r') fail("line break in short string literal");
      }
      if (c == '\\') {
        const char e = peek(1);
        switch (e) {
          case 't': out += '\t'; break;
          case 'b': out += '\b'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 'f': out += '\f'; break;
          case '"': out += '"'; break;
          case '\'': out += '\''; break;
          case '\\': out += '\\'; break;
          case 'u':
          case 'U':
            out += uchar();
            continue;
          default:
            fail("invalid string escape");
        }
        pos_ += 2;
        continue;
      }
      out += c;
      ++pos_;
    }
    return out;
  }

  Term numeric_literal() {
    const std::size_t start = pos_;
    auto digit = [&](std::size_t ahead = 0) { return peek(ahead) >= '0' && peek(ahead) <= '9'; };
    if (peek() == '+' || peek() == '-') ++pos_;
    bool int_digits = false;
    while (digit()) {
      ++pos_;
      int_digits = true;
    }
    bool decimal = false;
    if (peek() == '.' && digit(1)) {
      decimal = true;
      ++pos_;
      while (digit()) ++pos_;
    }
    bool exponent = false;
    if ((peek() == 'e' || peek() == 'E') && (int_digits || decimal)) {
      std::size_t ahead = 1;
      if (peek(1) == '+' || peek(1) == '-') ahead = 2;
      if (digit(ahead)) {
        exponent = true;
        pos_ += ahead;
        while (digit()) ++pos_;
      }
    }
    if (!int_digits && !decimal) fail_at(start, "invalid numeric literal");
    const std::string lexical(s_.substr(start, pos_ - start));
    const char* type = exponent ? "double" : decimal ? "decimal" : "integer";
    return Term::literal(lexical, std::string(vocab::kXsd) + type);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::string base_;
  std::map<std::string, std::string> prefixes_;
  std::vector<NamedGraph> graphs_;
  std::map<std::string, std::size_t> index_;
  NamedGraph* current_ = nullptr;
  std::size_t blank_counter_ = 0;
};

// ---------------------------------------------------------------------------
// Serializer

struct PrefixEntry {
  std::string_view prefix;
  std::string_view ns;
};
constexpr PrefixEntry kPrefixes[] = {
    {"np", vocab::kNp}, {"npx", vocab::kNpx}, {"aida", vocab::kAida},
    {"rdf", vocab::kRdf}, {"xsd", vocab::kXsd},
};

bool simple_local(std::string_view local) {
  if (local.empty()) return false;
  const auto c0 = static_cast<unsigned char>(local.front());
  if (!((c0 >= 'a' && c0 <= 'z') || (c0 >= 'A' && c0 <= 'Z') || c0 == '_')) return false;
  return std::all_of(local.begin(), local.end(), [](char ch) {
    const auto c = static_cast<unsigned char>(ch);
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
  });
}

std::string render_iri(std::string_view iri) {
  for (const auto& [prefix, ns] : kPrefixes) {
    if (iri.starts_with(ns) && simple_local(iri.substr(ns.size()))) {
      return std::string(prefix) + ":" + std::string(iri.substr(ns.size()));
    }
  }
  return "<" + std::string(iri) + ">";
}

std::string render_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Iri:
      return render_iri(t.value());
    case Term::Kind::BlankNode:
      return "_:" + t.value();
    case Term::Kind::Literal: {
      std::string out = "\"" + rdf::escape_literal(t.value()) + "\"";
      if (!t.language().empty()) {
        out += "@" + t.language();
      } else if (!t.datatype().empty()) {
        out += "^^" + render_iri(t.datatype());
      }
      return out;
    }
  }
  return {};
}

void write_graph(std::string& out, const NamedGraph& g) {
  out += render_iri(g.name);
  out += " {\n";
  const Term* subject = nullptr;
  for (const auto& t : g.triples) {
    const std::string predicate =
        t.predicate().value() == vocab::kRdfType ? "a" : render_term(t.predicate());
    if (subject && *subject == t.subject()) {
      out += " ;\n    " + predicate + " " + render_term(t.object());
    } else {
      if (subject) out += " .\n";
      out += "  " + render_term(t.subject()) + " " + predicate + " " + render_term(t.object());
    }
    subject = &t.subject();
  }
  if (subject) out += " .\n";
  out += "}\n";
}

void write_nanopub(std::string& out, const Nanopublication& np) {
  write_graph(out, np.head);
  for (const auto& [name, g] : np.graphs) {
    out += "\n";
    write_graph(out, g);
  }
}

}  // namespace

std::vector<NamedGraph> parse_trig_graphs(std::string_view text, std::string_view base_iri) {
  return TrigParser(text, std::string(base_iri)).run();
}

TrigDocument parse_trig(std::string_view text, const TrigParseOptions& options) {
  std::vector<NamedGraph> graphs = parse_trig_graphs(text, options.base_iri);
  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < graphs.size(); ++i) by_name.emplace(graphs[i].name, i);

  struct HeadInfo {
    std::size_t graph;
    std::string uri;
  };
  std::vector<HeadInfo> heads;
  std::set<std::string> head_names;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    std::set<std::string> subjects;
    for (const auto& t : graphs[i].triples) {
      if (t.predicate().value() == vocab::kHasAssertion && t.subject().is_iri()) {
        subjects.insert(t.subject().value());
      }
    }
    if (subjects.empty()) continue;
    if (subjects.size() > 1) {
      throw Error(Errc::StructureError,
                  "graph " + graphs[i].name + " is the head of several nanopublications");
    }
    if (graphs[i].name.empty()) {
      throw Error(Errc::StructureError, "nanopublication head is in the default graph");
    }
    heads.push_back({i, *subjects.begin()});
    head_names.insert(graphs[i].name);
  }

  TrigDocument doc;
  std::set<std::string> owned;
  for (const auto& head : heads) {
    Nanopublication np;
    np.uri = head.uri;
    np.head = graphs[head.graph];
    std::vector<std::string> frontier;
    auto follow = [&](const NamedGraph& g, bool from_head) {
      for (const auto& t : g.triples) {
        if (!t.object().is_iri()) continue;
        const auto& p = t.predicate().value();
        const bool link = p == vocab::kContainsGraph || p == vocab::kAsFormula ||
                          (from_head && (p == vocab::kHasAssertion || p == vocab::kHasProvenance ||
                                         p == vocab::kHasPublicationInfo));
        if (link) frontier.push_back(t.object().value());
      }
    };
    follow(np.head, true);
    while (!frontier.empty()) {
      const std::string name = frontier.back();
      frontier.pop_back();
      if (np.graphs.contains(name) || head_names.contains(name)) continue;
      auto it = by_name.find(name);
      if (it == by_name.end()) continue;
      np.graphs.emplace(name, graphs[it->second]);
      owned.insert(name);
      follow(graphs[it->second], false);
    }
    if (options.check_structure) {
      const auto violations = validate_structure(np);
      if (!violations.empty()) {
        std::string msg = "invalid nanopublication " + np.uri + ":";
        for (const auto& v : violations) {
          msg += " " + std::string(to_string(v.kind)) + " (" + v.detail + ");";
        }
        throw Error(Errc::StructureError, msg);
      }
    }
    doc.nanopubs.push_back(std::move(np));
  }
  for (const auto& g : graphs) {
    if (head_names.contains(g.name) || owned.contains(g.name)) continue;
    if (g.name.empty() && g.triples.empty()) continue;
    doc.unattached_graphs.push_back(g.name);
  }
  return doc;
}

std::string serialize_trig(std::span<const Nanopublication> nps) {
  std::string out;
  for (const auto& [prefix, ns] : kPrefixes) {
    out += "@prefix " + std::string(prefix) + ": <" + std::string(ns) + "> .\n";
  }
  if (!nps.empty()) out += "@base <" + nps.front().uri + "> .\n";
  for (const auto& np : nps) {
    out += "\n";
    write_nanopub(out, np);
  }
  return out;
}

std::string serialize_trig(const Nanopublication& np) {
  return serialize_trig(std::span<const Nanopublication>(&np, 1));
}

}  // namespace aidapub
