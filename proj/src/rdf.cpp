#include "aidapub/rdf.hpp"

#include <algorithm>

#include "aidapub/error.hpp"

namespace aidapub::rdf {

bool is_absolute_iri(std::string_view iri) {
  const auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!alpha(iri[0])) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    const char c = iri[i];
    if (!alpha(c) && !(c >= '0' && c <= '9') && c != '+' && c != '-' && c != '.') return false;
  }
  for (unsigned char c : iri) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' ||
        c == '|' || c == '^' || c == '`' || c == '\\') {
      return false;
    }
  }
  return true;
}

std::string escape_literal(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size());
  for (char c : lexical) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default: out += c;
    }
  }
  return out;
}

Term::Term(Kind kind, std::string value, std::string datatype, std::string language)
    : kind_(kind),
      value_(std::move(value)),
      datatype_(std::move(datatype)),
      language_(std::move(language)) {
  switch (kind_) {
    case Kind::Iri:
      key_ = "<" + value_ + ">";
      break;
    case Kind::BlankNode:
      key_ = "_:" + value_;
      break;
    case Kind::Literal:
      key_ = "\"" + escape_literal(value_) + "\"";
      if (!language_.empty()) {
        key_ += "@" + language_;
      } else if (!datatype_.empty()) {
        key_ += "^^<" + datatype_ + ">";
      }
      break;
  }
}

Term Term::iri(std::string_view iri) {
  if (!is_absolute_iri(iri)) {
    throw Error(Errc::InvalidArgument, "not an absolute IRI: '" + std::string(iri) + "'");
  }
  return Term(Kind::Iri, std::string(iri), {}, {});
}

Term Term::literal(std::string_view lexical, std::string_view datatype,
                   std::string_view language) {
  if (!language.empty() && !datatype.empty()) {
    throw Error(Errc::InvalidArgument, "literal cannot have both a datatype and a language tag");
  }
  if (!datatype.empty() && !is_absolute_iri(datatype)) {
    throw Error(Errc::InvalidArgument, "literal datatype is not an absolute IRI");
  }
  return Term(Kind::Literal, std::string(lexical), std::string(datatype), std::string(language));
}

Term Term::blank(std::string_view label) {
  auto ok_char = [](unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.' || c >= 0x80;
  };
  const bool ok = !label.empty() && label.front() != '-' && label.front() != '.' &&
                  label.back() != '.' && std::all_of(label.begin(), label.end(), ok_char);
  if (!ok) throw Error(Errc::InvalidArgument, "invalid blank node label '" + std::string(label) + "'");
  return Term(Kind::BlankNode, std::string(label), {}, {});
}

Triple::Triple(Term subject, Term predicate, Term object)
    : subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {
  if (subject_.is_literal()) {
    throw Error(Errc::InvalidArgument,
                "literal in subject position: " + subject_.ntriples());
  }
  if (!predicate_.is_iri()) {
    throw Error(Errc::InvalidArgument, "predicate must be an IRI: " + predicate_.ntriples());
  }
}

}  // namespace aidapub::rdf
