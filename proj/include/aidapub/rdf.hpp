#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>

// Minimal RDF terms, triples and named graphs.
namespace aidapub::rdf {

bool is_absolute_iri(std::string_view iri);

class Term {
 public:
  enum class Kind { Iri, Literal, BlankNode };

  /// Throws InvalidArgument unless `iri` is an absolute IRI.
  static Term iri(std::string_view iri);
  /// A language tag and a datatype are mutually exclusive.
  static Term literal(std::string_view lexical, std::string_view datatype = {},
                      std::string_view language = {});
  static Term blank(std::string_view label);

  Kind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == Kind::Iri; }
  bool is_literal() const noexcept { return kind_ == Kind::Literal; }
  bool is_blank() const noexcept { return kind_ == Kind::BlankNode; }

  /// IRI string, literal lexical form, or blank node label.
  const std::string& value() const noexcept { return value_; }
  const std::string& datatype() const noexcept { return datatype_; }
  const std::string& language() const noexcept { return language_; }

  /// N-Triples spelling; equality and ordering are defined on it.
  const std::string& ntriples() const noexcept { return key_; }

  friend bool operator==(const Term& a, const Term& b) { return a.key_ == b.key_; }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    return a.key_ <=> b.key_;
  }

 private:
  Term(Kind kind, std::string value, std::string datatype, std::string language);

  Kind kind_;
  std::string value_;
  std::string datatype_;
  std::string language_;
  std::string key_;
};

/// Subject is an IRI or blank node, predicate an IRI; the constructor
/// throws InvalidArgument otherwise.
class Triple {
 public:
  Triple(Term subject, Term predicate, Term object);

  const Term& subject() const noexcept { return subject_; }
  const Term& predicate() const noexcept { return predicate_; }
  const Term& object() const noexcept { return object_; }

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::strong_ordering operator<=>(const Triple&, const Triple&) = default;

 private:
  Term subject_;
  Term predicate_;
  Term object_;
};

struct NamedGraph {
  std::string name;  // absolute IRI; empty only for a default graph
  std::set<Triple> triples;

  friend bool operator==(const NamedGraph&, const NamedGraph&) = default;
};

std::string escape_literal(std::string_view lexical);

}  // namespace aidapub::rdf
