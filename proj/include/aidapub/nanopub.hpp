#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aidapub/rdf.hpp"
#include "aidapub/sentence.hpp"
#include "aidapub/timeutil.hpp"

namespace aidapub {

/// Production channels for nanopublications.
enum class Channel { Author, MetaUser, Curator, TextMining, StructuredExport, Bot };
enum class Certainty { Hypothesized, Probable, Established, Unspecified };

std::string_view to_string(Channel c);
std::string_view to_string(Certainty c);
std::optional<Channel> parse_channel(std::string_view name);
std::optional<Certainty> parse_certainty(std::string_view name);

struct Provenance {
  std::string attributed_to;  // agent IRI
  Timestamp generated_at{};
  std::vector<std::string> derived_from;
  Channel channel = Channel::Author;
  Certainty certainty = Certainty::Unspecified;
  /// Set by bots to identify the parameters they ran with.
  std::optional<std::string> parameters_digest;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// A nanopublication: a head graph that points at the assertion, provenance
/// and publication-info graphs, plus those graphs keyed by name.
///
/// An assertion may be a plain graph or a container whose content is split
/// over graphs linked with np:containsGraph (the AIDA head/body layout):
///
///   head:            <np> np:hasAssertion <A> . <A> np:containsGraph <AH> .
///   <AH> (graph):    <A> npx:asSentence <aida-uri> ; npx:asFormula <B> .
///   <B>  (graph):    formal triples, <B> rdf:about <entity>, ...
struct Nanopublication {
  std::string uri;
  rdf::NamedGraph head;
  std::map<std::string, rdf::NamedGraph> graphs;

  /// Object of the head's np:hasAssertion triple, if there is exactly one.
  std::optional<std::string> assertion_graph() const;
  const rdf::NamedGraph* graph(std::string_view name) const;

  friend bool operator==(const Nanopublication&, const Nanopublication&) = default;
};

enum class StructureViolationKind {
  InvalidUri,
  NoAssertion,
  MultipleAssertions,
  DanglingGraphRef,
  CycleDetected,
  GraphNameMismatch,
  InvalidSentenceUri,
};

std::string_view to_string(StructureViolationKind k);

struct StructureViolation {
  StructureViolationKind kind;
  std::string detail;
};

/// Checks every structural invariant; an empty result means valid.
std::vector<StructureViolation> validate_structure(const Nanopublication& np);

/// Union of the assertion graph and every graph reachable from it through
/// np:containsGraph or npx:asFormula, minus those linking triples.
/// npx:asSentence triples are content and are kept. Throws DanglingGraphRef.
std::set<rdf::Triple> collect_assertion_triples(const Nanopublication& np);

/// AIDA nanopublication for `sentence`. The URI is urn:aidapub:<sha-256>
/// over the content with `salt` recorded in the publication info.
Nanopublication build_aida_nanopub(const AidaSentence& sentence, const Provenance& prov,
                                   std::string_view salt);
Nanopublication build_aida_nanopub(const AidaSentence& sentence, const Provenance& prov);

/// Plain (single assertion graph) nanopublication, used for opinions, links
/// and relation proposals.
Nanopublication build_assertion_nanopub(const std::vector<rdf::Triple>& assertion,
                                        const Provenance& prov, std::string_view salt);

/// Adds a formal body to an AIDA nanopublication. `body.name` may be empty
/// (a name under the nanopub URI is chosen). Every `partial_about` IRI yields
/// a (body, rdf:about, iri) triple; each of `subgraphs` is linked from the
/// body with np:containsGraph. Returns a re-minted nanopublication.
/// Throws AlreadyFormalized, CycleIntroduced or InvalidArgument.
Nanopublication attach_formalization(const Nanopublication& np, rdf::NamedGraph body,
                                     const std::vector<std::string>& partial_about,
                                     std::vector<rdf::NamedGraph> subgraphs = {});

/// The sentence an AIDA nanopublication asserts.
std::optional<AidaUri> asserted_sentence(const Nanopublication& np);

std::optional<Provenance> read_provenance(const Nanopublication& np);

/// Recomputes the content digest with `salt` and renames the nanopublication
/// (and every IRI under its URI) accordingly.
Nanopublication mint(const Nanopublication& np, std::string_view salt);
std::optional<std::string> mint_salt(const Nanopublication& np);
/// True when the URI equals the digest of the content.
bool verify_digest(const Nanopublication& np);

}  // namespace aidapub
