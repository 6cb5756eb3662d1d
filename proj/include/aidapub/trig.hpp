#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aidapub/nanopub.hpp"
#include "aidapub/rdf.hpp"

namespace aidapub {

/// Graphs of a TriG document in order of first appearance. Repeated blocks
/// for one graph name are merged. Triples outside any block land in a graph
/// with an empty name. Throws SyntaxError.
std::vector<rdf::NamedGraph> parse_trig_graphs(std::string_view text,
                                               std::string_view base_iri = {});

struct TrigDocument {
  std::vector<Nanopublication> nanopubs;  // order of appearance of head graphs
  std::vector<std::string> unattached_graphs;
};

struct TrigParseOptions {
  std::string base_iri;
  /// Throw StructureError when a grouped nanopublication fails
  /// validate_structure.
  bool check_structure = true;
};

/// Parses TriG and groups graphs into nanopublications: a graph holding an
/// (X np:hasAssertion A) triple is the head of nanopublication X, which owns
/// the graphs reachable from that head.
TrigDocument parse_trig(std::string_view text, const TrigParseOptions& options = {});

/// Standard TriG with the fixed prefix block and an @base of the (first)
/// nanopublication URI. The head graph comes first, the other graphs follow
/// ordered by IRI, and triples are sorted, so equal values give equal bytes.
std::string serialize_trig(const Nanopublication& np);
std::string serialize_trig(std::span<const Nanopublication> nps);

}  // namespace aidapub
