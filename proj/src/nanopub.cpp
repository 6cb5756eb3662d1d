#include "aidapub/nanopub.hpp"

#include <algorithm>
#include <functional>

#include "aidapub/digest.hpp"
#include "aidapub/error.hpp"
#include "aidapub/vocab.hpp"

namespace aidapub {

using rdf::NamedGraph;
using rdf::Term;
using rdf::Triple;

namespace {

constexpr std::string_view kDraftUri = "urn:aidapub:draft";

Term iri(std::string_view s) { return Term::iri(s); }

std::string sub_iri(std::string_view base, std::string_view local) {
  return std::string(base) + "#" + std::string(local);
}

constexpr Channel kChannels[] = {Channel::Author,     Channel::MetaUser,
                                 Channel::Curator,    Channel::TextMining,
                                 Channel::StructuredExport, Channel::Bot};
constexpr Certainty kCertainties[] = {Certainty::Hypothesized, Certainty::Probable,
                                      Certainty::Established, Certainty::Unspecified};

std::string npx_term(std::string_view local) {
  return std::string(vocab::kNpx) + std::string(local);
}

// Graph-to-graph links: np:containsGraph and npx:asFormula, from any graph.
using EdgeMap = std::map<std::string, std::vector<std::string>>;

EdgeMap graph_edges(const Nanopublication& np) {
  EdgeMap edges;
  auto scan = [&](const NamedGraph& g) {
    for (const auto& t : g.triples) {
      const auto& p = t.predicate().value();
      if ((p == vocab::kContainsGraph || p == vocab::kAsFormula) && t.subject().is_iri() &&
          t.object().is_iri()) {
        edges[t.subject().value()].push_back(t.object().value());
      }
    }
  };
  scan(np.head);
  for (const auto& [name, g] : np.graphs) scan(g);
  for (auto& [from, to] : edges) {
    std::sort(to.begin(), to.end());
    to.erase(std::unique(to.begin(), to.end()), to.end());
  }
  return edges;
}

bool resolves(const Nanopublication& np, const EdgeMap& edges, const std::string& name) {
  return np.graphs.contains(name) || edges.contains(name);
}

std::optional<std::string> find_cycle(const EdgeMap& edges) {
  enum class Mark { White, Grey, Black };
  std::map<std::string, Mark> mark;
  std::optional<std::string> found;
  std::function<void(const std::string&)> visit = [&](const std::string& node) {
    mark[node] = Mark::Grey;
    if (auto it = edges.find(node); it != edges.end()) {
      for (const auto& next : it->second) {
        if (found) return;
        const Mark m = mark.contains(next) ? mark[next] : Mark::White;
        if (m == Mark::Grey) {
          found = node + " -> " + next;
          return;
        }
        if (m == Mark::White) visit(next);
      }
    }
    mark[node] = Mark::Black;
  };
  for (const auto& [node, _] : edges) {
    if (found) break;
    if (!mark.contains(node)) visit(node);
  }
  return found;
}

std::optional<std::string> head_object(const Nanopublication& np, std::string_view predicate) {
  for (const auto& t : np.head.triples) {
    if (t.subject().is_iri() && t.subject().value() == np.uri &&
        t.predicate().value() == predicate && t.object().is_iri()) {
      return t.object().value();
    }
  }
  return std::nullopt;
}

Term rename_term(const Term& t, std::string_view from, std::string_view to) {
  if (!t.is_iri()) return t;
  const auto& v = t.value();
  if (v == from) return iri(to);
  if (v.size() > from.size() && v.starts_with(from) && v[from.size()] == '#') {
    return iri(std::string(to) + v.substr(from.size()));
  }
  return t;
}

std::string rename_name(const std::string& name, std::string_view from, std::string_view to) {
  if (name.empty()) return name;
  return rename_term(iri(name), from, to).value();
}

NamedGraph rename_graph(const NamedGraph& g, std::string_view from, std::string_view to) {
  NamedGraph out;
  out.name = rename_name(g.name, from, to);
  for (const auto& t : g.triples) {
    out.triples.emplace(rename_term(t.subject(), from, to), rename_term(t.predicate(), from, to),
                        rename_term(t.object(), from, to));
  }
  return out;
}

Nanopublication rename(const Nanopublication& np, std::string_view from, std::string_view to) {
  Nanopublication out;
  out.uri = rename_name(np.uri, from, to);
  out.head = rename_graph(np.head, from, to);
  for (const auto& [name, g] : np.graphs) {
    auto renamed = rename_graph(g, from, to);
    out.graphs.emplace(renamed.name, std::move(renamed));
  }
  return out;
}

std::string canonical_content(const Nanopublication& np) {
  std::string out = "<" + np.uri + ">\n";
  auto emit = [&](const NamedGraph& g) {
    for (const auto& t : g.triples) {
      out += t.subject().ntriples() + " " + t.predicate().ntriples() + " " +
             t.object().ntriples() + " <" + g.name + "> .\n";
    }
  };
  emit(np.head);
  for (const auto& [_, g] : np.graphs) emit(g);
  return out;
}

void add_provenance(NamedGraph& graph, const std::string& assertion, const Provenance& prov) {
  const Term a = iri(assertion);
  graph.triples.emplace(a, iri(vocab::kWasAttributedTo), iri(prov.attributed_to));
  graph.triples.emplace(a, iri(vocab::kGeneratedAtTime),
                        Term::literal(format_timestamp(prov.generated_at), vocab::kXsdDateTime));
  for (const auto& src : prov.derived_from) {
    graph.triples.emplace(a, iri(vocab::kWasDerivedFrom), iri(src));
  }
  graph.triples.emplace(a, iri(vocab::kCreatedByChannel), iri(npx_term(to_string(prov.channel))));
  graph.triples.emplace(a, iri(vocab::kHasCertainty), iri(npx_term(to_string(prov.certainty))));
  if (prov.parameters_digest) {
    graph.triples.emplace(a, iri(vocab::kParametersDigest),
                          Term::literal(*prov.parameters_digest));
  }
}

// Skeleton shared by all builders: head, provenance and (empty) pubinfo.
Nanopublication skeleton(const Provenance& prov) {
  const std::string u(kDraftUri);
  Nanopublication np;
  np.uri = u;
  np.head.name = sub_iri(u, "Head");
  const std::string a = sub_iri(u, "Assertion");
  const std::string p = sub_iri(u, "Provenance");
  const std::string i = sub_iri(u, "PubInfo");
  np.head.triples.emplace(iri(u), iri(vocab::kRdfType), iri(vocab::kNanopublication));
  np.head.triples.emplace(iri(u), iri(vocab::kHasAssertion), iri(a));
  np.head.triples.emplace(iri(u), iri(vocab::kHasProvenance), iri(p));
  np.head.triples.emplace(iri(u), iri(vocab::kHasPublicationInfo), iri(i));
  NamedGraph pg{p, {}};
  add_provenance(pg, a, prov);
  np.graphs.emplace(p, std::move(pg));
  np.graphs.emplace(i, NamedGraph{i, {}});
  return np;
}

}  // namespace

std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::Author: return "Author";
    case Channel::MetaUser: return "MetaUser";
    case Channel::Curator: return "Curator";
    case Channel::TextMining: return "TextMining";
    case Channel::StructuredExport: return "StructuredExport";
    case Channel::Bot: return "Bot";
  }
  return "";
}

std::string_view to_string(Certainty c) {
  switch (c) {
    case Certainty::Hypothesized: return "Hypothesized";
    case Certainty::Probable: return "Probable";
    case Certainty::Established: return "Established";
    case Certainty::Unspecified: return "Unspecified";
  }
  return "";
}

std::optional<Channel> parse_channel(std::string_view name) {
  for (auto c : kChannels) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::optional<Certainty> parse_certainty(std::string_view name) {
  for (auto c : kCertainties) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view to_string(StructureViolationKind k) {
  switch (k) {
    case StructureViolationKind::InvalidUri: return "InvalidUri";
    case StructureViolationKind::NoAssertion: return "NoAssertion";
    case StructureViolationKind::MultipleAssertions: return "MultipleAssertions";
    case StructureViolationKind::DanglingGraphRef: return "DanglingGraphRef";
    case StructureViolationKind::CycleDetected: return "CycleDetected";
    case StructureViolationKind::GraphNameMismatch: return "GraphNameMismatch";
    case StructureViolationKind::InvalidSentenceUri: return "InvalidSentenceUri";
  }
  return "";
}

std::optional<std::string> Nanopublication::assertion_graph() const {
  std::optional<std::string> found;
  for (const auto& t : head.triples) {
    if (t.subject().is_iri() && t.subject().value() == uri &&
        t.predicate().value() == vocab::kHasAssertion && t.object().is_iri()) {
      if (found) return std::nullopt;
      found = t.object().value();
    }
  }
  return found;
}

const rdf::NamedGraph* Nanopublication::graph(std::string_view name) const {
  auto it = graphs.find(std::string(name));
  return it == graphs.end() ? nullptr : &it->second;
}

std::vector<StructureViolation> validate_structure(const Nanopublication& np) {
  using K = StructureViolationKind;
  std::vector<StructureViolation> out;
  if (!rdf::is_absolute_iri(np.uri)) out.push_back({K::InvalidUri, "'" + np.uri + "'"});
  if (!rdf::is_absolute_iri(np.head.name)) {
    out.push_back({K::InvalidUri, "head graph name '" + np.head.name + "'"});
  }

  for (const auto& [name, g] : np.graphs) {
    if (g.name != name) {
      out.push_back({K::GraphNameMismatch, "graph keyed '" + name + "' is named '" + g.name + "'"});
    }
    if (name == np.head.name) {
      out.push_back({K::GraphNameMismatch, "graph '" + name + "' clashes with the head graph"});
    }
  }

  std::size_t assertions = 0;
  std::string assertion;
  for (const auto& t : np.head.triples) {
    if (t.subject().is_iri() && t.subject().value() == np.uri &&
        t.predicate().value() == vocab::kHasAssertion) {
      ++assertions;
      assertion = t.object().value();
    }
  }
  if (assertions == 0) out.push_back({K::NoAssertion, np.uri});
  if (assertions > 1) {
    out.push_back({K::MultipleAssertions, std::to_string(assertions) + " np:hasAssertion triples"});
  }

  const EdgeMap edges = graph_edges(np);
  if (assertions == 1 && !resolves(np, edges, assertion)) {
    out.push_back({K::DanglingGraphRef, "assertion graph " + assertion});
  }
  for (auto pred : {vocab::kHasProvenance, vocab::kHasPublicationInfo}) {
    if (auto g = head_object(np, pred); g && !np.graphs.contains(*g)) {
      out.push_back({K::DanglingGraphRef, std::string(pred) + " " + *g});
    }
  }
  for (const auto& [from, targets] : edges) {
    for (const auto& to : targets) {
      if (!resolves(np, edges, to)) out.push_back({K::DanglingGraphRef, from + " -> " + to});
    }
  }
  if (auto cycle = find_cycle(edges)) out.push_back({K::CycleDetected, *cycle});

  auto check_sentences = [&](const NamedGraph& g) {
    for (const auto& t : g.triples) {
      if (t.predicate().value() != vocab::kAsSentence) continue;
      bool ok = t.object().is_iri();
      if (ok) {
        try {
          ok = AidaUri::parse(t.object().value()).str() == t.object().value();
        } catch (const Error&) {
          ok = false;
        }
      }
      if (!ok) out.push_back({K::InvalidSentenceUri, t.object().ntriples()});
    }
  };
  check_sentences(np.head);
  for (const auto& [_, g] : np.graphs) check_sentences(g);
  return out;
}

std::set<Triple> collect_assertion_triples(const Nanopublication& np) {
  const auto assertion = np.assertion_graph();
  if (!assertion) throw Error(Errc::StructureError, "nanopublication has no unique assertion");
  const EdgeMap edges = graph_edges(np);
  std::set<Triple> out;
  std::set<std::string> visited;
  std::vector<std::string> stack{*assertion};
  while (!stack.empty()) {
    const std::string name = stack.back();
    stack.pop_back();
    if (!visited.insert(name).second) continue;
    if (!resolves(np, edges, name)) {
      throw Error(Errc::DanglingGraphRef, "graph " + name + " is referenced but not present");
    }
    if (const auto* g = np.graph(name)) {
      for (const auto& t : g->triples) {
        const auto& p = t.predicate().value();
        if (p != vocab::kContainsGraph && p != vocab::kAsFormula) out.insert(t);
      }
    }
    if (auto it = edges.find(name); it != edges.end()) {
      for (auto r = it->second.rbegin(); r != it->second.rend(); ++r) stack.push_back(*r);
    }
  }
  return out;
}

Nanopublication mint(const Nanopublication& np, std::string_view salt) {
  Nanopublication draft = np;
  std::string info;
  if (auto existing = head_object(draft, vocab::kHasPublicationInfo)) {
    info = *existing;
  } else {
    info = sub_iri(draft.uri, "PubInfo");
    draft.head.triples.emplace(iri(draft.uri), iri(vocab::kHasPublicationInfo), iri(info));
  }
  auto& graph = draft.graphs[info];
  graph.name = info;
  std::erase_if(graph.triples, [&](const Triple& t) {
    return t.predicate().value() == vocab::kMintSalt && t.subject().is_iri() &&
           t.subject().value() == draft.uri;
  });
  graph.triples.emplace(iri(draft.uri), iri(vocab::kMintSalt), Term::literal(salt));

  Nanopublication placeholder = rename(draft, draft.uri, kDraftUri);
  const std::string digest = sha256_hex(canonical_content(placeholder));
  return rename(placeholder, kDraftUri, std::string(vocab::kNanopubUriPrefix) + digest);
}

std::optional<std::string> mint_salt(const Nanopublication& np) {
  auto info = head_object(np, vocab::kHasPublicationInfo);
  if (!info) return std::nullopt;
  const auto* g = np.graph(*info);
  if (!g) return std::nullopt;
  for (const auto& t : g->triples) {
    if (t.predicate().value() == vocab::kMintSalt && t.object().is_literal()) {
      return t.object().value();
    }
  }
  return std::nullopt;
}

bool verify_digest(const Nanopublication& np) {
  auto salt = mint_salt(np);
  if (!salt) return false;
  try {
    return mint(np, *salt) == np;
  } catch (const Error&) {
    return false;
  }
}

Nanopublication build_aida_nanopub(const AidaSentence& sentence, const Provenance& prov,
                                   std::string_view salt) {
  Nanopublication np = skeleton(prov);
  const std::string a = sub_iri(np.uri, "Assertion");
  const std::string ah = sub_iri(np.uri, "Assertion_Head");
  np.head.triples.emplace(iri(a), iri(vocab::kContainsGraph), iri(ah));
  NamedGraph head_graph{ah, {}};
  head_graph.triples.emplace(iri(a), iri(vocab::kAsSentence), iri(encode_uri(sentence).str()));
  np.graphs.emplace(ah, std::move(head_graph));
  return mint(np, salt);
}

Nanopublication build_aida_nanopub(const AidaSentence& sentence, const Provenance& prov) {
  return build_aida_nanopub(sentence, prov, random_salt());
}

Nanopublication build_assertion_nanopub(const std::vector<Triple>& assertion,
                                        const Provenance& prov, std::string_view salt) {
  Nanopublication np = skeleton(prov);
  const std::string a = sub_iri(np.uri, "Assertion");
  NamedGraph g{a, {}};
  g.triples.insert(assertion.begin(), assertion.end());
  np.graphs.emplace(a, std::move(g));
  return mint(np, salt);
}

std::optional<AidaUri> asserted_sentence(const Nanopublication& np) {
  const auto a = np.assertion_graph();
  if (!a) return std::nullopt;
  std::set<Triple> triples;
  try {
    triples = collect_assertion_triples(np);
  } catch (const Error&) {
    return std::nullopt;
  }
  for (const auto& t : triples) {
    if (t.predicate().value() == vocab::kAsSentence && t.subject().is_iri() &&
        t.subject().value() == *a && t.object().is_iri()) {
      try {
        return AidaUri::parse(t.object().value());
      } catch (const Error&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

std::optional<Provenance> read_provenance(const Nanopublication& np) {
  const auto a = np.assertion_graph();
  const auto p = head_object(np, vocab::kHasProvenance);
  if (!a || !p) return std::nullopt;
  const auto* g = np.graph(*p);
  if (!g) return std::nullopt;
  Provenance prov;
  bool have_agent = false;
  bool have_time = false;
  for (const auto& t : g->triples) {
    if (!t.subject().is_iri() || t.subject().value() != *a) continue;
    const auto& pred = t.predicate().value();
    const auto& obj = t.object();
    if (pred == vocab::kWasAttributedTo && obj.is_iri()) {
      prov.attributed_to = obj.value();
      have_agent = true;
    } else if (pred == vocab::kGeneratedAtTime && obj.is_literal()) {
      if (auto ts = parse_timestamp(obj.value())) {
        prov.generated_at = *ts;
        have_time = true;
      }
    } else if (pred == vocab::kWasDerivedFrom && obj.is_iri()) {
      prov.derived_from.push_back(obj.value());
    } else if (pred == vocab::kCreatedByChannel && obj.is_iri() &&
               obj.value().starts_with(vocab::kNpx)) {
      if (auto c = parse_channel(std::string_view(obj.value()).substr(vocab::kNpx.size()))) {
        prov.channel = *c;
      }
    } else if (pred == vocab::kHasCertainty && obj.is_iri() &&
               obj.value().starts_with(vocab::kNpx)) {
      if (auto c = parse_certainty(std::string_view(obj.value()).substr(vocab::kNpx.size()))) {
        prov.certainty = *c;
      }
    } else if (pred == vocab::kParametersDigest && obj.is_literal()) {
      prov.parameters_digest = obj.value();
    }
  }
  if (!have_agent || !have_time) return std::nullopt;
  return prov;
}

Nanopublication attach_formalization(const Nanopublication& np, NamedGraph body,
                                     const std::vector<std::string>& partial_about,
                                     std::vector<NamedGraph> subgraphs) {
  const auto a = np.assertion_graph();
  if (!a || !asserted_sentence(np)) {
    throw Error(Errc::InvalidArgument, "not an AIDA nanopublication: " + np.uri);
  }
  std::string sentence_graph;
  for (const auto& [name, g] : np.graphs) {
    for (const auto& t : g.triples) {
      const auto& p = t.predicate().value();
      if (t.subject().is_iri() && t.subject().value() == *a) {
        if (p == vocab::kAsFormula) {
          throw Error(Errc::AlreadyFormalized, np.uri + " already has a formalization");
        }
        if (p == vocab::kAsSentence) sentence_graph = name;
      }
    }
  }
  if (sentence_graph.empty()) {
    throw Error(Errc::InvalidArgument, "asSentence triple is not inside a named graph");
  }

  Nanopublication out = np;
  auto taken = [&](const std::string& name) {
    return name == out.head.name || out.graphs.contains(name);
  };
  if (body.name.empty()) body.name = sub_iri(np.uri, "Assertion_Body");
  if (!rdf::is_absolute_iri(body.name) || taken(body.name)) {
    throw Error(Errc::InvalidArgument, "body graph name unusable: '" + body.name + "'");
  }
  const Term b = iri(body.name);
  for (const auto& entity : partial_about) {
    body.triples.emplace(b, iri(vocab::kRdfAbout), iri(entity));
  }
  for (auto& sub : subgraphs) {
    if (!rdf::is_absolute_iri(sub.name) || taken(sub.name) || sub.name == body.name) {
      throw Error(Errc::InvalidArgument, "subgraph name unusable: '" + sub.name + "'");
    }
    body.triples.emplace(b, iri(vocab::kContainsGraph), iri(sub.name));
    const std::string name = sub.name;
    out.graphs.emplace(name, std::move(sub));
  }
  out.graphs[sentence_graph].triples.emplace(iri(*a), iri(vocab::kAsFormula), b);
  out.head.triples.emplace(iri(*a), iri(vocab::kContainsGraph), b);
  const std::string body_name = body.name;
  out.graphs.emplace(body_name, std::move(body));

  for (const auto& v : validate_structure(out)) {
    if (v.kind == StructureViolationKind::CycleDetected) {
      throw Error(Errc::CycleIntroduced, "formalization introduces a containsGraph cycle: " + v.detail);
    }
    if (v.kind == StructureViolationKind::DanglingGraphRef) {
      throw Error(Errc::DanglingGraphRef, "formalization references a missing graph: " + v.detail);
    }
  }
  return mint(out, mint_salt(np).value_or(""));
}

}  // namespace aidapub
