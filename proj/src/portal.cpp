#include "aidapub/portal.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

#include "aidapub/error.hpp"
#include "aidapub/trig.hpp"
#include "aidapub/vocab.hpp"

namespace aidapub {
namespace {

constexpr std::string_view kJournalMarker = "#@ stored ";

std::optional<AidaUri> as_aida(const rdf::Term& t) {
  if (!t.is_iri() || !is_aida_uri(t.value())) return std::nullopt;
  try {
    return AidaUri::parse(t.value());
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string describe(const std::vector<StructureViolation>& v) {
  std::string out;
  for (const auto& x : v) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(x.kind)) + ": " + x.detail;
  }
  return out;
}

}  // namespace

std::string_view to_string(AgentKind k) { return k == AgentKind::Bot ? "Bot" : "Person"; }

std::string_view to_string(OpinionKind k) {
  switch (k) {
    case OpinionKind::Agrees: return "Agrees";
    case OpinionKind::Disagrees: return "Disagrees";
    case OpinionKind::IsConvinced: return "IsConvinced";
    case OpinionKind::IsNotConvinced: return "IsNotConvinced";
  }
  return "?";
}

std::string_view to_string(RelationKind k) {
  return k == RelationKind::SameMeaning ? "hasSameMeaning" : "hasRelatedMeaning";
}

std::optional<AgentKind> parse_agent_kind(std::string_view s) {
  if (s == "Person") return AgentKind::Person;
  if (s == "Bot") return AgentKind::Bot;
  return std::nullopt;
}

std::optional<OpinionKind> parse_opinion_kind(std::string_view s) {
  for (auto k : {OpinionKind::Agrees, OpinionKind::Disagrees, OpinionKind::IsConvinced,
                 OpinionKind::IsNotConvinced})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

std::optional<RelationKind> parse_relation_kind(std::string_view s) {
  if (s == "hasSameMeaning") return RelationKind::SameMeaning;
  if (s == "hasRelatedMeaning") return RelationKind::RelatedMeaning;
  return std::nullopt;
}

std::string_view opinion_predicate(OpinionKind k) {
  switch (k) {
    case OpinionKind::Agrees: return vocab::kAgreesWith;
    case OpinionKind::Disagrees: return vocab::kDisagreesWith;
    case OpinionKind::IsConvinced: return vocab::kIsConvincedBy;
    case OpinionKind::IsNotConvinced: return vocab::kIsNotConvincedBy;
  }
  return {};
}

std::string_view relation_predicate(RelationKind k) {
  return k == RelationKind::SameMeaning ? vocab::kHasSameMeaning : vocab::kHasRelatedMeaning;
}

PortalService::PortalService() : PortalService(Options{}) {}

PortalService::PortalService(Options options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = now_utc;
  if (!options_.journal.empty()) replay();
}

PortalService::~PortalService() = default;

void PortalService::replay() {
  std::ifstream in(options_.journal, std::ios::binary);
  if (!in) return;  // fresh journal
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text.compare(pos, kJournalMarker.size(), kJournalMarker) != 0)
      throw Error(Errc::Io, "corrupt journal " + options_.journal.string() + " at byte " +
                                std::to_string(pos));
    const auto eol = text.find('\n', pos);
    if (eol == std::string::npos) break;  // truncated header from an interrupted write
    std::istringstream header(text.substr(pos + kJournalMarker.size(), eol - pos - kJournalMarker.size()));
    std::string uri, ts_text;
    header >> uri >> ts_text;
    const auto ts = parse_timestamp(ts_text);
    auto next = text.find(std::string("\n") + std::string(kJournalMarker), eol);
    next = next == std::string::npos ? text.size() : next + 1;
    const auto doc = parse_trig(std::string_view(text).substr(eol + 1, next - eol - 1));
    if (!ts || doc.nanopubs.size() != 1 || doc.nanopubs.front().uri != uri)
      throw Error(Errc::Io, "corrupt journal entry for " + uri);
    publish_locked(doc.nanopubs.front(), *ts, false);
    pos = next;
  }
}

Receipt PortalService::publish(const Nanopublication& np) {
  std::unique_lock lock(mu_);
  return publish_locked(np, std::nullopt, true);
}

Receipt PortalService::publish_locked(const Nanopublication& np,
                                      std::optional<Timestamp> stored_at, bool write_journal) {
  if (auto v = validate_structure(np); !v.empty())
    throw Error(Errc::StructureInvalid, describe(v));
  if (const auto it = store_.find(np.uri); it != store_.end()) {
    if (it->second.np != np)
      throw Error(Errc::ConflictingContentForUri, "different content already stored for " + np.uri);
    return {np.uri, it->second.stored_at, false};
  }
  const Timestamp at = stored_at.value_or(options_.clock());
  if (write_journal && !options_.journal.empty()) {
    const std::string entry = std::string(kJournalMarker) + np.uri + " " + format_timestamp(at) +
                              "\n" + serialize_trig(np);
    std::FILE* f = std::fopen(options_.journal.c_str(), "ab");
    if (!f) throw Error(Errc::Io, "cannot open journal " + options_.journal.string());
    const bool ok = std::fwrite(entry.data(), 1, entry.size(), f) == entry.size() &&
                    std::fflush(f) == 0 && ::fsync(fileno(f)) == 0;
    std::fclose(f);
    if (!ok) throw Error(Errc::Io, "cannot append to journal " + options_.journal.string());
  }
  const auto [it, _] = store_.emplace(np.uri, Stored{np, at, order_.size()});
  order_.push_back(np.uri);
  index(it->second);
  return {np.uri, at, true};
}

void PortalService::index(const Stored& s) {
  const auto triples = collect_assertion_triples(s.np);
  const auto prov = read_provenance(s.np);

  for (const auto& t : triples) {
    const auto& p = t.predicate().value();
    if (p == vocab::kAsSentence) {
      if (auto u = as_aida(t.object())) asserting_[*u].push_back(s.np.uri);
    } else if (p == vocab::kHasSameMeaning || p == vocab::kHasRelatedMeaning) {
      auto a = as_aida(t.subject());
      auto b = as_aida(t.object());
      if (!a || !b || *a == *b) continue;
      const auto rel = p == vocab::kHasSameMeaning ? RelationKind::SameMeaning
                                                   : RelationKind::RelatedMeaning;
      Link l{*a, *b, rel, s.np.uri, s.seq};
      links_[*a].push_back(l);
      links_[*b].push_back(std::move(l));
    } else if (p == vocab::kRdfType && t.subject().is_iri() &&
               (t.object().value() == vocab::kPerson || t.object().value() == vocab::kBot)) {
      const auto& iri = t.subject().value();
      if (agents_.count(iri)) continue;
      Agent a{iri, "", t.object().value() == vocab::kBot ? AgentKind::Bot : AgentKind::Person};
      for (const auto& u : triples)
        if (u.subject() == t.subject() && u.predicate().value() == vocab::kRdfsLabel)
          a.display_name = u.object().value();
      agents_.emplace(iri, std::make_pair(std::move(a), s.np.uri));
    }
  }

  // An opinion is a nanopublication asserting exactly one opinion triple.
  if (triples.size() == 1) {
    const auto& t = *triples.begin();
    for (auto k : {OpinionKind::Agrees, OpinionKind::Disagrees, OpinionKind::IsConvinced,
                   OpinionKind::IsNotConvinced}) {
      if (t.predicate().value() != opinion_predicate(k) || !t.subject().is_iri()) continue;
      if (auto stmt = as_aida(t.object())) {
        Opinion o{t.subject().value(), *stmt, k, s.np.uri,
                  prov ? prov->generated_at : s.stored_at};
        opinions_[*stmt].emplace_back(s.seq, std::move(o));
      }
    }
  }
}

Receipt PortalService::register_agent(const Agent& agent) {
  if (agent.iri.empty() || !rdf::is_absolute_iri(agent.iri))
    throw Error(Errc::InvalidArgument, "agent IRI must be absolute: " + agent.iri);
  std::unique_lock lock(mu_);
  if (const auto it = agents_.find(agent.iri); it != agents_.end()) {
    if (it->second.first != agent)
      throw Error(Errc::DuplicateAgent, "agent already registered: " + agent.iri);
    return {it->second.second, store_.at(it->second.second).stored_at, false};
  }
  const auto subject = rdf::Term::iri(agent.iri);
  std::vector<rdf::Triple> assertion{
      rdf::Triple(subject, rdf::Term::iri(vocab::kRdfType),
                  rdf::Term::iri(agent.kind == AgentKind::Bot ? vocab::kBot : vocab::kPerson))};
  if (!agent.display_name.empty())
    assertion.emplace_back(subject, rdf::Term::iri(vocab::kRdfsLabel),
                           rdf::Term::literal(agent.display_name));
  Provenance prov;
  prov.attributed_to = agent.iri;
  prov.generated_at = options_.clock();
  prov.channel = Channel::MetaUser;
  return publish_locked(build_assertion_nanopub(assertion, prov, ""), std::nullopt, true);
}

Opinion PortalService::post_opinion(std::string_view agent, const AidaUri& statement,
                                    OpinionKind kind) {
  std::unique_lock lock(mu_);
  if (!agents_.count(agent)) throw Error(Errc::UnknownAgent, "unknown agent: " + std::string(agent));
  Provenance prov;
  prov.attributed_to = std::string(agent);
  prov.generated_at = options_.clock();
  prov.channel = Channel::MetaUser;
  const auto np = build_assertion_nanopub(
      {rdf::Triple(rdf::Term::iri(agent), rdf::Term::iri(opinion_predicate(kind)),
                   rdf::Term::iri(statement.str()))},
      prov, "op" + std::to_string(order_.size()));  // a repeated click is a new nanopub
  const auto receipt = publish_locked(np, std::nullopt, true);
  return Opinion{std::string(agent), statement, kind, receipt.uri, prov.generated_at};
}

Receipt PortalService::link_statements(std::string_view agent, const AidaUri& a,
                                       const AidaUri& b, RelationKind relation) {
  if (a == b) throw Error(Errc::SelfLink, "cannot link a statement to itself");
  std::unique_lock lock(mu_);
  if (!agents_.count(agent)) throw Error(Errc::UnknownAgent, "unknown agent: " + std::string(agent));
  Provenance prov;
  prov.attributed_to = std::string(agent);
  prov.generated_at = options_.clock();
  prov.channel = Channel::MetaUser;
  const auto np = build_assertion_nanopub(
      {rdf::Triple(rdf::Term::iri(a.str()), rdf::Term::iri(relation_predicate(relation)),
                   rdf::Term::iri(b.str()))},
      prov, "");
  return publish_locked(np, std::nullopt, true);
}

StatementView PortalService::get_statement(const AidaUri& uri) const {
  std::shared_lock lock(mu_);
  StatementView v{uri.sentence(), uri, {}, {}, {}};
  if (const auto it = asserting_.find(uri); it != asserting_.end())
    for (const auto& np_uri : it->second)
      v.asserting_nanopubs.push_back({np_uri, read_provenance(store_.at(np_uri).np)});

  if (const auto it = links_.find(uri); it != links_.end()) {
    std::vector<std::pair<std::size_t, RelatedEntry>> rows;
    for (const auto& l : it->second) {
      const auto prov = read_provenance(store_.at(l.nanopub_uri).np);
      RelatedEntry e{l.a == uri ? l.b : l.a, l.relation, l.nanopub_uri,
                     prov ? prov->attributed_to : std::string(),
                     prov ? std::optional<Channel>(prov->channel) : std::nullopt};
      rows.emplace_back(l.seq, std::move(e));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
      const bool xb = x.second.channel == Channel::Bot;
      const bool yb = y.second.channel == Channel::Bot;
      if (xb != yb) return !xb;
      return x.first < y.first;
    });
    for (auto& [seq, e] : rows) v.related.push_back(std::move(e));
  }

  if (const auto it = opinions_.find(uri); it != opinions_.end()) {
    std::map<std::string, const std::pair<std::size_t, Opinion>*> latest;
    for (const auto& o : it->second) {
      auto& slot = latest[o.second.agent];
      if (!slot || slot->first < o.first) slot = &o;
    }
    std::vector<const std::pair<std::size_t, Opinion>*> rows;
    for (const auto& [agent, o] : latest) rows.push_back(o);
    std::sort(rows.begin(), rows.end(), [](auto* x, auto* y) { return x->first < y->first; });
    for (auto* o : rows) v.opinions.push_back(o->second);
  }
  return v;
}

StatementView PortalService::get_statement(std::string_view uri) const {
  std::optional<AidaUri> parsed;
  try {
    parsed = AidaUri::parse(uri);
  } catch (const Error& e) {
    throw Error(Errc::MalformedUri, e.what());
  }
  return get_statement(*parsed);
}

std::vector<SearchHit> PortalService::search_sentences(std::string_view query,
                                                       std::size_t limit) const {
  std::map<std::string, double> tf;
  for (auto& t : tokenize(query)) tf[std::move(t)] += 1.0;
  if (tf.empty() || limit == 0) return {};

  std::vector<AidaUri> uris;
  std::vector<AidaSentence> sentences;
  {
    std::shared_lock lock(mu_);
    for (const auto& [uri, nps] : asserting_) {
      uris.push_back(uri);
      sentences.push_back(uri.sentence());
    }
  }
  if (sentences.empty()) return {};
  const auto model = TfidfModel::fit(sentences);
  const auto q = model.weigh(tf);
  std::vector<SearchHit> hits;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const double score = dot(q, model.transform(sentences[i]).weights);
    if (score > 0.0) hits.push_back({uris[i], std::min(score, 1.0)});
  }
  std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.uri < b.uri;
  });
  if (hits.size() > limit) hits.erase(hits.begin() + static_cast<std::ptrdiff_t>(limit), hits.end());
  return hits;
}

std::optional<Nanopublication> PortalService::get_nanopub(std::string_view uri) const {
  std::shared_lock lock(mu_);
  const auto it = store_.find(uri);
  if (it == store_.end()) return std::nullopt;
  return it->second.np;
}

std::optional<Agent> PortalService::agent(std::string_view iri) const {
  std::shared_lock lock(mu_);
  const auto it = agents_.find(iri);
  if (it == agents_.end()) return std::nullopt;
  return it->second.first;
}

std::size_t PortalService::size() const {
  std::shared_lock lock(mu_);
  return store_.size();
}

}  // namespace aidapub
