#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aidapub/nanopub.hpp"
#include "aidapub/rules.hpp"
#include "aidapub/tfidf.hpp"
#include "aidapub/timeutil.hpp"

namespace aidapub {

enum class AgentKind { Person, Bot };
enum class OpinionKind { Agrees, Disagrees, IsConvinced, IsNotConvinced };
enum class RelationKind { SameMeaning, RelatedMeaning };

std::string_view to_string(AgentKind k);
std::string_view to_string(OpinionKind k);
std::string_view to_string(RelationKind k);  // "hasSameMeaning" / "hasRelatedMeaning"
std::optional<AgentKind> parse_agent_kind(std::string_view s);
std::optional<OpinionKind> parse_opinion_kind(std::string_view s);
std::optional<RelationKind> parse_relation_kind(std::string_view s);
std::string_view opinion_predicate(OpinionKind k);
std::string_view relation_predicate(RelationKind k);

struct Agent {
  std::string iri;
  std::string display_name;
  AgentKind kind = AgentKind::Person;

  friend bool operator==(const Agent&, const Agent&) = default;
};

struct Receipt {
  std::string uri;
  Timestamp stored_at{};
  bool created = false;  // false when the nanopublication was already stored
};

struct Opinion {
  std::string agent;
  AidaUri statement;
  OpinionKind kind = OpinionKind::Agrees;
  std::string nanopub_uri;
  Timestamp at{};
};

struct AssertingEntry {
  std::string nanopub_uri;
  std::optional<Provenance> provenance;
};

struct RelatedEntry {
  AidaUri other;
  RelationKind relation = RelationKind::RelatedMeaning;
  std::string nanopub_uri;
  std::string agent;
  std::optional<Channel> channel;
};

struct StatementView {
  AidaSentence sentence;
  AidaUri uri;
  std::vector<AssertingEntry> asserting_nanopubs;
  /// Links in either direction; human links first, then bot proposals.
  std::vector<RelatedEntry> related;
  /// Latest opinion of each agent.
  std::vector<Opinion> opinions;
};

struct SearchHit {
  AidaUri uri;
  double score = 0.0;
};

/// Nanopublication store with statement-page views. State lives in memory
/// and, when a journal path is given, in an append-only TriG journal that is
/// replayed on construction. Safe for concurrent use.
class PortalService {
 public:
  struct Options {
    std::filesystem::path journal;  // empty: in-memory only
    Clock clock = now_utc;
  };

  PortalService();
  explicit PortalService(Options options);
  ~PortalService();
  PortalService(const PortalService&) = delete;
  PortalService& operator=(const PortalService&) = delete;

  /// Throws StructureInvalid or ConflictingContentForUri.
  Receipt publish(const Nanopublication& np);
  /// Stores an agent nanopublication. Throws DuplicateAgent when the IRI is
  /// registered with different details.
  Receipt register_agent(const Agent& agent);
  /// Throws UnknownAgent.
  Opinion post_opinion(std::string_view agent, const AidaUri& statement, OpinionKind kind);
  /// Throws UnknownAgent or SelfLink.
  Receipt link_statements(std::string_view agent, const AidaUri& a, const AidaUri& b,
                          RelationKind relation);

  StatementView get_statement(const AidaUri& uri) const;
  /// Throws MalformedUri.
  StatementView get_statement(std::string_view uri) const;
  std::vector<SearchHit> search_sentences(std::string_view query, std::size_t limit) const;
  std::optional<Nanopublication> get_nanopub(std::string_view uri) const;
  std::optional<Agent> agent(std::string_view iri) const;
  std::size_t size() const;

 private:
  struct Stored {
    Nanopublication np;
    Timestamp stored_at;
    std::size_t seq;
  };

  Receipt publish_locked(const Nanopublication& np, std::optional<Timestamp> stored_at,
                         bool write_journal);
  void index(const Stored& s);
  void replay();

  Options options_;
  mutable std::shared_mutex mu_;
  std::map<std::string, Stored, std::less<>> store_;
  std::vector<std::string> order_;
  std::map<std::string, std::pair<Agent, std::string>, std::less<>> agents_;  // -> backing np
  std::map<AidaUri, std::vector<std::string>> asserting_;  // sentence -> nanopubs
  struct Link {
    AidaUri a, b;
    RelationKind relation;
    std::string nanopub_uri;
    std::size_t seq;
  };
  std::map<AidaUri, std::vector<Link>> links_;
  std::map<AidaUri, std::vector<std::pair<std::size_t, Opinion>>> opinions_;
  std::map<std::string, std::size_t, std::less<>> seq_of_;
};

}  // namespace aidapub
