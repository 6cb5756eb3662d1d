#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aidapub/nanopub.hpp"
#include "aidapub/tfidf.hpp"

namespace aidapub {

struct ClusterParams {
  std::size_t n1 = 20;  // first-level nearest neighbours
  std::size_t n2 = 10;  // neighbours of each first-level neighbour
  std::size_t k = 3;
  std::size_t repetitions = 10;
  double tau = 0.65;  // isolate threshold on the median distance
  double quorum = 0.5;
  std::uint64_t seed = 42;
  std::size_t max_iterations = 100;

  /// Throws InvalidArgument when the invariants do not hold.
  void check() const;
  /// Stable textual form, e.g. "n1=20;n2=10;k=3;R=10;tau=0.65;quorum=0.5;seed=42".
  std::string canonical() const;
  /// sha-256 of canonical().
  std::string digest() const;
};

/// Cluster around corpus entry `base_index`. Members are corpus indices (an
/// identical sentence may appear more than once); `members` holds their URIs.
struct Cluster {
  AidaUri base;
  std::size_t base_index = 0;
  std::vector<std::size_t> member_indices;  // ascending, empty when isolate
  std::vector<AidaUri> members;
  double median_distance = 0.0;
  bool is_isolate = false;
};

struct RelationPair {
  AidaUri a;  // a < b
  AidaUri b;

  friend bool operator==(const RelationPair&, const RelationPair&) = default;
  friend auto operator<=>(const RelationPair&, const RelationPair&) = default;
};

struct ClusteringResult {
  std::vector<Cluster> clusters;  // corpus order
  std::vector<RelationPair> pairs;  // sorted, unique
};

/// Indices of X, its n1 nearest neighbours and each neighbour's n2 nearest
/// neighbours, ascending. Ties go to the smaller URI, then the smaller index.
/// Throws CorpusTooSmall when the corpus has no more than n1 entries.
std::vector<std::size_t> local_environment(std::size_t x, std::span<const SentenceVector> corpus,
                                           const ClusterParams& params);
/// Same, keyed by URI (first entry with that URI). Throws NotFound.
std::vector<std::size_t> local_environment(const AidaUri& x,
                                           std::span<const SentenceVector> corpus,
                                           const ClusterParams& params);

Cluster cluster_point(std::size_t x, std::span<const SentenceVector> corpus,
                      const ClusterParams& params);
Cluster cluster_point(const AidaUri& x, std::span<const SentenceVector> corpus,
                      const ClusterParams& params);

/// Pairs (X, Y) with Y in C_X and X in C_Y, both clusters kept. Sentences
/// are compared by URI, so repeated entries of one sentence pair up with
/// nothing.
std::vector<RelationPair> mutual_pairs(std::span<const Cluster> clusters);

/// cluster_point for every entry, then mutual_pairs.
ClusteringResult cluster_corpus(std::span<const SentenceVector> corpus,
                                const ClusterParams& params);
ClusteringResult cluster_corpus(std::span<const AidaSentence> corpus, const ClusterParams& params);

/// One relation proposal per pair: (a npx:hasRelatedMeaning b). The template
/// must use the Bot channel and carry a parameters digest.
std::vector<Nanopublication> emit_relation_nanopubs(std::span<const RelationPair> pairs,
                                                    const Provenance& prov_template);

/// base_uri,member_uri,d_x,isolate rows; isolates get one row with an empty
/// member column.
std::string clusters_csv(std::span<const Cluster> clusters);

}  // namespace aidapub
