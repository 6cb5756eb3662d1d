#pragma once

// Fixtures, generators and oracles shared by the unit tests and the
// acceptance runner.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aidapub/clustering.hpp"
#include "aidapub/nanopub.hpp"
#include "aidapub/rules.hpp"
#include "aidapub/validate.hpp"

namespace aidapub::testing {

std::filesystem::path data_path(std::string_view name);
std::string read_file(const std::filesystem::path& path);

Timestamp fixed_time();
Provenance curator_provenance();

/// Text that satisfies every AidaSentence invariant and is already NFC:
/// ASCII words, punctuation (including "+", "%", "<", quotes) and
/// non-ASCII letters from several scripts.
std::string random_sentence_text(std::mt19937_64& rng);

/// A structurally valid nanopublication. Roughly half are AIDA nanopubs
/// (some formalized with nested subgraphs), the rest plain assertions.
/// Literals cover escapes, language tags and datatypes.
Nanopublication random_nanopub(std::mt19937_64& rng);

/// Assertion container with a head graph, a body, and a chain of two
/// nested subgraphs below the body, together with the hand-enumerated
/// content of the closure.
struct ClosureFixture {
  Nanopublication np;
  std::set<rdf::Triple> expected;
};
ClosureFixture depth3_fixture();

/// Same layout, but the innermost graph points back at the body.
Nanopublication cyclic_fixture();

/// One hand label of a GeneRIF fixture line.
struct Label {
  std::size_t line = 0;
  Verdict verdict = Verdict::Perfect;
  std::set<Violation> violations;
  std::optional<std::string> rejecting_rule;
  std::optional<std::string> strip_rule;
  std::string text;  // expected text after stripping
  bool accepted() const { return verdict != Verdict::NotAida; }
};
std::vector<Label> load_labels(const std::filesystem::path& path);

struct PlantedSentence {
  std::string group;
  std::string text;
};
std::vector<PlantedSentence> load_planted_corpus();

struct PairScore {
  std::size_t pairs = 0;
  double purity = 0.0;        // share of proposed pairs inside one group
  double connectivity = 0.0;  // share of sentences linked to a group mate
};
PairScore score_pairs(const std::vector<RelationPair>& pairs,
                      const std::map<AidaUri, std::string>& group_of);

/// Small corpora with a planted partition, given as explicit term counts.
/// In every corpus each group owns a private vocabulary and all groups
/// share one background term, so inter-group distances exceed twice the
/// intra-group ones.
struct OracleCorpus {
  std::string name;
  std::vector<SentenceVector> vectors;
  std::vector<std::size_t> group;  // ground-truth group per point
};
std::vector<OracleCorpus> oracle_family();

/// Searches all partitions of the corpus into three blocks for the ones in
/// which every intra-block distance is under half of every inter-block
/// distance. Returns a block label per point when exactly one exists.
std::optional<std::vector<std::size_t>> brute_force_partition(const OracleCorpus& c);
/// Indices sharing x's label, ascending.
std::vector<std::size_t> block_of(const std::vector<std::size_t>& labels, std::size_t x);

/// Cluster parameters suited to a corpus of `n` points.
ClusterParams small_corpus_params(std::size_t n);

/// Corpora for the isolate rule: sentences sharing no word, and one
/// sentence repeated.
std::vector<AidaSentence> orthogonal_corpus(std::size_t n);
std::vector<AidaSentence> duplicate_corpus(std::size_t n);

}  // namespace aidapub::testing
