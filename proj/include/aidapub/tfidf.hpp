#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aidapub/sentence.hpp"

namespace aidapub {

using TermId = std::uint64_t;

/// Lowercased word tokens in order. Letters and digits form words; a hyphen
/// between two word characters and a dot between two digits stay inside
/// the token ("x-linked", "2.5").
std::vector<std::string> tokenize(std::string_view text);
inline std::vector<std::string> tokenize(const AidaSentence& s) { return tokenize(s.text()); }

/// Sparse weight vector sorted by term id.
struct SentenceVector {
  AidaUri sentence_uri;
  std::vector<std::pair<TermId, double>> weights;
  double norm = 0.0;  // Euclidean norm of weights

  /// Builds from raw weights (merging repeated ids, dropping zeros).
  static SentenceVector from_weights(AidaUri uri, std::map<TermId, double> weights);
  SentenceVector normalized() const;
};

double dot(const SentenceVector& a, const SentenceVector& b);
double dot(std::span<const std::pair<TermId, double>> a,
           std::span<const std::pair<TermId, double>> b);
/// 1 - cos(a, b), clamped to [0, 1]. Zero vectors are at distance 1 from
/// everything except each other.
double cosine_distance(const SentenceVector& a, const SentenceVector& b);

class TfidfModel {
 public:
  /// Throws EmptyCorpus.
  static TfidfModel fit(std::span<const AidaSentence> corpus);

  std::size_t document_count() const noexcept { return n_; }
  const std::map<std::string, std::size_t>& document_frequency() const noexcept { return df_; }
  std::size_t df(std::string_view term) const;
  /// ln((1+N)/(1+df)) + 1
  double idf(std::string_view term) const;
  /// Stable id: vocabulary index, or a hash with the top bit set when the
  /// term was not seen during fit.
  TermId term_id(std::string_view term) const;

  /// L2-normalized tf-idf weights for arbitrary term counts (e.g. a query).
  std::vector<std::pair<TermId, double>> weigh(const std::map<std::string, double>& tf) const;
  /// L2-normalized tf-idf vector.
  SentenceVector transform(const AidaSentence& sentence) const;
  /// Same, from explicit term counts (tf) rather than text.
  SentenceVector transform_counts(AidaUri uri, const std::map<std::string, double>& tf) const;

  friend bool operator==(const TfidfModel&, const TfidfModel&) = default;

 private:
  std::size_t n_ = 0;
  std::map<std::string, std::size_t> df_;
  std::map<std::string, TermId, std::less<>> ids_;
};

std::vector<SentenceVector> vectorize(std::span<const AidaSentence> corpus);

}  // namespace aidapub
