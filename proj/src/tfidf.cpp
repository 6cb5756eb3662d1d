#include "aidapub/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "aidapub/error.hpp"
#include "aidapub/unicode.hpp"

namespace aidapub {
namespace {

TermId fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  const auto cps = unicode::codepoints(unicode::to_lower(text));
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i];
    if (unicode::is_alnum(c)) {
      cur += unicode::encode(c);
      continue;
    }
    const bool next_alnum = i + 1 < cps.size() && unicode::is_alnum(cps[i + 1]);
    if (!cur.empty() && next_alnum) {
      if (c == U'-') {
        cur += '-';
        continue;
      }
      if (c == U'.' && is_digit(cps[i - 1]) && is_digit(cps[i + 1])) {
        cur += '.';
        continue;
      }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

SentenceVector SentenceVector::from_weights(AidaUri uri, std::map<TermId, double> weights) {
  SentenceVector v{std::move(uri), {}, 0.0};
  double sq = 0.0;
  for (const auto& [id, w] : weights) {
    if (w == 0.0) continue;
    if (w < 0.0 || !std::isfinite(w))
      throw Error(Errc::InvalidArgument, "term weights must be finite and non-negative");
    v.weights.emplace_back(id, w);
    sq += w * w;
  }
  v.norm = std::sqrt(sq);
  return v;
}

SentenceVector SentenceVector::normalized() const {
  SentenceVector v = *this;
  if (norm == 0.0) return v;
  double sq = 0.0;
  for (auto& [id, w] : v.weights) {
    w /= norm;
    sq += w * w;
  }
  v.norm = std::sqrt(sq);
  return v;
}

double dot(const SentenceVector& a, const SentenceVector& b) { return dot(a.weights, b.weights); }

double dot(std::span<const std::pair<TermId, double>> a,
           std::span<const std::pair<TermId, double>> b) {
  double s = 0.0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) ++i;
    else if (j->first < i->first) ++j;
    else {
      s += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return s;
}

double cosine_distance(const SentenceVector& a, const SentenceVector& b) {
  if (a.norm == 0.0 || b.norm == 0.0) return a.norm == b.norm ? 0.0 : 1.0;
  const double d = 1.0 - dot(a, b) / (a.norm * b.norm);
  return std::clamp(d, 0.0, 1.0);
}

TfidfModel TfidfModel::fit(std::span<const AidaSentence> corpus) {
  if (corpus.empty()) throw Error(Errc::EmptyCorpus, "cannot fit tf-idf on an empty corpus");
  TfidfModel m;
  m.n_ = corpus.size();
  for (const auto& s : corpus) {
    const auto toks = tokenize(s);
    for (const auto& t : std::set<std::string>(toks.begin(), toks.end())) ++m.df_[t];
  }
  TermId next = 0;
  for (const auto& [term, df] : m.df_) m.ids_.emplace(term, next++);
  return m;
}

std::size_t TfidfModel::df(std::string_view term) const {
  const auto it = df_.find(std::string(term));
  return it == df_.end() ? 0 : it->second;
}

double TfidfModel::idf(std::string_view term) const {
  return std::log((1.0 + static_cast<double>(n_)) / (1.0 + static_cast<double>(df(term)))) + 1.0;
}

TermId TfidfModel::term_id(std::string_view term) const {
  const auto it = ids_.find(term);
  if (it != ids_.end()) return it->second;
  return (TermId{1} << 63) | fnv1a(term);
}

SentenceVector TfidfModel::transform_counts(AidaUri uri,
                                            const std::map<std::string, double>& tf) const {
  std::map<TermId, double> w;
  for (const auto& [term, count] : tf) w[term_id(term)] += count * idf(term);
  return SentenceVector::from_weights(std::move(uri), std::move(w)).normalized();
}

std::vector<std::pair<TermId, double>> TfidfModel::weigh(
    const std::map<std::string, double>& tf) const {
  std::map<TermId, double> w;
  for (const auto& [term, count] : tf) w[term_id(term)] += count * idf(term);
  double sq = 0.0;
  for (const auto& [id, x] : w) sq += x * x;
  std::vector<std::pair<TermId, double>> out;
  if (sq == 0.0) return out;
  const double norm = std::sqrt(sq);
  for (const auto& [id, x] : w)
    if (x != 0.0) out.emplace_back(id, x / norm);
  return out;
}

SentenceVector TfidfModel::transform(const AidaSentence& sentence) const {
  std::map<std::string, double> tf;
  for (auto& t : tokenize(sentence)) tf[std::move(t)] += 1.0;
  return transform_counts(encode_uri(sentence), tf);
}

std::vector<SentenceVector> vectorize(std::span<const AidaSentence> corpus) {
  const auto model = TfidfModel::fit(corpus);
  std::vector<SentenceVector> out;
  out.reserve(corpus.size());
  for (const auto& s : corpus) out.push_back(model.transform(s));
  return out;
}

}  // namespace aidapub
