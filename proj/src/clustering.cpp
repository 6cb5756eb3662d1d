#include "aidapub/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "aidapub/digest.hpp"
#include "aidapub/error.hpp"
#include "aidapub/kmeans.hpp"
#include "aidapub/vocab.hpp"

namespace aidapub {
namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest spelling that reads back exactly.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

// Nearest neighbours of corpus[x], excluding x itself.
std::vector<std::size_t> nearest(std::size_t x, std::span<const SentenceVector> corpus,
                                 std::size_t n) {
  if (n == 0) return {};
  struct Cand {
    double d;
    std::size_t i;
  };
  std::vector<Cand> c;
  c.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (i != x) c.push_back({std::round(cosine_distance(corpus[x], corpus[i]) * 1e12) / 1e12, i});
  const auto less = [&](const Cand& a, const Cand& b) {
    if (a.d != b.d) return a.d < b.d;
    if (corpus[a.i].sentence_uri != corpus[b.i].sentence_uri)
      return corpus[a.i].sentence_uri < corpus[b.i].sentence_uri;
    return a.i < b.i;
  };
  n = std::min(n, c.size());
  std::partial_sort(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n), c.end(), less);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j) out.push_back(c[j].i);
  return out;
}

std::size_t index_of(const AidaUri& x, std::span<const SentenceVector> corpus) {
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (corpus[i].sentence_uri == x) return i;
  throw Error(Errc::NotFound, "sentence not in corpus: " + x.str());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

// Densify the unit-normalized vectors of `env` over their joint vocabulary.
std::vector<DenseVector> densify(const std::vector<std::size_t>& env,
                                 std::span<const SentenceVector> corpus) {
  std::map<TermId, std::size_t> dims;
  for (auto i : env)
    for (const auto& [id, w] : corpus[i].weights) dims.emplace(id, 0);
  std::size_t next = 0;
  for (auto& [id, d] : dims) d = next++;
  std::vector<DenseVector> pts;
  pts.reserve(env.size());
  for (auto i : env) {
    DenseVector p(dims.size(), 0.0);
    const double norm = corpus[i].norm;
    for (const auto& [id, w] : corpus[i].weights) p[dims[id]] = norm > 0 ? w / norm : 0.0;
    pts.push_back(std::move(p));
  }
  return pts;
}

std::uint64_t uri_hash(const AidaUri& u) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : u.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

void ClusterParams::check() const {
  if (k == 0) throw Error(Errc::InvalidArgument, "k must be positive");
  if (n1 < k) throw Error(Errc::InvalidArgument, "n1 must be at least k");
  if (repetitions == 0) throw Error(Errc::InvalidArgument, "repetitions must be at least 1");
  if (!(tau > 0.0)) throw Error(Errc::InvalidArgument, "tau must be positive");
  if (!(quorum > 0.0 && quorum <= 1.0))
    throw Error(Errc::InvalidArgument, "quorum must lie in (0, 1]");
  if (max_iterations == 0) throw Error(Errc::InvalidArgument, "max_iterations must be positive");
}

std::string ClusterParams::canonical() const {
  std::ostringstream o;
  o << "n1=" << n1 << ";n2=" << n2 << ";k=" << k << ";R=" << repetitions
    << ";tau=" << fmt_double(tau) << ";quorum=" << fmt_double(quorum) << ";seed=" << seed
    << ";max_iterations=" << max_iterations << ";distance=cosine";
  return o.str();
}

std::string ClusterParams::digest() const { return sha256_hex(canonical()); }

std::vector<std::size_t> local_environment(std::size_t x, std::span<const SentenceVector> corpus,
                                           const ClusterParams& params) {
  if (x >= corpus.size()) throw Error(Errc::NotFound, "base index out of range");
  if (corpus.size() <= params.n1)
    throw Error(Errc::CorpusTooSmall, "corpus of " + std::to_string(corpus.size()) +
                                          " sentences needs more than n1=" +
                                          std::to_string(params.n1));
  std::set<std::size_t> env{x};
  for (auto i : nearest(x, corpus, params.n1)) {
    env.insert(i);
    for (auto j : nearest(i, corpus, params.n2)) env.insert(j);
  }
  return {env.begin(), env.end()};
}

std::vector<std::size_t> local_environment(const AidaUri& x,
                                           std::span<const SentenceVector> corpus,
                                           const ClusterParams& params) {
  return local_environment(index_of(x, corpus), corpus, params);
}

Cluster cluster_point(std::size_t x, std::span<const SentenceVector> corpus,
                      const ClusterParams& params) {
  params.check();
  const auto env = local_environment(x, corpus, params);
  const auto pts = densify(env, corpus);
  const auto xpos = static_cast<std::size_t>(std::find(env.begin(), env.end(), x) - env.begin());

  std::vector<std::size_t> votes(env.size(), 0);
  for (std::size_t run = 0; run < params.repetitions; ++run) {
    std::seed_seq seq{static_cast<std::uint32_t>(params.seed),
                      static_cast<std::uint32_t>(params.seed >> 32),
                      static_cast<std::uint32_t>(uri_hash(corpus[x].sentence_uri)),
                      static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(run)};
    std::mt19937_64 rng(seq);
    const auto res = kmeans(pts, params.k, rng, params.max_iterations, KMeansMetric::Spherical);
    for (std::size_t i = 0; i < env.size(); ++i)
      if (res.assignment[i] == res.assignment[xpos]) ++votes[i];
  }

  Cluster c{corpus[x].sentence_uri, x, {}, {}, 0.0, false};
  const double need = params.quorum * static_cast<double>(params.repetitions) - 1e-9;
  std::vector<double> dists;
  for (std::size_t i = 0; i < env.size(); ++i) {
    if (static_cast<double>(votes[i]) < need) continue;
    c.member_indices.push_back(env[i]);
    if (env[i] != x) dists.push_back(cosine_distance(corpus[x], corpus[env[i]]));
  }
  c.median_distance = dists.empty() ? 1.0 : median(std::move(dists));
  c.is_isolate = c.member_indices.size() <= 1 || c.median_distance > params.tau;
  if (c.is_isolate) {
    c.member_indices.clear();
  } else {
    for (auto i : c.member_indices) c.members.push_back(corpus[i].sentence_uri);
  }
  return c;
}

Cluster cluster_point(const AidaUri& x, std::span<const SentenceVector> corpus,
                      const ClusterParams& params) {
  return cluster_point(index_of(x, corpus), corpus, params);
}

std::vector<RelationPair> mutual_pairs(std::span<const Cluster> clusters) {
  std::map<AidaUri, std::set<AidaUri>> members;
  for (const auto& c : clusters) {
    if (c.is_isolate) continue;
    members[c.base].insert(c.members.begin(), c.members.end());
  }
  std::set<RelationPair> pairs;
  for (const auto& [x, ms] : members) {
    for (const auto& y : ms) {
      if (!(x < y)) continue;
      const auto it = members.find(y);
      if (it != members.end() && it->second.count(x)) pairs.insert({x, y});
    }
  }
  return {pairs.begin(), pairs.end()};
}

ClusteringResult cluster_corpus(std::span<const SentenceVector> corpus,
                                const ClusterParams& params) {
  params.check();
  if (corpus.size() <= params.n1)
    throw Error(Errc::CorpusTooSmall, "corpus of " + std::to_string(corpus.size()) +
                                          " sentences needs more than n1=" +
                                          std::to_string(params.n1));
  ClusteringResult out;
  for (std::size_t x = 0; x < corpus.size(); ++x) out.clusters.push_back(cluster_point(x, corpus, params));
  out.pairs = mutual_pairs(out.clusters);
  return out;
}

ClusteringResult cluster_corpus(std::span<const AidaSentence> corpus,
                                const ClusterParams& params) {
  const auto vectors = vectorize(corpus);
  return cluster_corpus(std::span<const SentenceVector>(vectors), params);
}

std::vector<Nanopublication> emit_relation_nanopubs(std::span<const RelationPair> pairs,
                                                    const Provenance& prov_template) {
  if (prov_template.channel != Channel::Bot)
    throw Error(Errc::InvalidArgument, "relation proposals must use the Bot channel");
  if (prov_template.attributed_to.empty())
    throw Error(Errc::InvalidArgument, "relation proposals must name the clustering agent");
  if (!prov_template.parameters_digest)
    throw Error(Errc::InvalidArgument, "relation proposals must carry a parameters digest");
  std::vector<Nanopublication> out;
  out.reserve(pairs.size());
  const auto pred = rdf::Term::iri(vocab::kHasRelatedMeaning);
  for (const auto& p : pairs) {
    out.push_back(build_assertion_nanopub(
        {rdf::Triple(rdf::Term::iri(p.a.str()), pred, rdf::Term::iri(p.b.str()))}, prov_template,
        ""));
  }
  return out;
}

std::string clusters_csv(std::span<const Cluster> clusters) {
  std::ostringstream o;
  o << "base_uri,member_uri,d_x,isolate\n";
  const auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  };
  for (const auto& c : clusters) {
    const auto d = fmt_double(c.median_distance);
    if (c.is_isolate) {
      o << quote(c.base.str()) << ",," << d << ",true\n";
      continue;
    }
    for (const auto& m : c.members)
      o << quote(c.base.str()) << ',' << quote(m.str()) << ',' << d << ",false\n";
  }
  return o.str();
}

}  // namespace aidapub
