#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aidapub/clustering.hpp"
#include "aidapub/kmeans.hpp"
#include "aidapub/trig.hpp"
#include "aidapub/vocab.hpp"
#include "errc_matchers.hpp"
#include "support.hpp"

namespace aidapub {
namespace {

using Indices = std::vector<std::size_t>;

AidaUri uri_of(const std::string& text) { return encode_uri(AidaSentence::make(text)); }

// Unit vectors in the plane at the given angles (degrees).
std::vector<SentenceVector> angles(std::initializer_list<double> degrees) {
  std::vector<SentenceVector> out;
  std::size_t i = 0;
  for (double deg : degrees) {
    const double r = deg * std::numbers::pi / 180.0;
    out.push_back(SentenceVector::from_weights(uri_of("Point " + std::to_string(i++) + "."),
                                               {{0, std::cos(r)}, {1, std::sin(r)}}));
  }
  return out;
}

TEST(KMeans, WcssNonIncreasing) {
  for (auto metric : {KMeansMetric::Euclidean, KMeansMetric::Spherical}) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> n(0.0, 1.0);
      std::vector<DenseVector> pts(30, DenseVector(4));
      for (auto& p : pts) {
        double sq = 0.0;
        for (auto& x : p) {
          x = std::abs(n(rng));
          sq += x * x;
        }
        if (metric == KMeansMetric::Spherical) {
          for (auto& x : p) x /= std::sqrt(sq);
        }
      }
      const auto res = kmeans(pts, 2 + seed % 4, rng, 50, metric);
      ASSERT_FALSE(res.wcss_history.empty());
      EXPECT_LE(res.iterations, 50u);
      for (std::size_t i = 1; i < res.wcss_history.size(); ++i) {
        EXPECT_LE(res.wcss_history[i], res.wcss_history[i - 1] + 1e-9) << "seed " << seed;
      }
      EXPECT_EQ(res.assignment.size(), pts.size());
    }
  }
}

TEST(KMeans, SeparatesObviousClusters) {
  std::vector<DenseVector> pts = {{0, 0}, {0, 1}, {10, 10}, {10, 11}, {20, 0}, {21, 0}};
  std::mt19937_64 rng(1);
  const auto res = kmeans(pts, 3, rng);
  EXPECT_TRUE(res.converged);
  EXPECT_EQ(res.assignment[0], res.assignment[1]);
  EXPECT_EQ(res.assignment[2], res.assignment[3]);
  EXPECT_EQ(res.assignment[4], res.assignment[5]);
  EXPECT_NE(res.assignment[0], res.assignment[2]);
  EXPECT_NE(res.assignment[2], res.assignment[4]);
}

TEST(KMeans, FewerDistinctPointsThanK) {
  std::vector<DenseVector> pts(5, DenseVector{1.0, 2.0});
  std::mt19937_64 rng(1);
  EXPECT_EQ(kmeanspp_seed(pts, 3, rng).size(), 1u);
  const auto res = kmeans(pts, 3, rng);
  for (auto a : res.assignment) EXPECT_EQ(a, res.assignment[0]);
}

TEST(LocalEnvironment, HandPlacedPoints) {
  // Angles 0, 10, 25, 60, 90 degrees; cosine distance grows with the angle
  // between points. From X=3 (60): nearest are 4 (30 apart) and 2 (35).
  // Nearest of 4 is 3; nearest of 2 is 1 (15 apart).
  const auto pts = angles({0, 10, 25, 60, 90});
  ClusterParams p;
  p.k = 2;
  p.n1 = 2;
  p.n2 = 1;
  EXPECT_EQ(local_environment(3, pts, p), (Indices{1, 2, 3, 4}));
  // From X=0: nearest are 1 and 2; their nearest are each other and 0.
  EXPECT_EQ(local_environment(0, pts, p), (Indices{0, 1, 2}));
  p.n2 = 0;
  EXPECT_EQ(local_environment(3, pts, p), (Indices{2, 3, 4}));
  EXPECT_EQ(local_environment(pts[3].sentence_uri, pts, p), (Indices{2, 3, 4}));
}

TEST(LocalEnvironment, Errors) {
  const auto pts = angles({0, 10, 25});
  ClusterParams p;
  p.k = 1;
  p.n1 = 3;
  EXPECT_ERRC(local_environment(0, pts, p), Errc::CorpusTooSmall);
  p.n1 = 1;
  EXPECT_ERRC(local_environment(uri_of("Missing point."), pts, p), Errc::NotFound);
}

TEST(LocalEnvironment, DuplicateAlwaysIncluded) {
  auto pts = angles({0, 1, 2, 3, 50, 0});
  pts[5].sentence_uri = pts[0].sentence_uri;
  ClusterParams p;
  p.k = 1;
  p.n1 = 1;
  p.n2 = 0;
  EXPECT_EQ(local_environment(0, pts, p), (Indices{0, 5}));
}

TEST(ClusterPoint, PlantedThreeByFour) {
  const auto family = testing::oracle_family();
  const auto it = std::find_if(family.begin(), family.end(),
                               [](const auto& c) { return c.name.ends_with("-4/4/4"); });
  ASSERT_NE(it, family.end());
  const auto& c = *it;
  // Every point of group 0 is closer to point 0 than any point elsewhere.
  double worst_in = 0.0, best_out = 1.0;
  for (std::size_t i = 1; i < c.vectors.size(); ++i) {
    const double d = cosine_distance(c.vectors[0], c.vectors[i]);
    if (c.group[i] == 0) {
      worst_in = std::max(worst_in, d);
    } else {
      best_out = std::min(best_out, d);
    }
  }
  ASSERT_LT(worst_in, best_out);
  auto p = testing::small_corpus_params(c.vectors.size());
  p.tau = 0.9;
  const auto cl = cluster_point(0, c.vectors, p);
  EXPECT_FALSE(cl.is_isolate);
  EXPECT_EQ(cl.member_indices, (Indices{0, 1, 2, 3}));
  EXPECT_EQ(cl.members.size(), 4u);
  EXPECT_LE(cl.median_distance, worst_in);
}

TEST(ClusterPoint, OracleFamily) {
  for (const auto& c : testing::oracle_family()) {
    ASSERT_LE(c.vectors.size(), 12u);
    const auto labels = testing::brute_force_partition(c);
    ASSERT_TRUE(labels) << c.name;
    const auto params = testing::small_corpus_params(c.vectors.size());
    for (std::size_t x = 0; x < c.vectors.size(); ++x) {
      const auto truth = testing::block_of(*labels, x);
      EXPECT_EQ(truth, testing::block_of(c.group, x)) << c.name;
      const auto cl = cluster_point(x, c.vectors, params);
      EXPECT_EQ(cl.member_indices, truth) << c.name << " x=" << x;
    }
  }
}

TEST(ClusterPoint, OrthogonalIsIsolate) {
  const auto corpus = testing::orthogonal_corpus(30);
  const auto res = cluster_corpus(std::span<const AidaSentence>(corpus), ClusterParams{});
  for (const auto& c : res.clusters) {
    EXPECT_TRUE(c.is_isolate);
    EXPECT_TRUE(c.members.empty());
    EXPECT_EQ(c.median_distance, 1.0);
  }
  EXPECT_TRUE(res.pairs.empty());
}

TEST(ClusterPoint, DuplicatesCollapse) {
  const auto corpus = testing::duplicate_corpus(25);
  const auto res = cluster_corpus(std::span<const AidaSentence>(corpus), ClusterParams{});
  for (const auto& c : res.clusters) {
    EXPECT_FALSE(c.is_isolate);
    EXPECT_EQ(c.median_distance, 0.0);
    EXPECT_EQ(c.member_indices.size(), 21u);  // X plus its 20 nearest entries
  }
  EXPECT_TRUE(res.pairs.empty());
}

std::vector<AidaSentence> planted_sentences() {
  std::vector<AidaSentence> out;
  for (const auto& p : testing::load_planted_corpus()) out.push_back(AidaSentence::make(p.text));
  return out;
}

TEST(ClusterCorpus, PlantedGroups) {
  const auto planted = testing::load_planted_corpus();
  std::map<AidaUri, std::string> group_of;
  for (const auto& p : planted) group_of[uri_of(p.text)] = p.group;
  const auto corpus = planted_sentences();
  const auto res = cluster_corpus(std::span<const AidaSentence>(corpus), ClusterParams{});
  const auto score = testing::score_pairs(res.pairs, group_of);
  EXPECT_GE(score.purity, 0.95);
  EXPECT_GE(score.connectivity, 0.80);

  const RelationPair sbp{std::min(uri_of(planted[0].text), uri_of(planted[1].text)),
                         std::max(uri_of(planted[0].text), uri_of(planted[1].text))};
  EXPECT_NE(std::find(res.pairs.begin(), res.pairs.end(), sbp), res.pairs.end());

  for (const auto& c : res.clusters) {
    // A singleton has d_X = 1, so with tau < 1 both isolate causes show in d_X.
    EXPECT_EQ(c.is_isolate, c.median_distance > 0.65);
    if (!c.is_isolate) {
      EXPECT_NE(std::find(c.members.begin(), c.members.end(), c.base), c.members.end());
    }
  }
  EXPECT_TRUE(std::is_sorted(res.pairs.begin(), res.pairs.end()));
}

TEST(ClusterCorpus, DeterministicForSeed) {
  const auto corpus = planted_sentences();
  const auto a = cluster_corpus(std::span<const AidaSentence>(corpus), ClusterParams{});
  const auto b = cluster_corpus(std::span<const AidaSentence>(corpus), ClusterParams{});
  EXPECT_EQ(clusters_csv(a.clusters), clusters_csv(b.clusters));
  EXPECT_EQ(a.pairs, b.pairs);
}

TEST(ClusterCorpus, ScalingCountsChangesNothing) {
  const auto corpus = planted_sentences();
  const auto model = TfidfModel::fit(corpus);
  std::vector<SentenceVector> base, scaled;
  for (const auto& s : corpus) {
    std::map<std::string, double> tf, tf7;
    for (const auto& t : tokenize(s)) {
      tf[t] += 1.0;
      tf7[t] += 7.0;
    }
    base.push_back(model.transform_counts(encode_uri(s), tf));
    scaled.push_back(model.transform_counts(encode_uri(s), tf7));
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = 0; j < base.size(); ++j) {
      EXPECT_NEAR(cosine_distance(base[i], base[j]), cosine_distance(scaled[i], scaled[j]), 1e-12);
    }
  }
  const auto a = cluster_corpus(std::span<const SentenceVector>(base), ClusterParams{});
  const auto b = cluster_corpus(std::span<const SentenceVector>(scaled), ClusterParams{});
  ASSERT_EQ(a.clusters.size(), b.clusters.size());
  for (std::size_t i = 0; i < a.clusters.size(); ++i) {
    EXPECT_EQ(a.clusters[i].member_indices, b.clusters[i].member_indices);
    EXPECT_EQ(a.clusters[i].is_isolate, b.clusters[i].is_isolate);
  }
  EXPECT_EQ(a.pairs, b.pairs);
}

TEST(ClusterParams, CheckAndCanonical) {
  ClusterParams p;
  EXPECT_NO_THROW(p.check());
  EXPECT_EQ(p.canonical(),
            "n1=20;n2=10;k=3;R=10;tau=0.65;quorum=0.5;seed=42;max_iterations=100;distance=cosine");
  EXPECT_EQ(p.digest().size(), 64u);
  auto bad = p;
  bad.n1 = 2;
  EXPECT_ERRC(bad.check(), Errc::InvalidArgument);
  bad = p;
  bad.repetitions = 0;
  EXPECT_ERRC(bad.check(), Errc::InvalidArgument);
  bad = p;
  bad.tau = 0.0;
  EXPECT_ERRC(bad.check(), Errc::InvalidArgument);
  bad = p;
  bad.quorum = 1.5;
  EXPECT_ERRC(bad.check(), Errc::InvalidArgument);
  EXPECT_ERRC(cluster_corpus(std::span<const AidaSentence>(testing::orthogonal_corpus(20)), p),
              Errc::CorpusTooSmall);
}

TEST(MutualPairs, RequiresBothDirections) {
  const auto a = uri_of("A binds B."), b = uri_of("B binds C."), c = uri_of("C binds D.");
  std::vector<Cluster> clusters = {
      {a, 0, {0, 1, 2}, {a, b, c}, 0.1, false},
      {b, 1, {0, 1}, {a, b}, 0.1, false},
      {c, 2, {}, {}, 0.9, true},
  };
  EXPECT_EQ(mutual_pairs(clusters), (std::vector<RelationPair>{{std::min(a, b), std::max(a, b)}}));
}

Provenance bot() {
  Provenance p;
  p.attributed_to = "http://example.org/agent/clusterer";
  p.generated_at = testing::fixed_time();
  p.channel = Channel::Bot;
  p.parameters_digest = ClusterParams{}.digest();
  return p;
}

TEST(RelationNanopubs, OnePerPair) {
  const auto a = uri_of("Malaria is transmitted by mosquitoes.");
  const auto b = uri_of("Mosquitoes transmit malaria.");
  const std::vector<RelationPair> pairs = {{std::min(a, b), std::max(a, b)}};
  const auto nps = emit_relation_nanopubs(pairs, bot());
  ASSERT_EQ(nps.size(), 1u);
  const auto triples = collect_assertion_triples(nps[0]);
  ASSERT_EQ(triples.size(), 1u);
  const auto& t = *triples.begin();
  EXPECT_EQ(t.subject().value(), pairs[0].a.str());
  EXPECT_EQ(t.predicate().value(), vocab::kHasRelatedMeaning);
  EXPECT_EQ(t.object().value(), pairs[0].b.str());
  EXPECT_EQ(read_provenance(nps[0])->parameters_digest, ClusterParams{}.digest());
  EXPECT_EQ(read_provenance(nps[0])->channel, Channel::Bot);
  EXPECT_EQ(parse_trig(serialize_trig(nps)).nanopubs, nps);
}

TEST(RelationNanopubs, RequiresBotTemplate) {
  auto p = bot();
  p.channel = Channel::Curator;
  EXPECT_ERRC(emit_relation_nanopubs({}, p), Errc::InvalidArgument);
  p = bot();
  p.parameters_digest.reset();
  EXPECT_ERRC(emit_relation_nanopubs({}, p), Errc::InvalidArgument);
}

TEST(ClustersCsv, Rows) {
  const auto a = uri_of("A binds B."), b = uri_of("B binds C.");
  std::vector<Cluster> clusters = {
      {a, 0, {0, 1}, {a, b}, 0.25, false},
      {b, 1, {}, {}, 0.75, true},
  };
  const std::string csv = clusters_csv(clusters);
  EXPECT_TRUE(csv.starts_with("base_uri,member_uri,d_x,isolate\n")) << csv;
  EXPECT_NE(csv.find(a.str() + "," + b.str() + ","), std::string::npos) << csv;
  EXPECT_NE(csv.find(b.str() + ",,"), std::string::npos) << csv;
}

}  // namespace
}  // namespace aidapub
