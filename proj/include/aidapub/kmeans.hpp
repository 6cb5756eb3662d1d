#pragma once

#include <cstddef>
#include <random>
#include <vector>

namespace aidapub {

using DenseVector = std::vector<double>;

struct KMeansResult {
  std::vector<std::size_t> assignment;  // cluster index per point
  std::vector<DenseVector> centroids;
  /// Within-cluster sum of squares after each assignment step.
  std::vector<double> wcss_history;
  std::size_t iterations = 0;
  bool converged = false;
};

double squared_distance(const DenseVector& a, const DenseVector& b);

/// k-means++ seeding (D^2 sampling) from `rng`. Returns fewer than k
/// centroids only when there are fewer than k distinct points.
std::vector<DenseVector> kmeanspp_seed(const std::vector<DenseVector>& points, std::size_t k,
                                       std::mt19937_64& rng);

/// Euclidean: centroids are cluster means. Spherical: means rescaled to unit
/// length, which for unit-length points is k-means under cosine distance.
enum class KMeansMetric { Euclidean, Spherical };

/// Lloyd iterations. A centroid that loses all its points is moved to the
/// point farthest from where it was.
KMeansResult kmeans(const std::vector<DenseVector>& points, std::size_t k, std::mt19937_64& rng,
                    std::size_t max_iterations = 100,
                    KMeansMetric metric = KMeansMetric::Euclidean);

}  // namespace aidapub
