#include "aidapub/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <cmath>

#include "aidapub/error.hpp"

namespace aidapub {

double squared_distance(const DenseVector& a, const DenseVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

namespace {

// Distances are compared on a 1e-12 grid so that inputs differing only in
// rounding (e.g. the same counts scaled by a constant) take the same path.
double snapped(const DenseVector& a, const DenseVector& b) {
  return std::round(squared_distance(a, b) * 1e12) / 1e12;
}

}  // namespace

std::vector<DenseVector> kmeanspp_seed(const std::vector<DenseVector>& points, std::size_t k,
                                       std::mt19937_64& rng) {
  std::vector<DenseVector> centers;
  if (points.empty() || k == 0) return centers;
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  centers.push_back(points[pick(rng)]);
  std::vector<double> d2(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) d2[i] = snapped(points[i], centers[0]);
  while (centers.size() < k) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    if (total <= 0.0) break;
    std::uniform_real_distribution<double> u(0.0, total);
    const double r = u(rng);
    double acc = 0.0;
    std::size_t chosen = points.size() - 1;
    for (std::size_t i = 0; i < points.size(); ++i) {
      acc += d2[i];
      if (d2[i] > 0.0 && acc >= r) {
        chosen = i;
        break;
      }
    }
    // Guard against rounding at the end of the scan landing on a zero weight.
    while (d2[chosen] <= 0.0 && chosen > 0) --chosen;
    centers.push_back(points[chosen]);
    for (std::size_t i = 0; i < points.size(); ++i)
      d2[i] = std::min(d2[i], snapped(points[i], centers.back()));
  }
  return centers;
}

KMeansResult kmeans(const std::vector<DenseVector>& points, std::size_t k, std::mt19937_64& rng,
                    std::size_t max_iterations, KMeansMetric metric) {
  if (k == 0) throw Error(Errc::InvalidArgument, "k must be positive");
  KMeansResult res;
  if (points.empty()) return res;
  const std::size_t dim = points.front().size();
  res.centroids = kmeanspp_seed(points, k, rng);
  const std::size_t kk = res.centroids.size();
  res.assignment.assign(points.size(), 0);

  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    double wcss = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < kk; ++c) {
        const double d = snapped(points[i], res.centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      best_d = squared_distance(points[i], res.centroids[best]);
      if (iter == 0 || res.assignment[i] != best) changed = true;
      res.assignment[i] = best;
      wcss += best_d;
    }
    res.wcss_history.push_back(wcss);
    res.iterations = iter + 1;
    if (!changed) {
      res.converged = true;
      break;
    }

    std::vector<DenseVector> sums(kk, DenseVector(dim, 0.0));
    std::vector<std::size_t> counts(kk, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto& s = sums[res.assignment[i]];
      for (std::size_t d = 0; d < dim; ++d) s[d] += points[i][d];
      ++counts[res.assignment[i]];
    }
    for (std::size_t c = 0; c < kk; ++c) {
      if (counts[c] == 0) {
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
          const double d = snapped(points[i], res.centroids[c]);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        res.centroids[c] = points[far];
        continue;
      }
      for (std::size_t d = 0; d < dim; ++d) sums[c][d] /= static_cast<double>(counts[c]);
      if (metric == KMeansMetric::Spherical) {
        double n = 0.0;
        for (double x : sums[c]) n += x * x;
        n = std::sqrt(n);
        if (n > 0.0)
          for (double& x : sums[c]) x /= n;
      }
      res.centroids[c] = std::move(sums[c]);
    }
  }
  return res;
}

}  // namespace aidapub
