#include "gsm/pipeline/kmeans.hpp"

#include "gsm/core/error.hpp"

#include <limits>
#include <random>

namespace gsm {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t nearest_centroid(const Vec3& p, const PointList& centroids, double* dist2 = nullptr) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = (p - centroids[c]).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (dist2) *dist2 = best_d;
  return best;
}

PointList seed_plus_plus(const PointList& points, std::size_t k, std::mt19937_64& rng) {
  PointList centroids;
  centroids.reserve(k);
  std::vector<char> chosen(points.size(), 0);
  const auto first = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(points.size()));
  centroids.push_back(points[first]);
  chosen[first] = 1;
  std::vector<double> d2(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) d2[i] = (points[i] - centroids[0]).squaredNorm();

  while (centroids.size() < k) {
    double total = 0.0;
    for (double d : d2) total += d;
    std::size_t pick = points.size();
    if (total > 0.0) {
      double r = uniform01(rng) * total;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (d2[i] <= 0.0) continue;
        pick = i;
        if (r < d2[i]) break;
        r -= d2[i];
      }
    } else {
      // Remaining points coincide with centroids; take the first unused one.
      for (std::size_t i = 0; i < points.size() && pick == points.size(); ++i)
        if (!chosen[i]) pick = i;
    }
    centroids.push_back(points[pick]);
    chosen[pick] = 1;
    for (std::size_t i = 0; i < points.size(); ++i)
      d2[i] = std::min(d2[i], (points[i] - centroids.back()).squaredNorm());
  }
  return centroids;
}

}  // namespace

KMeansResult kmeans(const PointList& points, int k, std::uint64_t seed, int max_iterations, double tolerance) {
  if (k <= 0) throw InvalidArgument("kmeans: k must be positive");
  if (points.size() < static_cast<std::size_t>(k)) throw InvalidArgument("kmeans: fewer points than clusters");
  const auto kk = static_cast<std::size_t>(k);

  std::mt19937_64 rng(seed);
  return kmeans_from(points, seed_plus_plus(points, kk, rng), max_iterations, tolerance);
}

KMeansResult kmeans_from(const PointList& points, PointList initial_centroids, int max_iterations, double tolerance) {
  if (initial_centroids.empty()) throw InvalidArgument("kmeans: k must be positive");
  if (points.size() < initial_centroids.size()) throw InvalidArgument("kmeans: fewer points than clusters");
  const std::size_t kk = initial_centroids.size();
  KMeansResult res;
  res.centroids = std::move(initial_centroids);
  res.assignments.assign(points.size(), 0);

  for (int it = 0; it < max_iterations; ++it) {
    res.iterations = it + 1;
    std::vector<double> dist(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
      res.assignments[i] = nearest_centroid(points[i], res.centroids, &dist[i]);

    PointList sums(kk, Vec3::Zero());
    std::vector<std::size_t> counts(kk, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      sums[res.assignments[i]] += points[i];
      ++counts[res.assignments[i]];
    }
    std::vector<char> taken(points.size(), 0);
    double moved = 0.0;
    for (std::size_t c = 0; c < kk; ++c) {
      Vec3 next;
      if (counts[c] > 0) {
        next = sums[c] / static_cast<double>(counts[c]);
      } else {
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i)
          if (!taken[i] && dist[i] > far_d) {
            far_d = dist[i];
            far = i;
          }
        taken[far] = 1;
        dist[far] = 0.0;
        next = points[far];
      }
      moved = std::max(moved, (next - res.centroids[c]).norm());
      res.centroids[c] = next;
    }
    if (moved < tolerance) break;
  }

  res.inertia = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double d = 0.0;
    res.assignments[i] = nearest_centroid(points[i], res.centroids, &d);
    res.inertia += d;
  }
  return res;
}

}  // namespace gsm
