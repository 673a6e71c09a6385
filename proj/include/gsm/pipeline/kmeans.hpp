#pragma once

#include "gsm/core/types.hpp"

#include <cstdint>
#include <vector>

namespace gsm {

struct KMeansResult {
  PointList centroids;
  std::vector<std::size_t> assignments;
  double inertia = 0.0;  // sum of squared distances to assigned centroids
  int iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding drawn from `seed`. Stops after `max_iterations` or
/// once no centroid moves more than `tolerance`. Empty clusters are re-seeded at the point
/// farthest from its centroid.
KMeansResult kmeans(const PointList& points, int k, std::uint64_t seed, int max_iterations = 100,
                    double tolerance = 1e-7);

/// Lloyd iterations from explicit starting centroids (same stopping and re-seeding rules).
KMeansResult kmeans_from(const PointList& points, PointList initial_centroids, int max_iterations = 100,
                         double tolerance = 1e-7);

}  // namespace gsm
