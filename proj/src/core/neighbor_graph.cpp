#include "gsm/core/neighbor_graph.hpp"

#include "gsm/core/error.hpp"
#include "gsm/core/kdtree.hpp"
#include "gsm/core/parallel.hpp"

#include <cmath>
#include <string>

namespace gsm {

double weight_rbf(const Vec3& pi, const Vec3& pj, double l) {
  if (!pi.allFinite() || !pj.allFinite() || !std::isfinite(l))
    throw InvalidArgument("weight_rbf: non-finite input");
  if (!(l > 0.0)) throw InvalidArgument("weight_rbf: length scale must be positive");
  return std::exp(-(pi - pj).squaredNorm() / (l * l));
}

NeighborGraph knn_build(const PointList& query, const PointList& reference, const KnnOptions& options) {
  const std::size_t k = options.k;
  const std::size_t available = reference.size() - (options.exclude_self && !reference.empty() ? 1 : 0);
  if (k < 1) throw InvalidArgument("knn_build: k must be at least 1");
  if (k > available)
    throw InvalidArgument("knn_build: k = " + std::to_string(k) + " exceeds the " + std::to_string(available) +
                          " available reference points");
  if (options.exclude_self && query.size() != reference.size())
    throw InvalidArgument("knn_build: exclude_self requires query and reference to be the same set");
  if (!(options.length_scale > 0.0) || !std::isfinite(options.length_scale))
    throw InvalidArgument("knn_build: length scale must be positive");
  for (const Vec3& p : query)
    if (!p.allFinite()) throw InvalidArgument("knn_build: non-finite query point");
  for (const Vec3& p : reference)
    if (!p.allFinite()) throw InvalidArgument("knn_build: non-finite reference point");

  const KdTree tree(reference);
  NeighborGraph graph;
  graph.k = k;
  graph.indices.resize(query.size() * k);
  graph.weights.resize(query.size() * k);
  const double inv_l2 = 1.0 / (options.length_scale * options.length_scale);

  parallel_for(0, query.size(), [&](std::size_t i) {
    const auto found = tree.knn(query[i], k, options.exclude_self ? i : KdTree::kNoExclusion);
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      graph.indices[i * k + j] = found[j].index;
      // Normalized weights are evaluated relative to the nearest so far-away nodes cannot underflow to 0/0.
      const double shift = options.normalize ? found.front().dist2 : 0.0;
      const double w = std::exp(-(found[j].dist2 - shift) * inv_l2);
      graph.weights[i * k + j] = w;
      sum += w;
    }
    if (options.normalize)
      for (std::size_t j = 0; j < k; ++j) graph.weights[i * k + j] /= sum;
  });
  return graph;
}

NeighborGraph build_arap_graph(const PointList& canonical, std::size_t k, double length_scale) {
  return knn_build(canonical, canonical, {k, length_scale, false, true});
}

NeighborGraph build_skinning_graph(const PointList& appearance, const PointList& motion, std::size_t k,
                                   double length_scale) {
  return knn_build(appearance, motion, {k, length_scale, true, false});
}

}  // namespace gsm
