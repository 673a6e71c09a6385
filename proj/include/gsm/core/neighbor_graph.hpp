#pragma once

#include "gsm/core/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gsm {

/// exp(-|pi - pj|^2 / l^2). Throws InvalidArgument for l <= 0 or non-finite inputs.
double weight_rbf(const Vec3& pi, const Vec3& pj, double l);

/// Fixed-k neighbor lists from query nodes into a reference set, built once in the canonical frame.
struct NeighborGraph {
  std::size_t k = 0;
  std::vector<std::size_t> indices;  // node-major, k per node
  std::vector<double> weights;

  std::size_t node_count() const { return k == 0 ? 0 : indices.size() / k; }
  std::span<const std::size_t> neighbors(std::size_t node) const {
    return {indices.data() + node * k, k};
  }
  std::span<const double> neighbor_weights(std::size_t node) const {
    return {weights.data() + node * k, k};
  }
};

struct KnnOptions {
  std::size_t k = 4;
  double length_scale = 0.001;
  /// Rescale each node's weights to sum to 1 (skinning graphs).
  bool normalize = false;
  /// Query and reference are the same set; skip the node itself (ARAP graphs).
  bool exclude_self = false;
};

/// Exact k nearest neighbors by Euclidean distance with ties broken by lower reference index.
NeighborGraph knn_build(const PointList& query, const PointList& reference, const KnnOptions& options);

/// Motion-to-motion graph for ARAP: self excluded, raw RBF weights.
NeighborGraph build_arap_graph(const PointList& canonical, std::size_t k, double length_scale);
/// Appearance-to-motion skinning graph: normalized RBF weights.
NeighborGraph build_skinning_graph(const PointList& appearance, const PointList& motion, std::size_t k,
                                   double length_scale);

}  // namespace gsm
