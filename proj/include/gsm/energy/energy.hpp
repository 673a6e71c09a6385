#pragma once

#include "gsm/core/gaussian.hpp"
#include "gsm/core/kdtree.hpp"
#include "gsm/core/neighbor_graph.hpp"

#include <cstddef>
#include <vector>

namespace gsm {

/// Energy value with gradients per kernel. Rotation gradients are with respect to the raw
/// (possibly unnormalized) 4-vector; terms that do not touch a block leave it zero.
struct EnergyEval {
  double value = 0.0;
  std::vector<Vec3> grad_p;
  std::vector<Vec4> grad_q;
  std::vector<Vec3> grad_log_scale;
  std::vector<double> grad_opacity;
  std::vector<std::vector<double>> grad_color;

  static EnergyEval zeros(std::size_t kernels, std::size_t color_channels);
  std::size_t size() const { return grad_p.size(); }
  /// this += weight * other (value and every gradient block).
  void accumulate(const EnergyEval& other, double weight = 1.0);
};

/// d(f(q / |q|))/dq from the gradient with respect to the normalized quaternion.
Vec4 normalized_quat_grad(const Quat& raw, const Vec4& grad_unit);

/// Local as-rigid-as-possible term between two frames of one set:
///   sum_i sum_{k in N(i)} w_ik |R(q_i,cur q_i,prev^-1)(p_k,prev - p_i,prev) - (p_k,cur - p_i,cur)|^2
/// with graph weights w_ik fixed from the canonical frame. Gradients flow into `cur` only.
EnergyEval e_arap(const GaussianSet& prev, const GaussianSet& cur, const NeighborGraph& graph);

/// (1/N) sum_i ReLU(exp(max(s_i) - min(s_i)) - ratio) over log-scales s_i.
EnergyEval e_iso(const GaussianSet& set, double ratio = 4.0);
/// sum_i sum_axes ReLU(exp(s_ia) - alpha * mean(exp(s))) with the mean held constant.
EnergyEval e_size(const GaussianSet& set, double alpha = 2.0);

/// Colored point target with a prebuilt spatial index; reused across iterations.
class DataTarget {
 public:
  explicit DataTarget(ColoredCloud cloud);
  const ColoredCloud& cloud() const { return cloud_; }
  const KdTree& tree() const { return tree_; }

 private:
  ColoredCloud cloud_;
  KdTree tree_;
};

/// Symmetric colored chamfer:
///   mean_kernels (|p - t_nn|^2 + |c - c_nn|^2) + mean_targets |t - p_nn|^2
/// Gradients with respect to kernel positions and colors.
EnergyEval e_data_points(const GaussianSet& set, const DataTarget& target);
EnergyEval e_data_points(const GaussianSet& set, const ColoredCloud& target);

/// Source-kernel clusters paired with constant target centroids.
struct SemanticClusters {
  std::vector<std::vector<std::size_t>> members;  // source kernel ids per matched cluster
  std::vector<Vec3> target_centroids;             // stop-gradient targets, same order
  std::vector<int> labels;                        // semantic label of each cluster
};

/// sum_clusters |mean(p_members) - target|^2. Throws RuntimeError naming clusters that are
/// empty or unmatched.
EnergyEval e_sem(const GaussianSet& source, const SemanticClusters& clusters);

/// Mean squared difference over selected channels; rotations are normalized and
/// hemisphere-aligned pairwise first. Gradient with respect to `a` only.
struct L2Terms {
  bool position = true;
  bool rotation = true;
};
EnergyEval e_l2_gauss(const GaussianSet& a, const GaussianSet& b, L2Terms terms = {});

}  // namespace gsm
