#pragma once

#include "gsm/core/types.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace gsm {

struct Neighbor {
  double dist2 = 0.0;
  std::size_t index = 0;

  /// Distance first, then lower index.
  bool operator<(const Neighbor& o) const {
    return dist2 < o.dist2 || (dist2 == o.dist2 && index < o.index);
  }
};

/// Static 3D kd-tree over a copy of the reference points. Queries are exact and return
/// neighbors ordered by (squared distance, index).
class KdTree {
 public:
  static constexpr std::size_t kNoExclusion = std::numeric_limits<std::size_t>::max();

  KdTree() = default;
  explicit KdTree(PointList points);

  std::size_t size() const { return points_.size(); }
  const PointList& points() const { return points_; }

  Neighbor nearest(const Vec3& q) const;
  /// k nearest points; `exclude` removes one reference index from consideration.
  std::vector<Neighbor> knn(const Vec3& q, std::size_t k, std::size_t exclude = kNoExclusion) const;

 private:
  struct Node {
    // Leaves have axis == -1 and cover order_[begin, end).
    int axis = -1;
    double split = 0.0;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t left = 0;
    std::size_t right = 0;
  };

  std::size_t build(std::size_t begin, std::size_t end);
  void search(std::size_t node, const Vec3& q, std::size_t k, std::size_t exclude,
              std::vector<Neighbor>& heap) const;

  PointList points_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace gsm
