#include "gsm/core/kdtree.hpp"

#include <algorithm>
#include <numeric>

namespace gsm {

namespace {
constexpr std::size_t kLeafSize = 8;
}

KdTree::KdTree(PointList points) : points_(std::move(points)) {
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  if (!points_.empty()) {
    nodes_.reserve(2 * points_.size() / kLeafSize + 2);
    build(0, points_.size());
  }
}

std::size_t KdTree::build(std::size_t begin, std::size_t end) {
  const std::size_t id = nodes_.size();
  nodes_.push_back(Node{-1, 0.0, begin, end, 0, 0});
  if (end - begin <= kLeafSize) return id;

  Vec3 lo = points_[order_[begin]], hi = lo;
  for (std::size_t i = begin; i < end; ++i) {
    lo = lo.cwiseMin(points_[order_[i]]);
    hi = hi.cwiseMax(points_[order_[i]]);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  if (hi[axis] == lo[axis]) return id;  // all points coincide

  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                   order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) { return points_[a][axis] < points_[b][axis]; });
  const double split = points_[order_[mid]][axis];
  const std::size_t left = build(begin, mid);
  const std::size_t right = build(mid, end);
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void KdTree::search(std::size_t node_id, const Vec3& q, std::size_t k, std::size_t exclude,
                    std::vector<Neighbor>& heap) const {
  const Node& node = nodes_[node_id];
  if (node.axis < 0) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      const std::size_t idx = order_[i];
      if (idx == exclude) continue;
      const Neighbor cand{(points_[idx] - q).squaredNorm(), idx};
      if (heap.size() < k) {
        heap.push_back(cand);
        std::push_heap(heap.begin(), heap.end());
      } else if (cand < heap.front()) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = cand;
        std::push_heap(heap.begin(), heap.end());
      }
    }
    return;
  }
  // Left subtree holds coordinates <= split, right holds >= split.
  const double diff = q[node.axis] - node.split;
  const std::size_t near = diff < 0.0 ? node.left : node.right;
  const std::size_t far = diff < 0.0 ? node.right : node.left;
  search(near, q, k, exclude, heap);
  // Equal plane distance can still hold a lower-index tie, so prune only on strict excess.
  if (heap.size() < k || diff * diff <= heap.front().dist2) search(far, q, k, exclude, heap);
}

Neighbor KdTree::nearest(const Vec3& q) const { return knn(q, 1).front(); }

std::vector<Neighbor> KdTree::knn(const Vec3& q, std::size_t k, std::size_t exclude) const {
  std::vector<Neighbor> heap;
  if (points_.empty() || k == 0) return heap;
  heap.reserve(k + 1);
  search(0, q, k, exclude, heap);
  std::sort_heap(heap.begin(), heap.end());
  return heap;
}

}  // namespace gsm
