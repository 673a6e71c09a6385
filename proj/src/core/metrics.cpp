#include "gsm/core/metrics.hpp"

#include "gsm/core/error.hpp"
#include "gsm/core/kdtree.hpp"
#include "gsm/core/parallel.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>

namespace gsm {

namespace {

double directed_mean_nn(const PointList& from, const KdTree& to) {
  std::vector<double> d(from.size());
  parallel_for(0, from.size(), [&](std::size_t i) { d[i] = std::sqrt(to.nearest(from[i]).dist2); });
  double sum = 0.0;
  for (double v : d) sum += v;
  return sum / static_cast<double>(from.size());
}

}  // namespace

double chamfer_distance(const PointList& a, const PointList& b) {
  if (a.empty() || b.empty()) throw InvalidArgument("chamfer_distance: empty point set");
  const KdTree ta(a), tb(b);
  return 0.5 * (directed_mean_nn(a, tb) + directed_mean_nn(b, ta));
}

double rms_distance(const PointList& a, const PointList& b) {
  if (a.size() != b.size() || a.empty()) throw InvalidArgument("rms_distance: sizes differ or empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]).squaredNorm();
  return std::sqrt(sum / static_cast<double>(a.size()));
}

Vec3 centroid(const PointList& points) {
  if (points.empty()) throw InvalidArgument("centroid: empty point set");
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : points) c += p;
  return c / static_cast<double>(points.size());
}

Mat3 best_fit_rotation(const PointList& a, const PointList& b) {
  if (a.size() != b.size() || a.size() < 3) throw InvalidArgument("best_fit_rotation: need >= 3 paired points");
  const Vec3 ca = centroid(a), cb = centroid(b);
  Mat3 h = Mat3::Zero();
  for (std::size_t i = 0; i < a.size(); ++i) h += (a[i] - ca) * (b[i] - cb).transpose();
  Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 d = Mat3::Identity();
  d(2, 2) = (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  return svd.matrixV() * d * svd.matrixU().transpose();
}

}  // namespace gsm
