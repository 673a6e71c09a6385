#pragma once

#include <Eigen/Dense>

#include <vector>

namespace gsm {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

using PointList = std::vector<Vec3>;

/// Axis-aligned bounding box.
struct Box {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  Vec3 extent() const { return max - min; }
};

Box bounding_box(const PointList& points);

}  // namespace gsm
