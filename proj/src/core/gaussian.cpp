#include "gsm/core/gaussian.hpp"

#include "gsm/core/error.hpp"

#include <cmath>
#include <string>

namespace gsm {

std::string_view role_name(Role role) { return role == Role::Motion ? "motion" : "appearance"; }

Box bounding_box(const PointList& points) {
  Box box;
  if (points.empty()) return box;
  box.min = box.max = points.front();
  for (const Vec3& p : points) {
    box.min = box.min.cwiseMin(p);
    box.max = box.max.cwiseMax(p);
  }
  return box;
}

PointList GaussianSet::positions() const {
  PointList out;
  out.reserve(kernels.size());
  for (const auto& k : kernels) out.push_back(k.position);
  return out;
}

std::vector<int> GaussianSet::labels() const {
  std::vector<int> out;
  out.reserve(kernels.size());
  for (const auto& k : kernels) out.push_back(k.label.value_or(-1));
  return out;
}

void validate(const GaussianSet& set) {
  const std::size_t channels = set.color_channels();
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& k = set.kernels[i];
    const auto fail = [i](const char* what) {
      throw InvalidArgument("kernel " + std::to_string(i) + ": " + what);
    };
    if (!k.position.allFinite()) fail("non-finite position");
    if (!k.log_scale.allFinite()) fail("non-finite log-scale");
    if (!k.rotation.vec4().allFinite()) fail("non-finite rotation");
    if (!(k.rotation.norm() > 0.0)) fail("zero-norm rotation");
    if (!(k.opacity >= 0.0 && k.opacity <= 1.0)) fail("opacity outside [0,1]");
    if (k.color.size() != channels) fail("inconsistent color channel count");
    for (double c : k.color)
      if (!std::isfinite(c)) fail("non-finite color");
  }
}

GaussianSet cloud_to_set(const ColoredCloud& cloud, int frame) {
  GaussianSet set;
  set.role = Role::Appearance;
  set.frame = frame;
  set.kernels.resize(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    set.kernels[i].position = cloud.points[i];
    set.kernels[i].color = cloud.colors[i];
  }
  return set;
}

ColoredCloud set_to_cloud(const GaussianSet& set) {
  ColoredCloud cloud;
  cloud.points.reserve(set.size());
  cloud.colors.reserve(set.size());
  for (const auto& k : set.kernels) {
    cloud.points.push_back(k.position);
    cloud.colors.push_back(k.color);
  }
  return cloud;
}

}  // namespace gsm
