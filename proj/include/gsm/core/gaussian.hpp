#pragma once

#include "gsm/core/quat.hpp"
#include "gsm/core/types.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace gsm {

enum class Role { Motion, Appearance };

std::string_view role_name(Role role);

/// One splat. `log_scale` holds per-axis log standard deviations (meters after exp).
struct GaussianKernel {
  Vec3 position = Vec3::Zero();
  Quat rotation;
  Vec3 log_scale = Vec3::Zero();
  double opacity = 1.0;
  std::vector<double> color;
  std::optional<int> label;

  Vec3 scale() const { return log_scale.array().exp(); }
};

/// Ordered kernels of one frame. Index i names the same physical kernel in every frame of a sequence.
struct GaussianSet {
  std::vector<GaussianKernel> kernels;
  Role role = Role::Appearance;
  int frame = 0;

  std::size_t size() const { return kernels.size(); }
  bool empty() const { return kernels.empty(); }
  /// Color channel count of the first kernel (0 for an empty set).
  std::size_t color_channels() const { return kernels.empty() ? 0 : kernels.front().color.size(); }
  PointList positions() const;
  std::vector<int> labels() const;  // -1 for unlabeled kernels
};

/// Throws InvalidArgument on non-finite fields, opacity outside [0,1], zero rotations, or
/// inconsistent color channel counts.
void validate(const GaussianSet& set);

/// Colored point cloud used as a data-term target.
struct ColoredCloud {
  PointList points;
  std::vector<std::vector<double>> colors;

  std::size_t size() const { return points.size(); }
};

/// Reuses the appearance GSET layout for clouds: identity rotation, zero log-scale, opacity 1.
GaussianSet cloud_to_set(const ColoredCloud& cloud, int frame);
ColoredCloud set_to_cloud(const GaussianSet& set);

}  // namespace gsm
