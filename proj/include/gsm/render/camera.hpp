#pragma once

#include "gsm/core/types.hpp"

#include <string_view>
#include <vector>

namespace gsm {

enum class ViewAxis { PosX, NegX, PosY, NegY, PosZ, NegZ };

ViewAxis parse_view_axis(std::string_view text);  // "+x", "-y", ...
std::string_view view_axis_name(ViewAxis axis);

/// Orthographic camera. Rows of `rotation` are the image right axis, the image up axis and the
/// view direction; depth grows away from the viewer. The window is centered at `center` in
/// (right, up) plane coordinates. Pixel (u, v) samples the plane at
///   (left + u * width / W, top - v * height / H),
/// so a point at the window center lands on pixel (W/2, H/2).
struct OrthoCamera {
  Mat3 rotation = Mat3::Identity();
  Vec2 center = Vec2::Zero();
  double width = 1.0;
  double height = 1.0;
  int image_width = 32;
  int image_height = 32;

  /// Camera looking along `axis` whose window is centered on `look_at`.
  static OrthoCamera axis_view(ViewAxis axis, const Vec3& look_at, double width, double height, int image_width,
                               int image_height);

  /// Throws InvalidArgument for non-positive extents or resolution, or a non-orthonormal rotation.
  void check() const;
  double pixel_width() const { return width / image_width; }
  double pixel_height() const { return height / image_height; }
  Vec2 pixel_center(int u, int v) const {
    return {center.x() - 0.5 * width + u * pixel_width(), center.y() + 0.5 * height - v * pixel_height()};
  }
  /// Continuous pixel coordinates of a plane point.
  Vec2 plane_to_pixel(const Vec2& plane) const {
    return {(plane.x() - (center.x() - 0.5 * width)) / pixel_width(),
            ((center.y() + 0.5 * height) - plane.y()) / pixel_height()};
  }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(image_width) * static_cast<std::size_t>(image_height);
  }
};

/// Three axis views (+x, +y, +z) framing `bbox` with a relative margin, all at `resolution`^2.
std::vector<OrthoCamera> default_axis_cameras(const Box& bbox, int resolution, double margin = 0.15);

}  // namespace gsm
