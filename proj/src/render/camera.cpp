#include "gsm/render/camera.hpp"

#include "gsm/core/error.hpp"

#include <cmath>
#include <string>

namespace gsm {

ViewAxis parse_view_axis(std::string_view text) {
  if (text == "+x" || text == "x") return ViewAxis::PosX;
  if (text == "-x") return ViewAxis::NegX;
  if (text == "+y" || text == "y") return ViewAxis::PosY;
  if (text == "-y") return ViewAxis::NegY;
  if (text == "+z" || text == "z") return ViewAxis::PosZ;
  if (text == "-z") return ViewAxis::NegZ;
  throw InvalidArgument("unknown view axis '" + std::string(text) + "' (expected +x, -x, +y, -y, +z or -z)");
}

std::string_view view_axis_name(ViewAxis axis) {
  switch (axis) {
    case ViewAxis::PosX: return "+x";
    case ViewAxis::NegX: return "-x";
    case ViewAxis::PosY: return "+y";
    case ViewAxis::NegY: return "-y";
    case ViewAxis::PosZ: return "+z";
    case ViewAxis::NegZ: return "-z";
  }
  return "?";
}

OrthoCamera OrthoCamera::axis_view(ViewAxis axis, const Vec3& look_at, double width, double height, int image_width,
                                   int image_height) {
  Vec3 right, up;
  switch (axis) {
    case ViewAxis::PosX: right = Vec3::UnitY(); up = Vec3::UnitZ(); break;
    case ViewAxis::NegX: right = -Vec3::UnitY(); up = Vec3::UnitZ(); break;
    case ViewAxis::PosY: right = Vec3::UnitZ(); up = Vec3::UnitX(); break;
    case ViewAxis::NegY: right = -Vec3::UnitZ(); up = Vec3::UnitX(); break;
    case ViewAxis::PosZ: right = Vec3::UnitX(); up = Vec3::UnitY(); break;
    case ViewAxis::NegZ: right = -Vec3::UnitX(); up = Vec3::UnitY(); break;
  }
  OrthoCamera cam;
  cam.rotation.row(0) = right.transpose();
  cam.rotation.row(1) = up.transpose();
  cam.rotation.row(2) = right.cross(up).transpose();
  cam.center = {right.dot(look_at), up.dot(look_at)};
  cam.width = width;
  cam.height = height;
  cam.image_width = image_width;
  cam.image_height = image_height;
  cam.check();
  return cam;
}

void OrthoCamera::check() const {
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height))
    throw InvalidArgument("camera: window extents must be positive");
  if (image_width <= 0 || image_height <= 0) throw InvalidArgument("camera: image resolution must be positive");
  if (!((rotation * rotation.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-9) ||
      !(rotation.determinant() > 0.0))
    throw InvalidArgument("camera: rotation must be a proper orthonormal matrix");
}

std::vector<OrthoCamera> default_axis_cameras(const Box& bbox, int resolution, double margin) {
  if (resolution <= 0) throw InvalidArgument("default_axis_cameras: resolution must be positive");
  const Vec3 center = 0.5 * (bbox.min + bbox.max);
  const Vec3 extent = bbox.extent().cwiseMax(Vec3::Constant(1e-6)) * (1.0 + 2.0 * margin);
  std::vector<OrthoCamera> cams;
  for (ViewAxis axis : {ViewAxis::PosX, ViewAxis::PosY, ViewAxis::PosZ}) {
    OrthoCamera probe = OrthoCamera::axis_view(axis, center, 1.0, 1.0, 1, 1);
    const double w = (probe.rotation.row(0).cwiseAbs() * extent)(0);
    const double h = (probe.rotation.row(1).cwiseAbs() * extent)(0);
    // Square pixels; the longer window side gets `resolution` pixels.
    const double px = std::max(w, h) / resolution;
    const int iw = std::max(1, static_cast<int>(std::ceil(w / px - 1e-9)));
    const int ih = std::max(1, static_cast<int>(std::ceil(h / px - 1e-9)));
    cams.push_back(OrthoCamera::axis_view(axis, center, iw * px, ih * px, iw, ih));
  }
  return cams;
}

}  // namespace gsm
