#pragma once

#include "gsm/core/types.hpp"

#include <array>
#include <span>

namespace gsm {

/// Hamilton quaternion stored as (w, x, y, z).
struct Quat {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quat() = default;
  constexpr Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quat identity() { return {}; }
  static Quat from_vec4(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
  /// Rotation of `angle` radians about `axis` (need not be unit length).
  static Quat from_axis_angle(const Vec3& axis, double angle);
  /// Unit quaternion of a proper rotation matrix.
  static Quat from_matrix(const Mat3& m);

  Vec4 vec4() const { return {w, x, y, z}; }
  double norm() const;
  double dot(const Quat& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
  Quat conjugate() const { return {w, -x, -y, -z}; }
  Quat operator-() const { return {-w, -x, -y, -z}; }
  Quat operator*(const Quat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
  bool operator==(const Quat&) const = default;
};

Quat normalize(const Quat& q);
Quat multiply(const Quat& a, const Quat& b);
/// Multiplicative inverse; equals the conjugate for unit quaternions.
Quat inverse(const Quat& q);
/// R(q)·v. `q` is normalized first.
Vec3 rotate(const Quat& q, const Vec3& v);
/// Rotation matrix of q / |q|.
Mat3 to_matrix(const Quat& q);
/// Rotation matrix of an already-unit quaternion, via the polynomial form (no normalization).
Mat3 unit_to_matrix(const Quat& q);
/// Geodesic angle in radians between two rotations (sign-insensitive).
double rotation_angle_between(const Quat& a, const Quat& b);

/// k-ary generalization of slerp: hemisphere-align every input to the first, take the weighted
/// sum and renormalize. Agrees with slerp to first order in the inter-quaternion angle.
/// Throws DegenerateBlend when the blended 4-vector has norm below 1e-9.
Quat quat_blend(std::span<const Quat> quats, std::span<const double> weights);

/// Derivatives of unit_to_matrix(q) with respect to w, x, y, z.
std::array<Mat3, 4> unit_to_matrix_jacobian(const Quat& q);

}  // namespace gsm
