#include "gsm/core/quat.hpp"

#include "gsm/core/error.hpp"

#include <cmath>

namespace gsm {

Quat Quat::from_axis_angle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0) || !std::isfinite(angle)) throw InvalidArgument("from_axis_angle: zero or non-finite axis");
  const Vec3 a = axis / n;
  const double s = std::sin(0.5 * angle);
  return {std::cos(0.5 * angle), a.x() * s, a.y() * s, a.z() * s};
}

Quat Quat::from_matrix(const Mat3& m) {
  // Shepperd's method: pick the largest diagonal combination for stability.
  const double tr = m.trace();
  Quat q;
  if (tr > m(0, 0) && tr > m(1, 1) && tr > m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + tr);
    q = {0.25 * s, (m(2, 1) - m(1, 2)) / s, (m(0, 2) - m(2, 0)) / s, (m(1, 0) - m(0, 1)) / s};
  } else if (m(0, 0) > m(1, 1) && m(0, 0) > m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + m(0, 0) - m(1, 1) - m(2, 2));
    q = {(m(2, 1) - m(1, 2)) / s, 0.25 * s, (m(0, 1) + m(1, 0)) / s, (m(0, 2) + m(2, 0)) / s};
  } else if (m(1, 1) > m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + m(1, 1) - m(0, 0) - m(2, 2));
    q = {(m(0, 2) - m(2, 0)) / s, (m(0, 1) + m(1, 0)) / s, 0.25 * s, (m(1, 2) + m(2, 1)) / s};
  } else {
    const double s = 2.0 * std::sqrt(1.0 + m(2, 2) - m(0, 0) - m(1, 1));
    q = {(m(1, 0) - m(0, 1)) / s, (m(0, 2) + m(2, 0)) / s, (m(1, 2) + m(2, 1)) / s, 0.25 * s};
  }
  q = normalize(q);
  if (q.w < 0.0) q = -q;
  return q;
}

double Quat::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quat normalize(const Quat& q) {
  const double n = q.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("normalize: zero-norm or non-finite quaternion");
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

Quat multiply(const Quat& a, const Quat& b) { return a * b; }

Quat inverse(const Quat& q) {
  const double n2 = q.dot(q);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw InvalidArgument("inverse: zero-norm or non-finite quaternion");
  const Quat c = q.conjugate();
  return {c.w / n2, c.x / n2, c.y / n2, c.z / n2};
}

Mat3 unit_to_matrix(const Quat& q) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  Mat3 r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
       2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
       2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

std::array<Mat3, 4> unit_to_matrix_jacobian(const Quat& q) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  std::array<Mat3, 4> d;
  d[0] << 0, -2 * z, 2 * y,
          2 * z, 0, -2 * x,
          -2 * y, 2 * x, 0;
  d[1] << 0, 2 * y, 2 * z,
          2 * y, -4 * x, -2 * w,
          2 * z, 2 * w, -4 * x;
  d[2] << -4 * y, 2 * x, 2 * w,
          2 * x, 0, 2 * z,
          -2 * w, 2 * z, -4 * y;
  d[3] << -4 * z, -2 * w, 2 * x,
          2 * w, -4 * z, 2 * y,
          2 * x, 2 * y, 0;
  return d;
}

Mat3 to_matrix(const Quat& q) { return unit_to_matrix(normalize(q)); }

Vec3 rotate(const Quat& q, const Vec3& v) { return to_matrix(q) * v; }

double rotation_angle_between(const Quat& a, const Quat& b) {
  const double d = std::abs(normalize(a).dot(normalize(b)));
  return 2.0 * std::acos(std::min(1.0, d));
}

Quat quat_blend(std::span<const Quat> quats, std::span<const double> weights) {
  if (quats.empty() || quats.size() != weights.size())
    throw InvalidArgument("quat_blend: need one weight per quaternion and at least one input");
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("quat_blend: weights must be finite and nonnegative");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-6) throw InvalidArgument("quat_blend: weights must sum to 1");

  const Quat& ref = quats.front();
  Vec4 acc = Vec4::Zero();
  for (std::size_t i = 0; i < quats.size(); ++i) {
    const Vec4 v = quats[i].vec4();
    acc += (quats[i].dot(ref) < 0.0 ? -weights[i] : weights[i]) * v;
  }
  const double n = acc.norm();
  if (n < 1e-9) throw DegenerateBlend("quat_blend: blended quaternion has vanishing norm");
  return Quat::from_vec4(acc / n);
}

}  // namespace gsm
