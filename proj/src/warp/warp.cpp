#include "gsm/warp/warp.hpp"

#include "gsm/core/error.hpp"
#include "gsm/core/parallel.hpp"

#include <exception>
#include <optional>
#include <string>

namespace gsm {

FrameMotion FrameMotion::identity(std::size_t count, int frame) {
  FrameMotion m;
  m.delta_q.assign(count, Quat::identity());
  m.delta_p.assign(count, Vec3::Zero());
  m.frame = frame;
  return m;
}

FrameMotion relative_motion(const GaussianSet& motion_canonical, const GaussianSet& motion_t) {
  if (motion_canonical.role != Role::Motion || motion_t.role != Role::Motion)
    throw InvalidArgument("relative_motion: both sets must have role motion");
  if (motion_canonical.size() != motion_t.size())
    throw InvalidArgument("relative_motion: kernel counts differ (" + std::to_string(motion_canonical.size()) +
                          " vs " + std::to_string(motion_t.size()) + ")");
  FrameMotion m;
  m.frame = motion_t.frame;
  m.delta_q.resize(motion_t.size());
  m.delta_p.resize(motion_t.size());
  for (std::size_t k = 0; k < motion_t.size(); ++k) {
    const auto& c = motion_canonical.kernels[k];
    const auto& t = motion_t.kernels[k];
    m.delta_q[k] = normalize(normalize(t.rotation) * inverse(normalize(c.rotation)));
    m.delta_p[k] = t.position - unit_to_matrix(m.delta_q[k]) * c.position;
  }
  return m;
}

GaussianSet warp_appearance(const GaussianSet& appearance_canonical, const FrameMotion& frame_motion,
                            const NeighborGraph& graph) {
  if (graph.node_count() != appearance_canonical.size())
    throw InvalidArgument("warp_appearance: graph has " + std::to_string(graph.node_count()) + " nodes for " +
                          std::to_string(appearance_canonical.size()) + " appearance kernels");
  for (std::size_t idx : graph.indices)
    if (idx >= frame_motion.size()) throw InvalidArgument("warp_appearance: graph references a missing motion kernel");

  std::vector<Mat3> rotations(frame_motion.size());
  for (std::size_t k = 0; k < rotations.size(); ++k) rotations[k] = unit_to_matrix(normalize(frame_motion.delta_q[k]));

  GaussianSet out = appearance_canonical;
  out.frame = frame_motion.frame;
  std::vector<std::optional<std::size_t>> degenerate(out.size());
  parallel_for(0, out.size(), [&](std::size_t i) {
    const auto nbrs = graph.neighbors(i);
    const auto weights = graph.neighbor_weights(i);
    const Vec3& p = appearance_canonical.kernels[i].position;
    Vec3 acc = Vec3::Zero();
    std::vector<Quat> qs(nbrs.size());
    for (std::size_t j = 0; j < nbrs.size(); ++j) {
      acc += weights[j] * (rotations[nbrs[j]] * p + frame_motion.delta_p[nbrs[j]]);
      qs[j] = frame_motion.delta_q[nbrs[j]];
    }
    out.kernels[i].position = acc;
    try {
      const Quat blended = quat_blend(qs, weights);
      out.kernels[i].rotation = normalize(blended * normalize(appearance_canonical.kernels[i].rotation));
    } catch (const DegenerateBlend&) {
      degenerate[i] = i;
    }
  });
  for (const auto& d : degenerate)
    if (d) throw DegenerateBlend("warp_appearance: degenerate rotation blend at appearance kernel " + std::to_string(*d));
  return out;
}

AttributeMap position_map(const GaussianSet& set, const MortonMapping& mapping) {
  std::vector<std::vector<double>> values(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Vec3& p = set.kernels[i].position;
    values[i] = {p.x(), p.y(), p.z()};
  }
  return pack_map(mapping, values, 3);
}

AttributeMaps pseudo_gt_attributes(const GaussianSet& warped, const MortonMapping& mapping) {
  if (warped.role != Role::Appearance) throw InvalidArgument("pseudo_gt_attributes: set must have role appearance");
  const std::size_t n = warped.size();
  std::vector<std::vector<double>> rot(n), shape(n), color(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& k = warped.kernels[i];
    rot[i] = {k.rotation.w, k.rotation.x, k.rotation.y, k.rotation.z};
    shape[i] = {k.log_scale.x(), k.log_scale.y(), k.log_scale.z(), k.opacity};
    color[i] = k.color;
  }
  return {pack_map(mapping, rot, 4), pack_map(mapping, shape, 4),
          pack_map(mapping, color, static_cast<int>(warped.color_channels()))};
}

GaussianMaps disassemble(const GaussianSet& set, const MortonMapping& mapping) {
  return {position_map(set, mapping), pseudo_gt_attributes(set, mapping)};
}

GaussianSet assemble(const GaussianMaps& maps, const MortonMapping& mapping, Role role, int frame,
                     std::span<const int> labels) {
  if (maps.position.channels != 3 || maps.attributes.rotation.channels != 4 || maps.attributes.shape.channels != 4)
    throw InvalidArgument("assemble: expected 3 position, 4 rotation and 4 shape channels");
  if (!labels.empty() && labels.size() != mapping.valid_count())
    throw InvalidArgument("assemble: label count does not match the mapping");
  const auto pos = unpack_map(mapping, maps.position);
  const auto rot = unpack_map(mapping, maps.attributes.rotation);
  const auto shape = unpack_map(mapping, maps.attributes.shape);
  auto color = unpack_map(mapping, maps.attributes.color);

  GaussianSet set;
  set.role = role;
  set.frame = frame;
  set.kernels.resize(mapping.valid_count());
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto& k = set.kernels[i];
    k.position = {pos[i][0], pos[i][1], pos[i][2]};
    k.rotation = {rot[i][0], rot[i][1], rot[i][2], rot[i][3]};
    k.log_scale = {shape[i][0], shape[i][1], shape[i][2]};
    k.opacity = shape[i][3];
    k.color = std::move(color[i]);
    if (!labels.empty() && labels[i] >= 0) k.label = labels[i];
  }
  return set;
}

double pretrain_l2_loss(const AttributeMaps& predicted, const AttributeMaps& target, const MortonMapping& mapping) {
  double sum = 0.0;
  std::size_t count = 0;
  const auto add = [&](const AttributeMap& a, const AttributeMap& b) {
    if (a.channels != b.channels || !(a.resolution == b.resolution))
      throw InvalidArgument("pretrain_l2_loss: map shapes differ");
    for (std::size_t i = 0; i < mapping.valid_count(); ++i) {
      const double* pa = a.pixel(mapping.pixel_index(i));
      const double* pb = b.pixel(mapping.pixel_index(i));
      for (int c = 0; c < a.channels; ++c) sum += (pa[c] - pb[c]) * (pa[c] - pb[c]);
      count += static_cast<std::size_t>(a.channels);
    }
  };
  add(predicted.rotation, target.rotation);
  add(predicted.shape, target.shape);
  add(predicted.color, target.color);
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace gsm
