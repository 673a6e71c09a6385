#include "gsm/energy/energy.hpp"

#include "gsm/core/error.hpp"
#include "gsm/core/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gsm {

EnergyEval EnergyEval::zeros(std::size_t kernels, std::size_t color_channels) {
  EnergyEval e;
  e.grad_p.assign(kernels, Vec3::Zero());
  e.grad_q.assign(kernels, Vec4::Zero());
  e.grad_log_scale.assign(kernels, Vec3::Zero());
  e.grad_opacity.assign(kernels, 0.0);
  e.grad_color.assign(kernels, std::vector<double>(color_channels, 0.0));
  return e;
}

void EnergyEval::accumulate(const EnergyEval& other, double weight) {
  if (other.size() != size()) throw InvalidArgument("EnergyEval::accumulate: kernel counts differ");
  value += weight * other.value;
  for (std::size_t i = 0; i < size(); ++i) {
    grad_p[i] += weight * other.grad_p[i];
    grad_q[i] += weight * other.grad_q[i];
    grad_log_scale[i] += weight * other.grad_log_scale[i];
    grad_opacity[i] += weight * other.grad_opacity[i];
    auto& gc = grad_color[i];
    const auto& oc = other.grad_color[i];
    if (gc.size() != oc.size()) throw InvalidArgument("EnergyEval::accumulate: color channel counts differ");
    for (std::size_t c = 0; c < gc.size(); ++c) gc[c] += weight * oc[c];
  }
}

Vec4 normalized_quat_grad(const Quat& raw, const Vec4& grad_unit) {
  const double n = raw.norm();
  if (!(n > 0.0)) throw InvalidArgument("zero-norm rotation");
  const Vec4 u = raw.vec4() / n;
  return (grad_unit - u * u.dot(grad_unit)) / n;
}

// ---------------------------------------------------------------------------------------------
// ARAP

EnergyEval e_arap(const GaussianSet& prev, const GaussianSet& cur, const NeighborGraph& graph) {
  const std::size_t n = cur.size();
  if (prev.size() != n) throw InvalidArgument("e_arap: prev and cur kernel counts differ");
  if (graph.node_count() != n) throw InvalidArgument("e_arap: graph node count does not match the set");
  const std::size_t k = graph.k;

  EnergyEval e = EnergyEval::zeros(n, cur.color_channels());
  std::vector<double> node_value(n, 0.0);
  std::vector<Vec3> edge_grad(n * k, Vec3::Zero());  // dE/d(p_i,cur) contribution per edge

  parallel_for(0, n, [&](std::size_t i) {
    const Quat qc = normalize(cur.kernels[i].rotation);
    const Quat qp_conj = normalize(prev.kernels[i].rotation).conjugate();
    const Quat rel = qc * qp_conj;
    const Mat3 r = unit_to_matrix(rel);
    const auto jac = unit_to_matrix_jacobian(rel);
    Mat3 grad_r = Mat3::Zero();
    const auto nbrs = graph.neighbors(i);
    const auto ws = graph.neighbor_weights(i);
    double value = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t nb = nbrs[j];
      const Vec3 a = prev.kernels[nb].position - prev.kernels[i].position;
      const Vec3 b = cur.kernels[nb].position - cur.kernels[i].position;
      const Vec3 res = r * a - b;
      value += ws[j] * res.squaredNorm();
      edge_grad[i * k + j] = 2.0 * ws[j] * res;
      grad_r += 2.0 * ws[j] * res * a.transpose();
    }
    node_value[i] = value;
    // rel = qc * conj(qp) is linear in qc; basis image e_c * conj(qp) gives d(rel)/d(qc_c).
    Vec4 grad_rel;
    for (int c = 0; c < 4; ++c) grad_rel[c] = (grad_r.array() * jac[c].array()).sum();
    Vec4 grad_qc = Vec4::Zero();
    const Quat basis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (int c = 0; c < 4; ++c) grad_qc[c] = grad_rel.dot((basis[c] * qp_conj).vec4());
    e.grad_q[i] = normalized_quat_grad(cur.kernels[i].rotation, grad_qc);
  });

  for (std::size_t i = 0; i < n; ++i) {
    e.value += node_value[i];
    const auto nbrs = graph.neighbors(i);
    for (std::size_t j = 0; j < k; ++j) {
      const Vec3& g = edge_grad[i * k + j];
      e.grad_p[i] += g;
      e.grad_p[nbrs[j]] -= g;
    }
  }
  return e;
}

// ---------------------------------------------------------------------------------------------
// Shape regularizers

EnergyEval e_iso(const GaussianSet& set, double ratio) {
  if (!(ratio > 1.0)) throw InvalidArgument("e_iso: ratio must exceed 1");
  const std::size_t n = set.size();
  EnergyEval e = EnergyEval::zeros(n, set.color_channels());
  if (n == 0) return e;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& s = set.kernels[i].log_scale;
    int imax = 0, imin = 0;
    s.maxCoeff(&imax);
    s.minCoeff(&imin);
    const double spread = std::exp(s[imax] - s[imin]);
    if (spread - ratio > 0.0) {
      e.value += (spread - ratio) * inv_n;
      e.grad_log_scale[i][imax] += spread * inv_n;
      e.grad_log_scale[i][imin] -= spread * inv_n;
    }
  }
  return e;
}

EnergyEval e_size(const GaussianSet& set, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("e_size: alpha must be positive");
  const std::size_t n = set.size();
  EnergyEval e = EnergyEval::zeros(n, set.color_channels());
  if (n == 0) return e;
  double mean = 0.0;
  for (const auto& k : set.kernels) mean += k.scale().sum();
  mean /= static_cast<double>(3 * n);
  const double threshold = alpha * mean;  // held constant
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 s = set.kernels[i].scale();
    for (int a = 0; a < 3; ++a) {
      if (s[a] - threshold > 0.0) {
        e.value += s[a] - threshold;
        e.grad_log_scale[i][a] += s[a];
      }
    }
  }
  return e;
}

// ---------------------------------------------------------------------------------------------
// Colored chamfer data term

DataTarget::DataTarget(ColoredCloud cloud) : cloud_(std::move(cloud)), tree_(cloud_.points) {
  if (cloud_.points.empty()) throw InvalidArgument("data target: empty point cloud");
  if (cloud_.colors.size() != cloud_.points.size()) throw InvalidArgument("data target: one color per point required");
}

EnergyEval e_data_points(const GaussianSet& set, const ColoredCloud& target) {
  return e_data_points(set, DataTarget(target));
}

EnergyEval e_data_points(const GaussianSet& set, const DataTarget& target) {
  const std::size_t n = set.size();
  const auto& cloud = target.cloud();
  const std::size_t m = cloud.size();
  const std::size_t channels = set.color_channels();
  if (m == 0) throw InvalidArgument("e_data_points: empty target");
  if (!cloud.colors.empty() && cloud.colors.front().size() != channels)
    throw InvalidArgument("e_data_points: kernel and target color channel counts differ");
  EnergyEval e = EnergyEval::zeros(n, channels);
  if (n == 0) return e;

  const double inv_n = 1.0 / static_cast<double>(n);
  const double inv_m = 1.0 / static_cast<double>(m);
  std::vector<double> kernel_term(n, 0.0);
  parallel_for(0, n, [&](std::size_t i) {
    const auto& k = set.kernels[i];
    const Neighbor nn = target.tree().nearest(k.position);
    const Vec3 d = k.position - cloud.points[nn.index];
    double term = d.squaredNorm();
    e.grad_p[i] = 2.0 * inv_n * d;
    const auto& tc = cloud.colors[nn.index];
    for (std::size_t c = 0; c < channels; ++c) {
      const double dc = k.color[c] - tc[c];
      term += dc * dc;
      e.grad_color[i][c] = 2.0 * inv_n * dc;
    }
    kernel_term[i] = term;
  });

  const KdTree kernel_tree(set.positions());
  std::vector<Neighbor> back(m);
  parallel_for(0, m, [&](std::size_t j) { back[j] = kernel_tree.nearest(cloud.points[j]); });

  double sum_k = 0.0, sum_t = 0.0;
  for (double v : kernel_term) sum_k += v;
  for (std::size_t j = 0; j < m; ++j) {
    sum_t += back[j].dist2;
    const std::size_t i = back[j].index;
    e.grad_p[i] += 2.0 * inv_m * (set.kernels[i].position - cloud.points[j]);
  }
  e.value = sum_k * inv_n + sum_t * inv_m;
  return e;
}

// ---------------------------------------------------------------------------------------------
// Semantic centroids

EnergyEval e_sem(const GaussianSet& source, const SemanticClusters& clusters) {
  if (clusters.members.size() != clusters.target_centroids.size())
    throw InvalidArgument("e_sem: every cluster needs exactly one target centroid");
  std::string problems;
  for (std::size_t c = 0; c < clusters.members.size(); ++c) {
    if (clusters.members[c].empty()) {
      const int label = c < clusters.labels.size() ? clusters.labels[c] : -1;
      problems += (problems.empty() ? "" : ", ") + std::to_string(label) + "#" + std::to_string(c);
    }
  }
  if (!problems.empty()) throw RuntimeError("e_sem: clusters without source kernels (label#cluster): " + problems);

  EnergyEval e = EnergyEval::zeros(source.size(), source.color_channels());
  for (std::size_t c = 0; c < clusters.members.size(); ++c) {
    const auto& members = clusters.members[c];
    Vec3 mean = Vec3::Zero();
    for (std::size_t i : members) {
      if (i >= source.size()) throw InvalidArgument("e_sem: cluster member out of range");
      mean += source.kernels[i].position;
    }
    mean /= static_cast<double>(members.size());
    const Vec3 diff = mean - clusters.target_centroids[c];
    e.value += diff.squaredNorm();
    const Vec3 g = 2.0 * diff / static_cast<double>(members.size());
    for (std::size_t i : members) e.grad_p[i] += g;
  }
  return e;
}

// ---------------------------------------------------------------------------------------------
// Gaussian-set L2

EnergyEval e_l2_gauss(const GaussianSet& a, const GaussianSet& b, L2Terms terms) {
  const std::size_t n = a.size();
  if (b.size() != n) throw InvalidArgument("e_l2_gauss: kernel counts differ");
  EnergyEval e = EnergyEval::zeros(n, a.color_channels());
  if (n == 0) return e;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> term(n, 0.0);
  parallel_for(0, n, [&](std::size_t i) {
    const auto& ka = a.kernels[i];
    const auto& kb = b.kernels[i];
    double v = 0.0;
    if (terms.position) {
      const Vec3 d = ka.position - kb.position;
      v += d.squaredNorm();
      e.grad_p[i] = 2.0 * inv_n * d;
    }
    if (terms.rotation) {
      const Vec4 qa = normalize(ka.rotation).vec4();
      Vec4 qb = normalize(kb.rotation).vec4();
      if (qa.dot(qb) < 0.0) qb = -qb;
      const Vec4 d = qa - qb;
      v += d.squaredNorm();
      e.grad_q[i] = normalized_quat_grad(ka.rotation, 2.0 * inv_n * d);
    }
    term[i] = v;
  });
  for (double v : term) e.value += v;
  e.value *= inv_n;
  return e;
}

}  // namespace gsm
