#include "gsm/pipeline/reperform.hpp"

#include "gsm/core/error.hpp"
#include "gsm/energy/mask.hpp"
#include "gsm/pipeline/kmeans.hpp"
#include "gsm/render/splat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace gsm {

namespace {

std::map<int, std::vector<std::size_t>> group_by_label(const GaussianSet& set, const char* side) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& label = set.kernels[i].label;
    if (!label) throw InvalidArgument(std::string("match_semantic_clusters: ") + side + " kernel " + std::to_string(i) +
                                      " has no label");
    groups[*label].push_back(i);
  }
  return groups;
}

Vec3 mean_of(const PointList& pts) {
  Vec3 m = Vec3::Zero();
  for (const auto& p : pts) m += p;
  return m / static_cast<double>(pts.size());
}

}  // namespace

SemanticClusters match_semantic_clusters(const GaussianSet& source, const GaussianSet& driver,
                                         std::size_t clusters_per_label, std::uint64_t seed) {
  if (clusters_per_label == 0) throw InvalidArgument("match_semantic_clusters: clusters_per_label must be >= 1");
  const auto src_groups = group_by_label(source, "source");
  const auto drv_groups = group_by_label(driver, "driver");

  SemanticClusters out;
  for (const auto& [label, src_ids] : src_groups) {
    auto it = drv_groups.find(label);
    if (it == drv_groups.end()) continue;
    const auto& drv_ids = it->second;
    const std::size_t k = std::min({clusters_per_label, src_ids.size(), drv_ids.size()});

    PointList sp, dp;
    for (auto i : src_ids) sp.push_back(source.kernels[i].position);
    for (auto i : drv_ids) dp.push_back(driver.kernels[i].position);
    const auto label_seed = seed + static_cast<std::uint64_t>(label) * 0x9E3779B97F4A7C15ull;
    const Vec3 ms = mean_of(sp), md = mean_of(dp);
    const KMeansResult ks = kmeans(sp, static_cast<int>(k), label_seed);
    // Driver clusters start from the source centroids moved onto the driver's label mean, so
    // similar shapes get corresponding partitions.
    PointList start;
    for (const auto& c : ks.centroids) start.push_back(c - ms + md);
    const KMeansResult kd = kmeans_from(dp, std::move(start));

    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        pairs.emplace_back(((ks.centroids[a] - ms) - (kd.centroids[b] - md)).squaredNorm(), a, b);
    std::sort(pairs.begin(), pairs.end());
    std::vector<char> used_a(k, 0), used_b(k, 0);
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t j = 0; j < sp.size(); ++j) members[ks.assignments[j]].push_back(src_ids[j]);
    for (const auto& [d, a, b] : pairs) {
      if (used_a[a] || used_b[b]) continue;
      used_a[a] = used_b[b] = 1;
      out.members.push_back(members[a]);
      out.target_centroids.push_back(kd.centroids[b]);
      out.labels.push_back(label);
    }
  }
  if (out.members.empty()) throw RuntimeError("match_semantic_clusters: source and driver share no semantic label");
  return out;
}

AlignResult align_canonical(const GaussianSet& source_appearance, const GaussianSet& source_canonical_ref,
                            const GaussianSet& driver_motion_canonical, const ReperformConfig& cfg,
                            std::vector<OrthoCamera> cameras) {
  cfg.validate();
  validate(source_appearance);
  validate(source_canonical_ref);
  validate(driver_motion_canonical);
  if (source_canonical_ref.size() != source_appearance.size())
    throw InvalidArgument("align_canonical: reference set must have one kernel per source kernel");

  AlignResult result;
  result.clusters = match_semantic_clusters(source_appearance, driver_motion_canonical, cfg.clusters_per_label, cfg.seed);

  if (cameras.empty()) {
    PointList all = source_appearance.positions();
    const PointList drv = driver_motion_canonical.positions();
    all.insert(all.end(), drv.begin(), drv.end());
    cameras = default_axis_cameras(bounding_box(all), cfg.mask_resolution);
  }
  SplatOptions splat_opts;
  splat_opts.keep_footprints = false;
  std::vector<AlphaImage> targets;
  for (const auto& cam : cameras) targets.push_back(splat(driver_motion_canonical, cam, splat_opts).alpha_image());

  const NeighborGraph graph = build_arap_graph(source_canonical_ref.positions(), cfg.k_neighbors, cfg.length_scale);

  auto evaluate = [&](const GaussianSet& set) {
    TermEval out;
    EnergyEval m = e_mask(set, targets, cameras);
    EnergyEval s = e_sem(set, result.clusters);
    EnergyEval a = e_arap(source_canonical_ref, set, graph);
    out.total = std::move(m);
    const double mv = out.total.value;
    out.total.accumulate(s, cfg.lambda_sem);
    out.total.accumulate(a, cfg.lambda_1);
    out.terms = {mv, cfg.lambda_sem * s.value, cfg.lambda_1 * a.value};
    return out;
  };

  const std::vector<std::string> names{"e_mask", "e_sem", "e_arap"};
  GaussianSet start = source_appearance;
  if (cfg.centroid_prealign) {
    Vec3 shift = Vec3::Zero();
    for (std::size_t c = 0; c < result.clusters.members.size(); ++c) {
      Vec3 mean = Vec3::Zero();
      for (auto i : result.clusters.members[c]) mean += start.kernels[i].position;
      mean /= static_cast<double>(result.clusters.members[c].size());
      shift += result.clusters.target_centroids[c] - mean;
    }
    shift /= static_cast<double>(result.clusters.members.size());
    for (auto& k : start.kernels) k.position += shift;
  }
  LoopResult loop = run_adam_loop(start, FieldMask{}, cfg.lr, cfg.align_iterations, names, evaluate);
  if (cfg.centroid_prealign) {
    // Row 0 reports the untouched input; the gradient phase follows as iterations 1..N+1.
    const TermEval input = evaluate(source_appearance);
    std::vector<double> row{0.0};
    row.insert(row.end(), input.terms.begin(), input.terms.end());
    row.push_back(input.total.value);
    row.push_back(input.total.value);
    for (auto& r : loop.trace.rows) {
      r.front() += 1.0;
      r.back() = std::min(r.back(), input.total.value);
    }
    loop.trace.rows.insert(loop.trace.rows.begin(), std::move(row));
    if (!(loop.trace.rows.back().back() < input.total.value)) loop.best = source_appearance;
  }
  result.aligned = std::move(loop.best);
  result.cameras = std::move(cameras);
  result.trace = std::move(loop.trace);
  return result;
}

TransferResult transfer_motion(const GaussianSet& aligned_canonical, const GaussianSet& source_canonical,
                               const std::vector<FrameMotion>& driver_motion, const NeighborGraph& graph,
                               const ReperformConfig& cfg) {
  cfg.validate();
  validate(aligned_canonical);
  validate(source_canonical);
  if (source_canonical.size() != aligned_canonical.size())
    throw InvalidArgument("transfer_motion: source canonical must have one kernel per aligned kernel");
  if (graph.node_count() != aligned_canonical.size())
    throw InvalidArgument("transfer_motion: skinning graph must have one node per aligned kernel");
  const NeighborGraph arap = build_arap_graph(source_canonical.positions(), cfg.k_neighbors, cfg.length_scale);

  TransferResult result;
  for (const auto& motion : driver_motion) {
    GaussianSet warped = warp_appearance(aligned_canonical, motion, graph);
    warped.frame = motion.frame;
    auto evaluate = [&](const GaussianSet& set) {
      TermEval out;
      EnergyEval l2 = e_l2_gauss(set, warped);
      EnergyEval a = e_arap(source_canonical, set, arap);
      out.total = std::move(l2);
      const double lv = out.total.value;
      out.total.accumulate(a, cfg.lambda_2);
      out.terms = {lv, cfg.lambda_2 * a.value};
      return out;
    };
    LoopResult loop = run_adam_loop(warped, FieldMask{}, cfg.lr, cfg.transfer_iterations, {"e_l2", "e_arap"}, evaluate);
    result.frames.push_back(std::move(loop.best));
    result.traces.push_back(std::move(loop.trace));
  }
  return result;
}

}  // namespace gsm
