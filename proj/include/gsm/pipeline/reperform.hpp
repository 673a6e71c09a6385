#pragma once

#include "gsm/core/gaussian.hpp"
#include "gsm/core/neighbor_graph.hpp"
#include "gsm/energy/energy.hpp"
#include "gsm/pipeline/config.hpp"
#include "gsm/pipeline/optimize.hpp"
#include "gsm/render/camera.hpp"
#include "gsm/warp/warp.hpp"

#include <vector>

namespace gsm {

/// Per-label k-means on both sides and greedy nearest-centroid matching of the clusters after
/// removing each side's per-label mean. Driver clusters are seeded from the mean-shifted source
/// centroids. Throws RuntimeError when the sides share no label.
SemanticClusters match_semantic_clusters(const GaussianSet& source, const GaussianSet& driver,
                                         std::size_t clusters_per_label, std::uint64_t seed);

struct AlignResult {
  GaussianSet aligned;
  SemanticClusters clusters;
  std::vector<OrthoCamera> cameras;
  EnergyTrace trace;  // iteration, e_mask, e_sem, e_arap, total, best_total (weighted terms)
};

/// Canonical alignment of the source appearance set to a driving performer: minimizes
///   |M_hat - M_r|_1 + lambda_sem E_sem + lambda_1 E_arap(source_ref, aligned)
/// over positions and rotations. Target masks are rendered from the driver's canonical motion
/// set; an empty camera list uses three axis views framing both sets.
AlignResult align_canonical(const GaussianSet& source_appearance, const GaussianSet& source_canonical_ref,
                            const GaussianSet& driver_motion_canonical, const ReperformConfig& cfg,
                            std::vector<OrthoCamera> cameras = {});

struct TransferResult {
  std::vector<GaussianSet> frames;
  std::vector<EnergyTrace> traces;  // iteration, e_l2, e_arap, total, best_total (weighted terms)
};

/// Per frame: warp the aligned set with the driver motion, then minimize
///   L2(current, warp) + lambda_2 E_arap(source_canonical, current)
/// over positions and rotations starting from the warp. `graph` is the aligned-appearance to
/// driver-motion skinning graph.
TransferResult transfer_motion(const GaussianSet& aligned_canonical, const GaussianSet& source_canonical,
                               const std::vector<FrameMotion>& driver_motion, const NeighborGraph& graph,
                               const ReperformConfig& cfg);

}  // namespace gsm
