#pragma once

#include "gsm/core/gaussian.hpp"
#include "gsm/pipeline/config.hpp"
#include "gsm/pipeline/optimize.hpp"

#include <vector>

namespace gsm {

struct InitResult {
  GaussianSet canonical;
  EnergyTrace trace;  // iteration, e_data, e_iso, e_size, total, best_total
};

/// Fits the canonical motion set to a colored target: lambda_iso E_iso + lambda_size E_size +
/// E_data over positions, rotations, log-scales, opacity and color.
InitResult init_canonical(const GaussianSet& initial, const ColoredCloud& target, const TrackConfig& cfg);

struct TrackResult {
  std::vector<GaussianSet> frames;   // frame t of every target, t = 0..T-1 offset by first_frame
  std::vector<EnergyTrace> traces;   // iteration, e_data, e_arap, total, best_total
};

/// Per-frame tracking. Each frame warm-starts from the previous solution and minimizes
/// E_data + E_arap(previous, current) over positions and rotations only, with the ARAP graph
/// built once on the canonical positions.
TrackResult track_sequence(const GaussianSet& canonical_motion, const std::vector<ColoredCloud>& targets,
                           const TrackConfig& cfg, int first_frame = 1);

}  // namespace gsm
