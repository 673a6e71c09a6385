#pragma once

#include <cstddef>
#include <cstdint>

namespace gsm {

struct LearningRates {
  double position = 1e-3;
  double rotation = 1e-3;
  double log_scale = 1e-3;
  double opacity = 1e-3;
  double color = 1e-2;
  /// lr_end = final_ratio * lr_start (linear decay).
  double final_ratio = 0.1;
};

struct TrackConfig {
  std::size_t init_iterations = 4000;
  std::size_t iterations = 4000;  // per frame
  double length_scale = 0.001;
  double lambda_iso = 0.004;
  double lambda_size = 1.0;
  double iso_ratio = 4.0;
  double size_alpha = 2.0;
  std::size_t k_neighbors = 4;
  LearningRates lr;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ReperformConfig {
  double lambda_sem = 0.001;
  double lambda_1 = 0.01;
  double lambda_2 = 0.2;
  double length_scale = 0.001;
  std::size_t align_iterations = 15000;
  /// Translate the source by the mean matched-centroid difference (the closed-form E_sem
  /// minimizer over translations) before the gradient phase.
  bool centroid_prealign = true;
  std::size_t transfer_iterations = 2000;
  std::size_t clusters_per_label = 8;
  std::size_t k_neighbors = 4;
  int mask_resolution = 64;
  LearningRates lr;
  std::uint64_t seed = 0;

  void validate() const;
};

struct MapConfig {
  int width = 512;
  int height = 512;
  int quant_bits = 10;
};

/// Everything a config file can set.
struct PipelineConfig {
  TrackConfig track;
  ReperformConfig reperform;
  MapConfig map;
};

}  // namespace gsm
