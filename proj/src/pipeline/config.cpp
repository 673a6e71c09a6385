#include "gsm/pipeline/config.hpp"

#include "gsm/core/error.hpp"

#include <cmath>
#include <string>

namespace gsm {

namespace {

void require_nonneg(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be a finite value >= 0");
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be a finite value > 0");
}

void validate_lr(const LearningRates& lr) {
  require_nonneg(lr.position, "lr_position");
  require_nonneg(lr.rotation, "lr_rotation");
  require_nonneg(lr.log_scale, "lr_scale");
  require_nonneg(lr.opacity, "lr_opacity");
  require_nonneg(lr.color, "lr_color");
  require_nonneg(lr.final_ratio, "lr_final_ratio");
}

}  // namespace

void TrackConfig::validate() const {
  require_positive(length_scale, "l");
  require_nonneg(lambda_iso, "lambda_iso");
  require_nonneg(lambda_size, "lambda_size");
  require_positive(iso_ratio, "iso_ratio");
  require_positive(size_alpha, "size_alpha");
  if (k_neighbors == 0) throw InvalidArgument("k_neighbors must be >= 1");
  validate_lr(lr);
}

void ReperformConfig::validate() const {
  require_positive(length_scale, "l");
  require_nonneg(lambda_sem, "lambda_sem");
  require_nonneg(lambda_1, "lambda_1");
  require_nonneg(lambda_2, "lambda_2");
  if (k_neighbors == 0) throw InvalidArgument("k_neighbors must be >= 1");
  if (clusters_per_label == 0) throw InvalidArgument("clusters_per_label must be >= 1");
  if (mask_resolution < 4) throw InvalidArgument("mask_resolution must be >= 4");
  validate_lr(lr);
}

}  // namespace gsm
