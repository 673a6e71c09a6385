#pragma once

#include "gsm/core/gaussian.hpp"
#include "gsm/render/camera.hpp"

#include <cstdint>
#include <vector>

namespace gsm {

struct Projection {
  Vec2 mean = Vec2::Zero();  // plane coordinates (meters)
  Mat2 cov = Mat2::Zero();   // plane covariance (square meters)
  double depth = 0.0;
};

/// Plane mean, view-plane block of R(q) diag(exp(s))^2 R(q)^T in camera axes, and view depth.
Projection project(const GaussianKernel& kernel, const OrthoCamera& cam);
std::vector<Projection> project(const GaussianSet& set, const OrthoCamera& cam);

struct SplatOptions {
  /// Footprint radius in standard deviations.
  double truncation_sigma = 3.0;
  bool keep_footprints = true;
};

/// Per-pixel contribution profile of one kernel:
///   g(m) = opacity * (exp(-m/2) - exp(-T^2/2)) / (1 - exp(-T^2/2)),  m = d^T Sigma^-1 d < T^2,
/// i.e. the Gaussian truncated at T sigma and shifted so it reaches zero continuously at the
/// cutoff. g(0) = opacity.
double footprint_profile(double mahalanobis2, double opacity, double truncation_sigma);
/// dg/dm of footprint_profile.
double footprint_profile_dm(double mahalanobis2, double opacity, double truncation_sigma);

struct FootprintEntry {
  std::uint32_t pixel = 0;
  double contribution = 0.0;
};

struct AlphaImage {
  int width = 0;
  int height = 0;
  std::vector<double> alpha;

  bool operator==(const AlphaImage&) const = default;
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<double> rgb;  // interleaved, row-major
};

struct RenderOutput {
  int width = 0;
  int height = 0;
  std::vector<double> rgb;    // W*H*3, composited front to back over black
  std::vector<double> alpha;  // W*H, 1 - prod(1 - g_i)
  std::vector<std::vector<FootprintEntry>> footprints;  // per kernel, ascending pixel index
  std::size_t skipped = 0;    // kernels dropped for ill-conditioned plane covariance

  AlphaImage alpha_image() const { return {width, height, alpha}; }
  RgbImage rgb_image() const { return {width, height, rgb}; }
};

/// CPU soft splatting. Kernels are composited in (depth, index) order, so the output does not
/// depend on input ordering beyond that key.
RenderOutput splat(const GaussianSet& set, const OrthoCamera& cam, const SplatOptions& options = {});

}  // namespace gsm
