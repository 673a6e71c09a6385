#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gsm {

struct GradcheckResult {
  std::string term;
  double max_relative_error = 0.0;  // worst ||analytic - numeric||_inf / ||numeric||_inf over instances
  double tolerance = 0.0;
  std::size_t instances = 0;

  bool passed() const { return max_relative_error < tolerance; }
};

struct GradcheckOptions {
  std::size_t instances = 20;
  std::size_t max_kernels = 50;
  int image_size = 32;
  double step = 1e-6;
};

/// Central-difference check of every energy term on seeded random instances. e_mask runs on three
/// axis views; the size term's stop-gradient mean is held fixed while differencing. Each scalar
/// takes the step in {step, step/10, step/100} whose one-sided differences agree best.
std::vector<GradcheckResult> run_gradcheck(std::uint64_t seed, const GradcheckOptions& options = {});

}  // namespace gsm
