#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gsm {

/// Contiguous parameter range sharing one learning-rate schedule. Quaternion blocks hold
/// consecutive (w, x, y, z) groups that are renormalized after every step.
struct ParamBlock {
  std::string name;
  std::size_t offset = 0;
  std::size_t size = 0;
  double lr_start = 1e-3;
  double lr_end = 1e-4;
  bool quaternion = false;
};

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  /// Steps over which learning rates decay linearly from lr_start to lr_end.
  std::size_t decay_steps = 1;
};

class AdamState {
 public:
  AdamState(std::vector<ParamBlock> blocks, AdamOptions options);

  std::size_t steps() const { return step_; }
  const std::vector<ParamBlock>& blocks() const { return blocks_; }
  const AdamOptions& options() const { return options_; }
  /// Learning rate of `block` at 1-based step `step`.
  double learning_rate(std::size_t block, std::size_t step) const;

  /// One bias-corrected Adam update in place. Throws RuntimeError naming the block of the
  /// first non-finite gradient (parameters are left untouched in that case).
  void step(std::span<double> params, std::span<const double> grads);

 private:
  std::vector<ParamBlock> blocks_;
  AdamOptions options_;
  std::vector<double> m_;
  std::vector<double> v_;
  std::size_t step_ = 0;
};

inline void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads) {
  state.step(params, grads);
}

}  // namespace gsm
