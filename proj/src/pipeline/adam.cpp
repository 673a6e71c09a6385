#include "gsm/pipeline/adam.hpp"

#include "gsm/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace gsm {

AdamState::AdamState(std::vector<ParamBlock> blocks, AdamOptions options)
    : blocks_(std::move(blocks)), options_(options) {
  std::size_t total = 0;
  for (const auto& b : blocks_) {
    if (b.offset != total) throw InvalidArgument("AdamState: parameter blocks must be contiguous");
    if (b.quaternion && b.size % 4 != 0) throw InvalidArgument("AdamState: quaternion block size must be a multiple of 4");
    if (!(b.lr_start >= 0.0) || !(b.lr_end >= 0.0)) throw InvalidArgument("AdamState: learning rates must be >= 0");
    total += b.size;
  }
  m_.assign(total, 0.0);
  v_.assign(total, 0.0);
}

double AdamState::learning_rate(std::size_t block, std::size_t step) const {
  const ParamBlock& b = blocks_.at(block);
  if (options_.decay_steps <= 1) return b.lr_start;
  const double t = std::min(1.0, static_cast<double>(step > 0 ? step - 1 : 0) /
                                     static_cast<double>(options_.decay_steps - 1));
  return b.lr_start + (b.lr_end - b.lr_start) * t;
}

void AdamState::step(std::span<double> params, std::span<const double> grads) {
  if (params.size() != m_.size() || grads.size() != m_.size())
    throw InvalidArgument("adam_step: params and grads must match the block layout");
  for (const auto& b : blocks_)
    for (std::size_t i = b.offset; i < b.offset + b.size; ++i)
      if (!std::isfinite(grads[i])) throw RuntimeError("adam_step: non-finite gradient in block '" + b.name + "'");

  ++step_;
  const double b1 = options_.beta1, b2 = options_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(step_));
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    const ParamBlock& b = blocks_[bi];
    const double lr = learning_rate(bi, step_);
    for (std::size_t i = b.offset; i < b.offset + b.size; ++i) {
      m_[i] = b1 * m_[i] + (1.0 - b1) * grads[i];
      v_[i] = b2 * v_[i] + (1.0 - b2) * grads[i] * grads[i];
      const double update = lr * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + options_.epsilon);
      params[i] -= update;
    }
    if (b.quaternion) {
      for (std::size_t q = b.offset; q < b.offset + b.size; q += 4) {
        const double n = std::sqrt(params[q] * params[q] + params[q + 1] * params[q + 1] +
                                   params[q + 2] * params[q + 2] + params[q + 3] * params[q + 3]);
        if (!(n > 0.0)) throw RuntimeError("adam_step: quaternion collapsed to zero in block '" + b.name + "'");
        if (n != 1.0)
          for (int c = 0; c < 4; ++c) params[q + c] /= n;
      }
    }
  }
}

}  // namespace gsm
