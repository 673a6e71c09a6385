#pragma once

#include "gsm/core/gaussian.hpp"
#include "gsm/energy/energy.hpp"
#include "gsm/pipeline/adam.hpp"
#include "gsm/pipeline/config.hpp"

#include <functional>
#include <string>
#include <vector>

namespace gsm {

/// Which kernel attributes an optimization loop updates.
struct FieldMask {
  bool position = true;
  bool rotation = true;
  bool log_scale = false;
  bool opacity = false;
  bool color = false;
};

/// Flattens the selected fields of a set into one parameter vector and back.
class SetParameterization {
 public:
  SetParameterization(const GaussianSet& layout, FieldMask fields, const LearningRates& lr);

  std::size_t size() const { return size_; }
  const std::vector<ParamBlock>& blocks() const { return blocks_; }
  std::vector<double> pack(const GaussianSet& set) const;
  void unpack(std::span<const double> params, GaussianSet& set) const;
  std::vector<double> gradient(const EnergyEval& eval) const;

 private:
  FieldMask fields_;
  std::size_t kernels_ = 0;
  std::size_t channels_ = 0;
  std::size_t size_ = 0;
  std::vector<ParamBlock> blocks_;
};

/// Optimization history: one row per evaluated iterate (row 0 is the initialization).
struct EnergyTrace {
  std::vector<std::string> columns;  // iteration, terms..., total, best_total
  std::vector<std::vector<double>> rows;

  double initial_total() const;
  double final_best_total() const;
};

/// Energy value split into named weighted terms plus the combined gradient.
struct TermEval {
  std::vector<double> terms;  // already weighted, summing to total.value
  EnergyEval total;
};

struct LoopResult {
  GaussianSet best;
  EnergyTrace trace;
};

/// Adam descent over `fields` for `iterations` steps; returns the best iterate seen.
LoopResult run_adam_loop(const GaussianSet& initial, FieldMask fields, const LearningRates& lr, std::size_t iterations,
                         const std::vector<std::string>& term_names,
                         const std::function<TermEval(const GaussianSet&)>& evaluate);

}  // namespace gsm
