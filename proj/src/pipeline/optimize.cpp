#include "gsm/pipeline/optimize.hpp"

#include "gsm/core/error.hpp"

#include <algorithm>
#include <limits>

namespace gsm {

namespace {

constexpr double kMinOpacity = 1e-4;

}  // namespace

SetParameterization::SetParameterization(const GaussianSet& layout, FieldMask fields, const LearningRates& lr)
    : fields_(fields), kernels_(layout.size()), channels_(layout.color_channels()) {
  auto add = [&](const char* name, std::size_t per_kernel, double rate, bool quat) {
    ParamBlock b;
    b.name = name;
    b.offset = size_;
    b.size = per_kernel * kernels_;
    b.lr_start = rate;
    b.lr_end = rate * lr.final_ratio;
    b.quaternion = quat;
    size_ += b.size;
    blocks_.push_back(b);
  };
  if (fields.position) add("position", 3, lr.position, false);
  if (fields.rotation) add("rotation", 4, lr.rotation, true);
  if (fields.log_scale) add("log_scale", 3, lr.log_scale, false);
  if (fields.opacity) add("opacity", 1, lr.opacity, false);
  if (fields.color && channels_ > 0) add("color", channels_, lr.color, false);
}

std::vector<double> SetParameterization::pack(const GaussianSet& set) const {
  if (set.size() != kernels_ || set.color_channels() != channels_)
    throw InvalidArgument("SetParameterization::pack: set layout does not match");
  std::vector<double> out;
  out.reserve(size_);
  if (fields_.position)
    for (const auto& k : set.kernels) out.insert(out.end(), {k.position.x(), k.position.y(), k.position.z()});
  if (fields_.rotation)
    for (const auto& k : set.kernels) out.insert(out.end(), {k.rotation.w, k.rotation.x, k.rotation.y, k.rotation.z});
  if (fields_.log_scale)
    for (const auto& k : set.kernels) out.insert(out.end(), {k.log_scale.x(), k.log_scale.y(), k.log_scale.z()});
  if (fields_.opacity)
    for (const auto& k : set.kernels) out.push_back(k.opacity);
  if (fields_.color && channels_ > 0)
    for (const auto& k : set.kernels) out.insert(out.end(), k.color.begin(), k.color.end());
  return out;
}

void SetParameterization::unpack(std::span<const double> params, GaussianSet& set) const {
  if (params.size() != size_ || set.size() != kernels_)
    throw InvalidArgument("SetParameterization::unpack: size mismatch");
  std::size_t o = 0;
  if (fields_.position)
    for (auto& k : set.kernels) {
      k.position = Vec3(params[o], params[o + 1], params[o + 2]);
      o += 3;
    }
  if (fields_.rotation)
    for (auto& k : set.kernels) {
      k.rotation = Quat{params[o], params[o + 1], params[o + 2], params[o + 3]};
      o += 4;
    }
  if (fields_.log_scale)
    for (auto& k : set.kernels) {
      k.log_scale = Vec3(params[o], params[o + 1], params[o + 2]);
      o += 3;
    }
  if (fields_.opacity)
    for (auto& k : set.kernels) k.opacity = std::clamp(params[o++], kMinOpacity, 1.0);
  if (fields_.color && channels_ > 0)
    for (auto& k : set.kernels)
      for (std::size_t c = 0; c < channels_; ++c) k.color[c] = params[o++];
}

std::vector<double> SetParameterization::gradient(const EnergyEval& eval) const {
  if (eval.size() != kernels_) throw InvalidArgument("SetParameterization::gradient: kernel count mismatch");
  std::vector<double> g;
  g.reserve(size_);
  if (fields_.position)
    for (const auto& v : eval.grad_p) g.insert(g.end(), {v.x(), v.y(), v.z()});
  if (fields_.rotation)
    for (const auto& v : eval.grad_q) g.insert(g.end(), {v[0], v[1], v[2], v[3]});
  if (fields_.log_scale)
    for (const auto& v : eval.grad_log_scale) g.insert(g.end(), {v.x(), v.y(), v.z()});
  if (fields_.opacity) g.insert(g.end(), eval.grad_opacity.begin(), eval.grad_opacity.end());
  if (fields_.color && channels_ > 0)
    for (std::size_t i = 0; i < kernels_; ++i) {
      if (eval.grad_color[i].size() != channels_)
        throw InvalidArgument("SetParameterization::gradient: color channel mismatch");
      g.insert(g.end(), eval.grad_color[i].begin(), eval.grad_color[i].end());
    }
  return g;
}

double EnergyTrace::initial_total() const {
  if (rows.empty() || columns.size() < 2) throw RuntimeError("EnergyTrace: empty trace");
  return rows.front()[columns.size() - 2];
}

double EnergyTrace::final_best_total() const {
  if (rows.empty()) throw RuntimeError("EnergyTrace: empty trace");
  return rows.back().back();
}

LoopResult run_adam_loop(const GaussianSet& initial, FieldMask fields, const LearningRates& lr, std::size_t iterations,
                         const std::vector<std::string>& term_names,
                         const std::function<TermEval(const GaussianSet&)>& evaluate) {
  SetParameterization param(initial, fields, lr);
  AdamOptions options;
  options.decay_steps = std::max<std::size_t>(iterations, 1);
  AdamState adam(param.blocks(), options);

  LoopResult result;
  result.trace.columns.push_back("iteration");
  result.trace.columns.insert(result.trace.columns.end(), term_names.begin(), term_names.end());
  result.trace.columns.push_back("total");
  result.trace.columns.push_back("best_total");

  GaussianSet current = initial;
  std::vector<double> params = param.pack(current);
  double best = std::numeric_limits<double>::infinity();

  auto record = [&](std::size_t iteration, const TermEval& eval) {
    if (eval.terms.size() != term_names.size()) throw InvalidArgument("run_adam_loop: term count mismatch");
    if (eval.total.value < best) {
      best = eval.total.value;
      result.best = current;
    }
    std::vector<double> row;
    row.reserve(result.trace.columns.size());
    row.push_back(static_cast<double>(iteration));
    row.insert(row.end(), eval.terms.begin(), eval.terms.end());
    row.push_back(eval.total.value);
    row.push_back(best);
    result.trace.rows.push_back(std::move(row));
  };

  TermEval eval = evaluate(current);
  result.best = current;
  record(0, eval);
  for (std::size_t it = 1; it <= iterations && param.size() > 0; ++it) {
    const std::vector<double> grad = param.gradient(eval.total);
    adam.step(params, grad);
    param.unpack(params, current);
    eval = evaluate(current);
    record(it, eval);
  }
  return result;
}

}  // namespace gsm
