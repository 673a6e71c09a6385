#include "gsm/pipeline/tracking.hpp"

#include "gsm/core/error.hpp"
#include "gsm/core/neighbor_graph.hpp"
#include "gsm/energy/energy.hpp"

namespace gsm {

InitResult init_canonical(const GaussianSet& initial, const ColoredCloud& target, const TrackConfig& cfg) {
  cfg.validate();
  if (initial.role != Role::Motion) throw InvalidArgument("init_canonical: initial set must have role Motion");
  if (initial.empty()) throw InvalidArgument("init_canonical: initial set is empty");
  validate(initial);
  const DataTarget data(target);

  auto evaluate = [&](const GaussianSet& set) {
    TermEval out;
    EnergyEval d = e_data_points(set, data);
    EnergyEval iso = e_iso(set, cfg.iso_ratio);
    EnergyEval size = e_size(set, cfg.size_alpha);
    out.total = EnergyEval::zeros(set.size(), set.color_channels());
    out.total.accumulate(d);
    out.total.accumulate(iso, cfg.lambda_iso);
    out.total.accumulate(size, cfg.lambda_size);
    out.terms = {d.value, cfg.lambda_iso * iso.value, cfg.lambda_size * size.value};
    return out;
  };

  FieldMask fields{true, true, true, true, true};
  LoopResult loop = run_adam_loop(initial, fields, cfg.lr, cfg.init_iterations, {"e_data", "e_iso", "e_size"}, evaluate);
  return {std::move(loop.best), std::move(loop.trace)};
}

TrackResult track_sequence(const GaussianSet& canonical_motion, const std::vector<ColoredCloud>& targets,
                           const TrackConfig& cfg, int first_frame) {
  cfg.validate();
  if (targets.empty()) throw InvalidArgument("track_sequence: at least one target frame is required");
  if (canonical_motion.role != Role::Motion) throw InvalidArgument("track_sequence: canonical set must have role Motion");
  validate(canonical_motion);
  const NeighborGraph graph = build_arap_graph(canonical_motion.positions(), cfg.k_neighbors, cfg.length_scale);

  TrackResult result;
  GaussianSet prev = canonical_motion;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const DataTarget data(targets[t]);
    auto evaluate = [&](const GaussianSet& set) {
      TermEval out;
      EnergyEval d = e_data_points(set, data);
      EnergyEval a = e_arap(prev, set, graph);
      out.total = std::move(d);
      const double dv = out.total.value;
      out.total.accumulate(a);
      out.terms = {dv, a.value};
      return out;
    };
    GaussianSet start = prev;
    start.frame = first_frame + static_cast<int>(t);
    LoopResult loop = run_adam_loop(start, FieldMask{}, cfg.lr, cfg.iterations, {"e_data", "e_arap"}, evaluate);
    prev = loop.best;
    result.frames.push_back(std::move(loop.best));
    result.traces.push_back(std::move(loop.trace));
  }
  return result;
}

}  // namespace gsm
