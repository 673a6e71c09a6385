#include "gsm/warp/regressor.hpp"

#include "gsm/core/error.hpp"

namespace gsm {

AttributeMaps baseline_regress(const AttributeMap& position_map, const MortonMapping& mapping,
                               const GaussianSet& canonical, const FrameMotion& frame_motion,
                               const NeighborGraph& graph) {
  if (position_map.channels != 3 || !(position_map.resolution == mapping.resolution()))
    throw InvalidArgument("baseline_regress: position map must be 3-channel at the mapping resolution");
  if (canonical.size() != mapping.valid_count())
    throw InvalidArgument("baseline_regress: canonical set does not match the mapping");
  return pseudo_gt_attributes(warp_appearance(canonical, frame_motion, graph), mapping);
}

}  // namespace gsm
