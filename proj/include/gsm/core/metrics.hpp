#pragma once

#include "gsm/core/types.hpp"

namespace gsm {

/// Symmetric chamfer distance in meters: mean of the two directed mean nearest-neighbor distances.
double chamfer_distance(const PointList& a, const PointList& b);

/// Root mean square of per-index distances; sizes must match.
double rms_distance(const PointList& a, const PointList& b);

Vec3 centroid(const PointList& points);

/// Least-squares rotation R minimizing sum |R (a_i - ca) - (b_i - cb)|^2 (Kabsch).
Mat3 best_fit_rotation(const PointList& a, const PointList& b);

}  // namespace gsm
