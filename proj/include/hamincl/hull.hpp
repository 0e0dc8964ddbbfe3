#pragma once

#include "hamincl/trajectory.hpp"

#include <vector>

namespace hamincl {

struct HullProjection {
  Vec projection;
  Vec weights;  ///< convex weights, one per input vertex
  double distance = 0.0;
};

/// Nearest point of conv(vertices) to `point` (Wolfe's minimum-norm-point
/// iteration on the translated vertices).  Vertices must be nonempty.
HullProjection project_hull(const Vec& point, const std::vector<Vec>& vertices);

}  // namespace hamincl
