#pragma once

// Hot loops with a serial reference and an OpenMP variant.  Both produce
// bitwise-identical output: per-node work is independent, reductions are done
// serially in index order afterwards.

#include "hamincl/potential.hpp"

#include <vector>

namespace hamincl {

namespace kernels {

struct NodeSelection {
  Mat selection;                        ///< M x n, chosen element of conv(vertices)
  Vec distance;                         ///< |target - selection| per node
  std::vector<Vec> weights;             ///< convex weights over the active pieces
  std::vector<std::vector<int>> active; ///< piece indices active at tol_rel
  std::vector<int> wide_count;          ///< active count at wide_rel
  Vec potential;                        ///< V(q(t_j))
};

/// For each row j: project target.row(j) onto the hull of the gradients of
/// pieces with V_i >= V - tol_rel (1 + |V|) at points.row(j).
NodeSelection select_nodes_serial(const PotentialModel& model, const Mat& points, const Mat& target,
                                  double tol_rel, double wide_rel);
NodeSelection select_nodes_parallel(const PotentialModel& model, const Mat& points,
                                    const Mat& target, double tol_rel, double wide_rel);

/// Action values for a batch of loops.
Vec action_values_serial(const std::vector<PeriodicTrajectory>& loops, const PotentialModel& model);
Vec action_values_parallel(const std::vector<PeriodicTrajectory>& loops,
                           const PotentialModel& model);

/// Index of the max entry, lowest index on ties.
int argmax_lowest(const Vec& values);

}  // namespace kernels
}  // namespace hamincl
