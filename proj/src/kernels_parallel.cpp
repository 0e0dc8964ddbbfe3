#include "hamincl/action.hpp"
#include "kernels_common.hpp"

namespace hamincl::kernels {

NodeSelection select_nodes_parallel(const PotentialModel& model, const Mat& points,
                                    const Mat& target, double tol_rel, double wide_rel) {
  NodeSelection s;
  const int M = static_cast<int>(points.rows());
  detail::allocate(s, M, static_cast<int>(points.cols()));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < M; ++j) detail::select_one(model, points, target, tol_rel, wide_rel, j, s);
  return s;
}

Vec action_values_parallel(const std::vector<PeriodicTrajectory>& loops,
                           const PotentialModel& model) {
  const int N = static_cast<int>(loops.size());
  Vec out(N);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < N; ++i) out[i] = action_value(loops[i], model);
  return out;
}

}  // namespace hamincl::kernels
