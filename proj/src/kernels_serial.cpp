#include "hamincl/action.hpp"
#include "kernels_common.hpp"

namespace hamincl::kernels {

NodeSelection select_nodes_serial(const PotentialModel& model, const Mat& points, const Mat& target,
                                  double tol_rel, double wide_rel) {
  NodeSelection s;
  const int M = static_cast<int>(points.rows());
  detail::allocate(s, M, static_cast<int>(points.cols()));
  for (int j = 0; j < M; ++j) detail::select_one(model, points, target, tol_rel, wide_rel, j, s);
  return s;
}

Vec action_values_serial(const std::vector<PeriodicTrajectory>& loops, const PotentialModel& model) {
  Vec out(static_cast<int>(loops.size()));
  for (std::size_t i = 0; i < loops.size(); ++i) out[i] = action_value(loops[i], model);
  return out;
}

int argmax_lowest(const Vec& values) {
  int best = 0;
  for (int i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace hamincl::kernels
