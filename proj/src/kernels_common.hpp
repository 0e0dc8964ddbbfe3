#pragma once

#include "hamincl/hull.hpp"
#include "hamincl/kernels.hpp"

#include <cmath>
#include <limits>

namespace hamincl::kernels::detail {

inline void allocate(NodeSelection& s, int M, int n) {
  s.selection = Mat::Zero(M, n);
  s.distance = Vec::Zero(M);
  s.weights.assign(M, Vec());
  s.active.assign(M, {});
  s.wide_count.assign(M, 0);
  s.potential = Vec::Zero(M);
}

inline void select_one(const PotentialModel& model, const Mat& points, const Mat& target,
                       double tol_rel, double wide_rel, int j, NodeSelection& s) {
  const Vec x = points.row(j).transpose();
  const Vec y = target.row(j).transpose();
  const auto& pieces = model.pieces();
  const int m = static_cast<int>(pieces.size());
  double vals[64];
  std::vector<double> big;
  double* v = vals;
  if (m > 64) {
    big.resize(m);
    v = big.data();
  }
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    v[i] = pieces[i].value(x);
    best = std::max(best, v[i]);
  }
  const double scale = 1.0 + std::abs(best);
  std::vector<Vec> verts;
  std::vector<int> act;
  int wide = 0;
  for (int i = 0; i < m; ++i) {
    if (v[i] >= best - tol_rel * scale) {
      act.push_back(i);
      verts.push_back(pieces[i].gradient(x));
    }
    if (v[i] >= best - wide_rel * scale) ++wide;
  }
  s.active[j] = act;
  s.wide_count[j] = wide;
  s.potential[j] = best;
  if (verts.empty()) {  // non-finite potential values
    s.selection.row(j).setConstant(std::numeric_limits<double>::quiet_NaN());
    s.distance[j] = std::numeric_limits<double>::quiet_NaN();
    s.weights[j] = Vec();
    return;
  }
  const HullProjection h = project_hull(y, verts);
  s.selection.row(j) = h.projection.transpose();
  s.distance[j] = h.distance;
  s.weights[j] = h.weights;
}

}  // namespace hamincl::kernels::detail
