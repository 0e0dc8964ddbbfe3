#include "hamincl/verify.hpp"

#include "hamincl/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace hamincl {

bool is_nonconstant(const PeriodicTrajectory& q) {
  return h1_norm(split(q).oscillation) > 1e-6 * (1.0 + q.mean().norm());
}

double energy_drift(const PeriodicTrajectory& q, const PotentialModel& model, int refinement) {
  const int N = std::max(1, refinement) * (2 * q.modes() + 2);
  const Mat x = sample(q, N);
  const Mat v = sample(derivative(q), N);
  Vec E(N);
  for (int j = 0; j < N; ++j) E[j] = 0.5 * v.row(j).squaredNorm() + model.value(x.row(j).transpose());
  const double mean = E.mean();
  return (E.array() - mean).abs().maxCoeff();
}

VerificationReport inclusion_residual(const PeriodicTrajectory& q, const PotentialModel& model,
                                      const VerifyOptions& opts) {
  const int M = quadrature_nodes(q.modes());
  Mat a = q.cos_coeffs(), b = q.sin_coeffs();
  a.col(0).setZero();
  for (int k = 1; k <= q.modes(); ++k) {
    const double w2 = q.omega(k) * q.omega(k);
    a.col(k) *= w2;
    b.col(k) *= w2;
  }
  const Mat target = sample(PeriodicTrajectory(q.period(), a, b), M);
  const Mat x = sample(q, M);
  const double wide = opts.tol_active * opts.widen;
  const auto sel = opts.parallel
                       ? kernels::select_nodes_parallel(model, x, target, opts.tol_active, wide)
                       : kernels::select_nodes_serial(model, x, target, opts.tol_active, wide);

  VerificationReport r;
  const double w = q.period() / M;
  double sum = 0.0, sum_all = 0.0;
  int excluded = 0;
  for (int j = 0; j < M; ++j) {
    const double d = sel.distance[j];
    const bool ex = sel.wide_count[j] > 1;
    r.times.push_back(j * q.period() / M);
    r.distances.push_back(d);
    r.active_counts.push_back(sel.wide_count[j]);
    r.excluded.push_back(ex);
    sum_all += w * d * d;
    if (ex) {
      ++excluded;
    } else {
      sum += w * d * d;
      r.max_distance = std::max(r.max_distance, d);
    }
  }
  r.aggregate = std::sqrt(sum);
  r.aggregate_all = std::sqrt(sum_all);
  r.excluded_fraction = static_cast<double>(excluded) / M;
  r.energy_drift = energy_drift(q, model, opts.drift_refinement);
  r.oscillation_norm = h1_norm(split(q).oscillation);
  r.nonconstant = is_nonconstant(q);
  return r;
}

}  // namespace hamincl
