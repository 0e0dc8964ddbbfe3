#include "hamincl/action.hpp"

#include "hamincl/errors.hpp"
#include "hamincl/kernels.hpp"

#include <cmath>
#include <limits>

namespace hamincl {

namespace {

void require_dim(const PeriodicTrajectory& q, const PotentialModel& model) {
  if (q.dim() != model.dim()) {
    throw DimensionError("trajectory dimension " + std::to_string(q.dim()) +
                         " does not match potential dimension " + std::to_string(model.dim()));
  }
}

// -qddot as a trajectory.
PeriodicTrajectory minus_second_derivative(const PeriodicTrajectory& q) {
  Mat a = q.cos_coeffs();
  Mat b = q.sin_coeffs();
  a.col(0).setZero();
  for (int k = 1; k <= q.modes(); ++k) {
    const double w2 = q.omega(k) * q.omega(k);
    a.col(k) *= w2;
    b.col(k) *= w2;
  }
  return PeriodicTrajectory(q.period(), std::move(a), std::move(b));
}

}  // namespace

double action_value(const PeriodicTrajectory& q, const PotentialModel& model) {
  require_dim(q, model);
  const Mat x = sample(q);
  const int M = static_cast<int>(x.rows());
  double pot = 0.0;
  for (int j = 0; j < M; ++j) pot += model.value(x.row(j).transpose());
  return 0.5 * kinetic_energy2(q) - q.period() / M * pot;
}

PeriodicTrajectory precondition(const PeriodicTrajectory& r) {
  Mat a = r.cos_coeffs();
  Mat b = r.sin_coeffs();
  for (int k = 1; k <= r.modes(); ++k) {
    const double w = 1.0 / (1.0 + r.omega(k) * r.omega(k));
    a.col(k) *= w;
    b.col(k) *= w;
  }
  return PeriodicTrajectory(r.period(), std::move(a), std::move(b));
}

ActionGradient min_norm_subgradient(const PeriodicTrajectory& q, const PotentialModel& model,
                                    Metric metric, const GradientOptions& opts) {
  require_dim(q, model);
  const PeriodicTrajectory acc = minus_second_derivative(q);
  const int M = quadrature_nodes(q.modes());
  const Mat x = sample(q, M);
  const Mat y = sample(acc, M);
  auto sel = opts.parallel ? kernels::select_nodes_parallel(model, x, y, opts.tol_rel, opts.tol_rel)
                           : kernels::select_nodes_serial(model, x, y, opts.tol_rel, opts.tol_rel);
  ActionGradient g{acc - fit(sel.selection, q.period(), q.modes()),
                   PeriodicTrajectory(q.period(), q.dim(), q.modes()), 0.0, 0.0, {}, {}, {}};
  g.l2_norm = l2_norm(g.residual);
  const PeriodicTrajectory pr = precondition(g.residual);
  g.h1_precond_norm = std::sqrt(std::max(0.0, l2_inner(g.residual, pr)));
  g.direction = metric == Metric::H1Precond ? -1.0 * pr : -1.0 * g.residual;
  g.selection = std::move(sel.selection);
  g.weights = std::move(sel.weights);
  g.active = std::move(sel.active);
  return g;
}

double action_clarke_directional(const PeriodicTrajectory& q, const PotentialModel& model,
                                 const PeriodicTrajectory& h) {
  require_dim(q, model);
  if (!q.same_shape(h)) throw DimensionError("direction must match the trajectory shape");
  const double kin = l2_inner(derivative(q), derivative(h));
  const int M = quadrature_nodes(q.modes());
  const Mat x = sample(q, M);
  const Mat hv = sample(h, M);
  double pot = 0.0;
  for (int j = 0; j < M; ++j) {
    const auto s = model.subdiff(x.row(j).transpose());
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& v : s.vertices) lo = std::min(lo, v.dot(hv.row(j).transpose()));
    pot += lo;
  }
  return kin - q.period() / M * pot;
}

CeramiRecord make_record(const PeriodicTrajectory& q, double f, double minnorm, int iter) {
  CeramiRecord r;
  r.iter = iter;
  r.f = f;
  r.h1norm = h1_norm(q);
  r.mean_norm = h1_norm_mean(q);
  r.minnorm = minnorm;
  r.measure = (1.0 + r.h1norm) * minnorm;
  return r;
}

CeramiRecord cerami_measure(const PeriodicTrajectory& q, const PotentialModel& model, int iter,
                            const GradientOptions& opts) {
  const auto g = min_norm_subgradient(q, model, Metric::L2, opts);
  return make_record(q, action_value(q, model), g.l2_norm, iter);
}

}  // namespace hamincl
