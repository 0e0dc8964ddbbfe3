#include "hamincl/action.hpp"
#include "hamincl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hamincl {

namespace {

PeriodicTrajectory random_direction(const PeriodicTrajectory& like, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  PeriodicTrajectory h(like.period(), like.dim(), like.modes());
  const int kmax = std::min(like.modes(), 8);
  Vec m(like.dim());
  for (int i = 0; i < like.dim(); ++i) m[i] = normal(rng);
  h.set_mean(m);
  for (int k = 1; k <= kmax; ++k) {
    for (int i = 0; i < like.dim(); ++i) {
      h.set_cos(i, k, normal(rng) / k);
      h.set_sin(i, k, normal(rng) / k);
    }
  }
  return h;
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den > 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

}  // namespace

EkelandReport ekeland_diagnostic(const std::vector<PeriodicTrajectory>& iterates,
                                 const std::vector<CeramiRecord>& records,
                                 const PotentialModel& model, const EkelandOptions& opts) {
  if (iterates.size() != records.size() || records.empty()) {
    throw PreconditionError("ekeland_diagnostic needs one iterate per record");
  }
  EkelandReport rep;
  const auto& last = records.back();
  rep.f_infinity = last.f - last.measure * last.measure;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(opts.seed);
  for (std::size_t n = 0; n < records.size(); ++n) {
    const auto& g = iterates[n];
    const double eps = std::sqrt(std::max(records[n].f - rep.f_infinity, 0.0));
    const double factor = eps / (1.0 + h1_norm(g));

    std::vector<PeriodicTrajectory> dirs;
    for (int i = 0; i < g.dim(); ++i) {
      Vec c = Vec::Zero(g.dim());
      c[i] = 1.0;
      dirs.push_back(PeriodicTrajectory::constant(g.period(), g.modes(), c));
      dirs.push_back(PeriodicTrajectory::constant(g.period(), g.modes(), -c));
    }
    const auto grad = min_norm_subgradient(g, model, Metric::L2);
    if (grad.l2_norm > 0.0) {
      dirs.push_back(grad.residual);
      dirs.push_back(-1.0 * grad.residual);
    }
    for (int d = 0; d < opts.directions; ++d) dirs.push_back(random_direction(g, rng));

    for (auto& h : dirs) {
      const double hn = h1_norm(h);
      if (hn == 0.0) continue;
      h *= 1.0 / hn;
      const double slack = action_clarke_directional(g, model, h) + factor;
      rep.worst_slack = std::min(rep.worst_slack, slack);
      ++rep.pairs;
      if (slack < -opts.tol) ++rep.violations;
    }
  }
  rep.fraction = rep.pairs > 0 ? static_cast<double>(rep.violations) / rep.pairs : 0.0;
  rep.flagged = rep.violations > 0;
  return rep;
}

SequenceClass classify_sequence(const std::vector<CeramiRecord>& records) {
  const int N = static_cast<int>(records.size());
  if (N < 10) throw PreconditionError("classify_sequence needs at least 10 records");
  const int q3 = (3 * N) / 4;
  std::vector<double> idx, log_measure, log_minnorm, log_idx, log_h1;
  SequenceClass c;
  for (int i = 0; i < N; ++i) c.max_h1 = std::max(c.max_h1, records[i].h1norm);
  double max_measure = 0.0, max_minnorm = 0.0;
  for (int i = 0; i < N; ++i) {
    max_measure = std::max(max_measure, records[i].measure);
    max_minnorm = std::max(max_minnorm, records[i].minnorm);
  }
  for (int i = q3; i < N; ++i) {
    idx.push_back(i);
    log_measure.push_back(std::log(std::max(records[i].measure, 1e-300)));
    log_minnorm.push_back(std::log(std::max(records[i].minnorm, 1e-300)));
    log_idx.push_back(std::log(i + 1.0));
    log_h1.push_back(std::log1p(records[i].h1norm));
  }
  const auto& last = records.back();
  c.f_limit = last.f;
  c.f_converging = std::abs(last.f - records[q3].f) <= 1e-6 * (1.0 + std::abs(last.f));

  const double measure_slope = lsq_slope(idx, log_measure);
  const double minnorm_slope = lsq_slope(idx, log_minnorm);
  const bool measure_zero = last.measure <= 1e-12;
  const bool minnorm_zero = last.minnorm <= 1e-12;
  c.last_quartile_decreasing = measure_zero || measure_slope < 0.0;
  const bool measure_to_zero =
      measure_zero || (measure_slope < 0.0 && last.measure <= 1e-3 * (1.0 + max_measure));
  const bool minnorm_to_zero =
      minnorm_zero || (minnorm_slope < 0.0 && last.minnorm <= 1e-3 * (1.0 + max_minnorm));

  c.bounded = lsq_slope(log_idx, log_h1) < 0.1 && c.max_h1 < 1e6;
  c.is_PS_like = c.f_converging && minnorm_to_zero;
  c.is_CPS_like = c.f_converging && measure_to_zero;
  return c;
}

}  // namespace hamincl
