#include "hamincl/errors.hpp"
#include "hamincl/verify.hpp"

#include <cmath>

namespace hamincl {

namespace {

struct Rk4 {
  const SmoothPiece& piece;

  void step(Vec& q, Vec& p, double h) const {
    const Vec k1q = p;
    const Vec k1p = -piece.gradient(q);
    const Vec k2q = p + 0.5 * h * k1p;
    const Vec k2p = -piece.gradient(q + 0.5 * h * k1q);
    const Vec k3q = p + 0.5 * h * k2p;
    const Vec k3p = -piece.gradient(q + 0.5 * h * k2q);
    const Vec k4q = p + h * k3p;
    const Vec k4p = -piece.gradient(q + h * k3q);
    q += (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    p += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  }
};

const SmoothPiece& smooth_piece(const PotentialModel& model) {
  if (!model.is_smooth()) throw PreconditionError("shooting oracle needs a smooth potential");
  return model.pieces().front();
}

}  // namespace

Vec flow_map(const PotentialModel& model, double period, const Vec& q0, const Vec& p0, int steps) {
  const Rk4 rk{smooth_piece(model)};
  Vec q = q0, p = p0;
  const double h = period / steps;
  for (int i = 0; i < steps; ++i) rk.step(q, p, h);
  Vec out(2 * q.size());
  out << q, p;
  return out;
}

ShootingResult shooting_oracle(const PotentialModel& model, double period, const Vec& q0,
                               const Vec& p0, int modes, const ShootingOptions& opts) {
  const SmoothPiece& piece = smooth_piece(model);
  if (q0.size() != model.dim() || p0.size() != model.dim()) {
    throw DimensionError("initial condition dimension mismatch");
  }
  const int n = model.dim();
  const int M = quadrature_nodes(modes);
  const int per_node = (std::max(opts.steps, M) + M - 1) / M;
  const int N = per_node * M;

  Vec z(2 * n);
  z << q0, p0;
  auto residual = [&](const Vec& s) -> Vec {
    return flow_map(model, period, s.head(n), s.tail(n), N) - s;
  };

  Vec F = residual(z);
  int it = 0;
  double closure = F.norm();
  while (!(closure <= opts.closure_tol * (1.0 + z.norm()))) {
    if (it >= opts.max_iterations || !std::isfinite(closure)) {
      throw OracleFailure("shooting Newton did not close the orbit", it, closure);
    }
    Mat J(2 * n, 2 * n);
    for (int c = 0; c < 2 * n; ++c) {
      const double h = opts.fd_step * (1.0 + std::abs(z[c]));
      Vec zp = z, zm = z;
      zp[c] += h;
      zm[c] -= h;
      J.col(c) = (residual(zp) - residual(zm)) / (2.0 * h);
    }
    const Vec dz = J.completeOrthogonalDecomposition().solve(-F);
    // damped step: halve until the closure error does not grow
    double lambda = 1.0;
    Vec trial = z + dz;
    Vec Ft = residual(trial);
    for (int k = 0; k < 20 && !(Ft.norm() < closure); ++k) {
      lambda *= 0.5;
      trial = z + lambda * dz;
      Ft = residual(trial);
    }
    z = trial;
    F = Ft;
    closure = F.norm();
    ++it;
  }

  // sample the closed orbit on the fit grid
  const Rk4 rk{piece};
  Vec q = z.head(n), p = z.tail(n);
  const double h = period / N;
  Mat values(M, n);
  for (int j = 0; j < M; ++j) {
    values.row(j) = q.transpose();
    for (int s = 0; s < per_node; ++s) rk.step(q, p, h);
  }
  ShootingResult r{fit(values, period, modes), z.head(n), z.tail(n)};
  r.closure = closure;
  r.iterations = it;
  r.fit_residual = (sample(r.orbit, M) - values).cwiseAbs().maxCoeff();
  return r;
}

double time_of_flight_period(const PotentialModel& model, const Vec& q0, const Vec& p0, double dt,
                             double t_max) {
  const Rk4 rk{smooth_piece(model)};
  Vec q = q0, p = p0;
  double t = 0.0;
  double first = -1.0;
  while (t < t_max) {
    const double before = q[0];
    rk.step(q, p, dt);
    t += dt;
    if (before < 0.0 && q[0] >= 0.0) {
      const double cross = t - dt + dt * (-before) / (q[0] - before);
      if (first < 0.0) {
        first = cross;
      } else {
        return cross - first;
      }
    }
  }
  throw OracleFailure("no two upward crossings within the time budget", 0, 0.0);
}

}  // namespace hamincl
