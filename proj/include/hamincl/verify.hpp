#pragma once

#include "hamincl/potential.hpp"
#include "hamincl/trajectory.hpp"

#include <vector>

namespace hamincl {

struct VerificationReport {
  std::vector<double> times;
  std::vector<double> distances;   ///< dist(-qddot(t_j), conv dV(q(t_j)))
  std::vector<int> active_counts;  ///< active pieces at the widened tolerance
  std::vector<bool> excluded;
  double aggregate = 0.0;          ///< L2 norm of distances over non-excluded nodes
  double aggregate_all = 0.0;      ///< same over every node
  double max_distance = 0.0;       ///< pointwise max over non-excluded nodes
  double excluded_fraction = 0.0;
  double energy_drift = 0.0;
  bool nonconstant = false;
  double oscillation_norm = 0.0;
};

struct VerifyOptions {
  double tol_active = 1e-8;  ///< relative to 1 + |V|
  double widen = 10.0;       ///< exclusion uses tol_active * widen
  int drift_refinement = 8;
  bool parallel = true;
};

VerificationReport inclusion_residual(const PeriodicTrajectory& q, const PotentialModel& model,
                                      const VerifyOptions& opts = {});

/// max_t |E(t) - mean E| with E = |qdot|^2 / 2 + V(q) on a dense grid.
double energy_drift(const PeriodicTrajectory& q, const PotentialModel& model, int refinement = 8);

bool is_nonconstant(const PeriodicTrajectory& q);

struct ShootingOptions {
  int steps = 4096;  ///< RK4 steps per period (rounded up to a multiple of the fit grid)
  int max_iterations = 50;
  double closure_tol = 1e-10;
  double fd_step = 1e-7;
};

struct ShootingResult {
  PeriodicTrajectory orbit;
  Vec q0;
  Vec p0;
  double closure = 0.0;
  double fit_residual = 0.0;  ///< max node error of the Fourier fit
  int iterations = 0;
};

/// Closes the period-T orbit of qddot = -grad V(q) by Newton on (q(0), qdot(0))
/// and fits it with `modes` Fourier modes.  Smooth models only.
ShootingResult shooting_oracle(const PotentialModel& model, double period, const Vec& q0,
                               const Vec& p0, int modes, const ShootingOptions& opts = {});

/// Integrates one period and returns (q(T), qdot(T)) stacked.
Vec flow_map(const PotentialModel& model, double period, const Vec& q0, const Vec& p0, int steps);

/// Time of flight between successive upward zero crossings of q_0(t) (n = 1
/// style period measurement) starting from (q0, p0).
double time_of_flight_period(const PotentialModel& model, const Vec& q0, const Vec& p0, double dt,
                             double t_max);

}  // namespace hamincl
