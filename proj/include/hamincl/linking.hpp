#pragma once

#include "hamincl/potential.hpp"
#include "hamincl/trajectory.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hamincl {

enum class GeometryMode { Superquadratic, Saddle };

std::string to_string(GeometryMode m);

struct LinkingGeometry {
  GeometryMode mode = GeometryMode::Superquadratic;
  double period = 0.0;
  int dim = 1;
  int modes = 1;

  // superquadratic (linking) data
  double rho = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  PeriodicTrajectory e{1.0, 1, 1};
  std::string direction = "first_harmonic";
  double alpha_bound = 0.0;
  double outer_bound = 0.0;  ///< max of the analytic bound on the top and lateral faces

  // saddle data
  double R = 0.0;
  double x2_inf_bound = 0.0;
  double x2_inf_sampled = 0.0;
  double sphere_sup = 0.0;  ///< sup of f over constant loops with |x1| = R
  double gap = 0.0;
  PeriodicTrajectory x2_seed{1.0, 1, 1};  ///< best X2 point found by descent

  double alpha_sampled = 0.0;
  double beta_sampled = 0.0;
  bool pass = false;
  int samples = 0;
  std::uint64_t seed = 0;
  bool forced = false;
};

/// (1/2 - A T^2 / 4 pi^2) rho^2.
double alpha_lower_bound(double A, double T, double rho);
/// pi sqrt(2 / A).
double period_threshold(double A);

struct CalibrationOptions {
  std::string direction = "first_harmonic";  ///< or "circular" (n >= 2)
  bool force = false;                        ///< skip the threshold refusal
  double R = 0.0;                            ///< saddle: fixed radius when > 0
  int samples = 400;
  std::uint64_t seed = 17;
  int descent_starts = 4;
  int descent_iters = 200;
};

LinkingGeometry calibrate_superquadratic(const PotentialModel& model, const HypothesisParams& certs,
                                         double T, int modes, const CalibrationOptions& opts = {});

/// Fills alpha_sampled, beta_sampled and pass.  `extra_sphere` points are
/// included in the sphere minimum.
LinkingGeometry& certify_linking(LinkingGeometry& geom, const PotentialModel& model,
                                 int sample_budget, std::uint64_t seed,
                                 const std::vector<PeriodicTrajectory>& extra_sphere = {});

/// Random points of S = {q in X2 : ||qdot|| = rho}: 70% modes k <= 4, 30%
/// full spectrum, plus rho-scaled harmonics.
std::vector<PeriodicTrajectory> sample_sphere(double T, int dim, int modes, double rho, int count,
                                              std::uint64_t seed);

/// Points of the three faces of Q: bottom disk, lateral shell, top disk.
std::vector<PeriodicTrajectory> sample_boundary(const LinkingGeometry& geom, int count,
                                                std::uint64_t seed);

LinkingGeometry calibrate_saddle(const PotentialModel& model, const HypothesisParams& certs,
                                 double T, int modes, const CalibrationOptions& opts = {});

/// Preconditioned descent restricted to zero-mean loops; returns the end point.
PeriodicTrajectory descend_x2(const PotentialModel& model, PeriodicTrajectory start, int iters);

}  // namespace hamincl
