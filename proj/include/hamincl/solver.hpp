#pragma once

// Boundary-pinned surface deformation realizing the linking and saddle
// minimax values.

#include "hamincl/action.hpp"
#include "hamincl/linking.hpp"
#include "hamincl/verify.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hamincl {

struct Surface {
  GeometryMode mode = GeometryMode::Superquadratic;
  int grid = 9;
  int axes = 1;                          ///< parameter dimensions
  std::vector<Vec> params;               ///< (x1, s) or x1
  std::vector<PeriodicTrajectory> nodes;
  std::vector<bool> pinned;
  std::vector<bool> peaked;              ///< aligned with the maximum of its fiber
  std::vector<double> values;            ///< cached f(node)
  std::vector<std::vector<int>> neighbours;

  int size() const { return static_cast<int>(nodes.size()); }
  int argmax() const;
  double max_value() const;
};

struct LineSearch {
  double sigma = 1e-4;
  int max_halvings = 40;
  double initial_step = 1.0;
};

struct SolverConfig {
  int grid = 9;
  double tol_conv = 1e-5;
  int max_iters = 400;
  std::uint64_t seed = 2024;
  double eta = 0.5;
  LineSearch line_search;
  int restarts = 3;
  int peak_iters = 30;
  bool parallel = true;
  GradientOptions gradient;
  VerifyOptions verify;
};

/// Line-search memory plus the gradient of the current argmax node.
struct StepState {
  double tau = 1.0;
  int steps = 0;
  int grad_node = -1;  ///< -1 when the cached gradient is stale
  double measure = 0.0;
  std::optional<ActionGradient> grad;
};

/// Lexicographic grid over the cylinder (x1 disk) x [0, r2] or the ball B_R.
/// Boundary nodes are pinned to the identity embedding.
Surface init_surface(const LinkingGeometry& geom, int grid);

/// Maximizes f over the fiber through q (constants, plus the own oscillation
/// direction in superquadratic mode).
PeriodicTrajectory peak_align(const PeriodicTrajectory& q, const PotentialModel& model, bool saddle,
                              int iters = 30, const GradientOptions& opts = {});

CeramiRecord deform_step(Surface& surface, const PotentialModel& model, const SolverConfig& cfg,
                         StepState& state, int iter);

struct SolverResult {
  PeriodicTrajectory candidate{1.0, 1, 1};
  double c_estimate = 0.0;
  std::vector<CeramiRecord> history;
  std::vector<PeriodicTrajectory> iterates;  ///< argmax loop at each record
  std::vector<double> node_max;              ///< max node value after each step
  bool converged = false;
  bool stalled = false;
  LinkingGeometry geometry;
  VerificationReport verification;
  std::vector<std::uint64_t> restart_seeds;
  int candidate_node = 0;
  std::string surface_family;
};

SolverResult run_minimax(const PotentialModel& model, const LinkingGeometry& geom,
                         const SolverConfig& cfg = {});
SolverResult run_saddle(const PotentialModel& model, const LinkingGeometry& geom,
                        const SolverConfig& cfg = {});

}  // namespace hamincl
