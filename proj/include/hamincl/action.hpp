#pragma once

// Action functional f(q) = 1/2 int |qdot|^2 - int V(q) on discrete loops, its
// min-norm generalized gradient and the compactness diagnostics.

#include "hamincl/potential.hpp"
#include "hamincl/trajectory.hpp"

#include <cstdint>
#include <vector>

namespace hamincl {

enum class Metric { L2, H1Precond };

struct GradientOptions {
  /// Active-set tolerance for gradient assembly, relative to 1 + |V|.
  double tol_rel = 1e-7;
  bool parallel = true;
};

struct ActionGradient {
  PeriodicTrajectory residual;   ///< r = -qddot - v in L2
  PeriodicTrajectory direction;  ///< descent representative: -r or -P r
  double l2_norm = 0.0;
  double h1_precond_norm = 0.0;  ///< sqrt(<r, P r>)
  Mat selection;                 ///< v(t_j), M x n
  std::vector<Vec> weights;
  std::vector<std::vector<int>> active;
};

double action_value(const PeriodicTrajectory& q, const PotentialModel& model);

/// Diagonal H1 preconditioner: mode k scaled by 1 / (1 + w_k^2).
PeriodicTrajectory precondition(const PeriodicTrajectory& r);

ActionGradient min_norm_subgradient(const PeriodicTrajectory& q, const PotentialModel& model,
                                    Metric metric = Metric::H1Precond,
                                    const GradientOptions& opts = {});

/// F0(q; h) = int <qdot, hdot> - int min_{y in dV(q)} <y, h>.
double action_clarke_directional(const PeriodicTrajectory& q, const PotentialModel& model,
                                 const PeriodicTrajectory& h);

struct CeramiRecord {
  int iter = 0;
  double f = 0.0;
  double h1norm = 0.0;
  double minnorm = 0.0;
  double measure = 0.0;
  double mean_norm = 0.0;  ///< ||qdot|| + |a0| variant
};

CeramiRecord cerami_measure(const PeriodicTrajectory& q, const PotentialModel& model, int iter = 0,
                            const GradientOptions& opts = {});
CeramiRecord make_record(const PeriodicTrajectory& q, double f, double minnorm, int iter);

struct EkelandReport {
  int pairs = 0;
  int violations = 0;
  double fraction = 0.0;
  double worst_slack = 0.0;  ///< min over pairs of F0 + eps ||h|| / (1 + ||g||)
  double f_infinity = 0.0;
  bool flagged = false;
};

struct EkelandOptions {
  int directions = 16;
  std::uint64_t seed = 99;
  double tol = 1e-8;
};

/// Checks F0(g_n, h) >= -eps_n ||h|| / (1 + ||g_n||) with eps_n read from the
/// f gap to the estimated limit f_inf = f_last - measure_last^2.
EkelandReport ekeland_diagnostic(const std::vector<PeriodicTrajectory>& iterates,
                                 const std::vector<CeramiRecord>& records,
                                 const PotentialModel& model, const EkelandOptions& opts = {});

struct SequenceClass {
  bool is_PS_like = false;
  bool is_CPS_like = false;
  bool bounded = false;
  bool f_converging = false;
  bool last_quartile_decreasing = false;
  double f_limit = 0.0;
  double max_h1 = 0.0;
};

/// Last-quartile trend tags; needs at least 10 records.
SequenceClass classify_sequence(const std::vector<CeramiRecord>& records);

}  // namespace hamincl
