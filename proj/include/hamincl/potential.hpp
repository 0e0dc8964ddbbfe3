#pragma once

// Locally Lipschitz potentials modelled as a single C^1 map or a finite max of
// C^1 pieces.  For V = max_i V_i the Clarke generalized gradient is the convex
// hull of the gradients of the active pieces; SubgradientSet stores those
// vertices.

#include "hamincl/trajectory.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hamincl {

struct SmoothPiece {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
};

struct SubgradientSet {
  Vec base;
  std::vector<Vec> vertices;
  std::vector<int> pieces;  ///< index of the piece that produced each vertex
};

class PotentialModel {
 public:
  static PotentialModel smooth(int dim, SmoothPiece piece, std::string name = "smooth");
  static PotentialModel piecewise_max(int dim, std::vector<SmoothPiece> pieces,
                                      std::string name = "piecewise_max");

  bool is_smooth() const { return smooth_; }
  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<SmoothPiece>& pieces() const { return pieces_; }

  double value(const Vec& x) const;
  /// Active set {i : V_i(x) >= V(x) - tol_active}; tol_active must be >= 0.
  SubgradientSet subdiff(const Vec& x, double tol_active) const;
  /// Uses the scale-aware default 1e-8 (1 + |V(x)|).
  SubgradientSet subdiff(const Vec& x) const;

  static double default_tolerance(double v, double rel = 1e-8) {
    return rel * (1.0 + std::abs(v));
  }

 private:
  PotentialModel(int dim, std::vector<SmoothPiece> pieces, bool smooth, std::string name);

  int dim_;
  std::vector<SmoothPiece> pieces_;
  bool smooth_;
  std::string name_;
};

/// V^0(x; v) as the max over subgradient vertices of <g, v>.
double clarke_directional(const PotentialModel& model, const Vec& x, const Vec& v);

struct ClarkeFdOptions {
  double radius = 1e-9;                 ///< ball for y around x
  std::vector<double> steps{2e-8, 1e-8};  ///< lambda values
  int samples = 24;
  std::uint64_t seed = 7;
};

/// Finite-difference estimate of sup (V(y + lambda v) - V(y)) / lambda over
/// sampled y near x and small lambda.  Cross-check for clarke_directional.
double clarke_directional_fd(const PotentialModel& model, const Vec& x, const Vec& v,
                             const ClarkeFdOptions& opts = {});

// ---------------------------------------------------------------------------
// Growth hypotheses.

enum class HypothesisId { V2, V3, V4, V2Prime, V3Prime, V4Prime };

std::string to_string(HypothesisId id);
HypothesisId hypothesis_from_string(const std::string& s);

/// Constants appearing in (V2)-(V4) and (V2')-(V4'); unused fields are ignored.
struct HypothesisParams {
  double mu1 = 4.0;
  double mu2 = 0.0;
  double a1 = 0.25;
  double a2 = 0.0;
  double A = 0.25;
  double a = 0.0;
  double v4_radius = 1.0;            ///< small-ball radius for (V4)
  double inner_cutoff = 0.0;         ///< (V2)/(V2') only checked for |x| >= r0
  double outer_radius = 100.0;       ///< shell for (V3')
  double coercive_threshold = 10.0;  ///< (V3') requires min V on the shell above this
  double sample_radius = 10.0;       ///< outer radius for global samples
};

struct SamplerSpec {
  int count = 2000;
  std::uint64_t seed = 12345;
};

struct HypothesisCertificate {
  HypothesisId id = HypothesisId::V2;
  HypothesisParams params;
  int samples = 0;
  double worst_margin = 0.0;
  Vec worst_point;
  bool pass = false;
  double shell_min_value = 0.0;  ///< (V3') only
  bool non_coercive = false;     ///< (V3') only
};

inline constexpr double kCertificateTolerance = 1e-9;

/// Sampling-based check; a pass builds confidence, a fail is a counterexample.
/// Throws ParameterError for out-of-range constants.
HypothesisCertificate certify(const PotentialModel& model, HypothesisId id,
                              const HypothesisParams& params, const SamplerSpec& sampler = {});

/// Sample points in the shell r_min <= |x| <= r_max: half Halton, half
/// pseudo-random, plus axis points.  Deterministic for a fixed seed.
std::vector<Vec> shell_samples(int dim, double r_min, double r_max, int count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Built-in models.

struct PolynomialTerm {
  double coef = 0.0;
  std::vector<int> powers;
};

/// sum_t coef_t prod_i x_i^{p_ti}, with exact gradient.
SmoothPiece polynomial_piece(int dim, std::vector<PolynomialTerm> terms);

/// Names: zero, quartic, maxpair, subq32, subq32cos, quadquartic, bounded,
/// harmonic (param omega), abs, linear.
PotentialModel make_zoo(const std::string& name, int dim, double param = 1.0);
/// Documented constants for a zoo entry.
HypothesisParams zoo_hypotheses(const std::string& name);
std::vector<std::string> zoo_names();

}  // namespace hamincl
