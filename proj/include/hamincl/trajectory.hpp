#pragma once

// Discrete loop space: truncated real Fourier series on R/TZ.
//
//   q(t) = a_0 + sum_{k=1..K} a_k cos(w_k t) + b_k sin(w_k t),   w_k = 2 pi k / T
//
// Coefficients are stored as n x (K+1) matrices; column 0 of the cosine
// matrix is the mean a_0 and column 0 of the sine matrix is always zero.

#include <Eigen/Dense>

#include <memory>
#include <numbers>

namespace hamincl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class PeriodicTrajectory {
 public:
  /// Zero loop.
  PeriodicTrajectory(double period, int dim, int modes);
  PeriodicTrajectory(double period, Mat cos_coeffs, Mat sin_coeffs);

  static PeriodicTrajectory constant(double period, int modes, const Vec& value);
  /// amplitude * sin(w_k t) e_c (or cos when `sine` is false).
  static PeriodicTrajectory harmonic(double period, int dim, int modes, int k,
                                     int component, bool sine, double amplitude = 1.0);

  double period() const { return period_; }
  int dim() const { return static_cast<int>(a_.rows()); }
  int modes() const { return static_cast<int>(a_.cols()) - 1; }
  double omega(int k) const { return 2.0 * std::numbers::pi * k / period_; }

  Vec mean() const { return a_.col(0); }
  const Mat& cos_coeffs() const { return a_; }
  const Mat& sin_coeffs() const { return b_; }

  void set_mean(const Vec& m);
  void set_cos(int component, int k, double value) { a_(component, k) = value; }
  void set_sin(int component, int k, double value);

  /// Same loop with K' modes: zero-padded or truncated.
  PeriodicTrajectory with_modes(int modes) const;
  bool is_zero() const;
  bool same_shape(const PeriodicTrajectory& other) const;

  PeriodicTrajectory& operator+=(const PeriodicTrajectory& rhs);
  PeriodicTrajectory& operator-=(const PeriodicTrajectory& rhs);
  PeriodicTrajectory& operator*=(double s);

  friend PeriodicTrajectory operator+(PeriodicTrajectory lhs, const PeriodicTrajectory& rhs) {
    return lhs += rhs;
  }
  friend PeriodicTrajectory operator-(PeriodicTrajectory lhs, const PeriodicTrajectory& rhs) {
    return lhs -= rhs;
  }
  friend PeriodicTrajectory operator*(double s, PeriodicTrajectory q) { return q *= s; }
  friend bool operator==(const PeriodicTrajectory& x, const PeriodicTrajectory& y) {
    return x.period_ == y.period_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  void validate() const;

  double period_;
  Mat a_;
  Mat b_;
};

/// X_1 (+) X_2 decomposition: constant part and zero-mean part.
struct SpaceSplit {
  Vec mean;
  PeriodicTrajectory oscillation;
};

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool holds = true;
};

/// Cached cos/sin tables for sampling K modes on M uniform nodes t_j = j T / M.
/// The tables do not depend on T, so one grid serves every period.
class SpectralGrid {
 public:
  SpectralGrid(int modes, int nodes);

  /// Shared instance; thread-safe.
  static std::shared_ptr<const SpectralGrid> get(int modes, int nodes);

  int modes() const { return modes_; }
  int nodes() const { return nodes_; }

  /// M x n matrix of values (row j = q(t_j)).
  Mat sample(const Mat& cos_coeffs, const Mat& sin_coeffs) const;
  /// Discrete least-squares fit of node values onto K modes (exact when the
  /// data lie in the span and K < M/2).
  void analyze(const Mat& values, Mat& cos_coeffs, Mat& sin_coeffs) const;

 private:
  int modes_;
  int nodes_;
  Mat cos_;  // M x (K+1)
  Mat sin_;
};

/// Default quadrature size 4K+4 (2x oversampling of the 2K+2 Nyquist grid).
inline int quadrature_nodes(int modes) { return 4 * modes + 4; }

Vec evaluate(const PeriodicTrajectory& q, double t);
PeriodicTrajectory derivative(const PeriodicTrajectory& q);

/// Values on M uniform nodes (defaults to the 4K+4 quadrature grid).
Mat sample(const PeriodicTrajectory& q, int nodes = 0);
/// Fit node values (M x n, M >= 2K+2) to a K-mode trajectory.
PeriodicTrajectory fit(const Mat& values, double period, int modes);

double l2_inner(const PeriodicTrajectory& p, const PeriodicTrajectory& q);
double l2_norm(const PeriodicTrajectory& q);
/// int_0^T |qdot|^2 via Parseval.
double kinetic_energy2(const PeriodicTrajectory& q);
/// Equivalent H^1 norm ||qdot||_{L2} + |q(0)|.
double h1_norm(const PeriodicTrajectory& q);
/// Variant using the mean: ||qdot||_{L2} + |a_0|.
double h1_norm_mean(const PeriodicTrajectory& q);

SpaceSplit split(const PeriodicTrajectory& q);
PeriodicTrajectory reassemble(const SpaceSplit& s);

/// Max |q(t)| over a uniform grid of `refinement * (2K+2)` points.
double sup_norm(const PeriodicTrajectory& q, int refinement = 32);

InequalityReport check_wirtinger(const PeriodicTrajectory& q);
InequalityReport check_sobolev(const PeriodicTrajectory& q);
InequalityReport check_friedrichs(const PeriodicTrajectory& q);

/// Slack absorbed by dense-grid sup estimates.
inline constexpr double kInequalitySlack = 1e-8;

}  // namespace hamincl
