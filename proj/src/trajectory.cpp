#include "hamincl/trajectory.hpp"

#include "hamincl/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace hamincl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_compatible(const PeriodicTrajectory& p, const PeriodicTrajectory& q) {
  if (p.period() != q.period() || p.dim() != q.dim()) {
    throw DimensionError("trajectories differ in period or dimension");
  }
}

}  // namespace

PeriodicTrajectory::PeriodicTrajectory(double period, int dim, int modes)
    : period_(period) {
  if (dim < 1 || modes < 1) {
    throw DimensionError("trajectory needs n >= 1 and K >= 1");
  }
  a_ = Mat::Zero(dim, modes + 1);
  b_ = Mat::Zero(dim, modes + 1);
  validate();
}

PeriodicTrajectory::PeriodicTrajectory(double period, Mat cos_coeffs, Mat sin_coeffs)
    : period_(period), a_(std::move(cos_coeffs)), b_(std::move(sin_coeffs)) {
  if (a_.rows() < 1 || a_.cols() < 2 || a_.rows() != b_.rows() || a_.cols() != b_.cols()) {
    throw DimensionError("coefficient matrices must both be n x (K+1) with n, K >= 1");
  }
  b_.col(0).setZero();
  validate();
}

void PeriodicTrajectory::validate() const {
  if (!(period_ > 0.0) || !std::isfinite(period_)) {
    throw PreconditionError("period must be positive and finite");
  }
  if (!a_.allFinite() || !b_.allFinite()) {
    throw PreconditionError("trajectory coefficients must be finite");
  }
}

PeriodicTrajectory PeriodicTrajectory::constant(double period, int modes, const Vec& value) {
  PeriodicTrajectory q(period, static_cast<int>(value.size()), modes);
  q.a_.col(0) = value;
  q.validate();
  return q;
}

PeriodicTrajectory PeriodicTrajectory::harmonic(double period, int dim, int modes, int k,
                                                int component, bool sine, double amplitude) {
  if (k < 1 || k > modes || component < 0 || component >= dim) {
    throw DimensionError("harmonic index out of range");
  }
  PeriodicTrajectory q(period, dim, modes);
  (sine ? q.b_ : q.a_)(component, k) = amplitude;
  return q;
}

void PeriodicTrajectory::set_mean(const Vec& m) {
  if (m.size() != a_.rows()) throw DimensionError("mean has wrong dimension");
  a_.col(0) = m;
}

void PeriodicTrajectory::set_sin(int component, int k, double value) {
  if (k == 0) return;
  b_(component, k) = value;
}

PeriodicTrajectory PeriodicTrajectory::with_modes(int modes) const {
  PeriodicTrajectory out(period_, dim(), modes);
  const int keep = std::min(modes, this->modes()) + 1;
  out.a_.leftCols(keep) = a_.leftCols(keep);
  out.b_.leftCols(keep) = b_.leftCols(keep);
  return out;
}

bool PeriodicTrajectory::is_zero() const { return a_.isZero(0.0) && b_.isZero(0.0); }

bool PeriodicTrajectory::same_shape(const PeriodicTrajectory& other) const {
  return period_ == other.period_ && a_.rows() == other.a_.rows() && a_.cols() == other.a_.cols();
}

PeriodicTrajectory& PeriodicTrajectory::operator+=(const PeriodicTrajectory& rhs) {
  if (!same_shape(rhs)) throw DimensionError("cannot add trajectories of different shape");
  a_ += rhs.a_;
  b_ += rhs.b_;
  return *this;
}

PeriodicTrajectory& PeriodicTrajectory::operator-=(const PeriodicTrajectory& rhs) {
  if (!same_shape(rhs)) throw DimensionError("cannot subtract trajectories of different shape");
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  return *this;
}

PeriodicTrajectory& PeriodicTrajectory::operator*=(double s) {
  a_ *= s;
  b_ *= s;
  return *this;
}

// ---------------------------------------------------------------------------

SpectralGrid::SpectralGrid(int modes, int nodes)
    : modes_(modes), nodes_(nodes), cos_(nodes, modes + 1), sin_(nodes, modes + 1) {
  if (nodes < 2 * modes + 2) {
    throw DimensionError("spectral grid needs at least 2K+2 nodes");
  }
  for (int j = 0; j < nodes; ++j) {
    for (int k = 0; k <= modes; ++k) {
      // Reduce the integer phase first so large K*j stays exact.
      const long long phase = (static_cast<long long>(k) * j) % nodes;
      const double theta = kTwoPi * static_cast<double>(phase) / nodes;
      cos_(j, k) = std::cos(theta);
      sin_(j, k) = std::sin(theta);
    }
  }
}

std::shared_ptr<const SpectralGrid> SpectralGrid::get(int modes, int nodes) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const SpectralGrid>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{modes, nodes}];
  if (!slot) slot = std::make_shared<const SpectralGrid>(modes, nodes);
  return slot;
}

Mat SpectralGrid::sample(const Mat& cos_coeffs, const Mat& sin_coeffs) const {
  return cos_ * cos_coeffs.transpose() + sin_ * sin_coeffs.transpose();
}

void SpectralGrid::analyze(const Mat& values, Mat& cos_coeffs, Mat& sin_coeffs) const {
  const double scale = 2.0 / nodes_;
  cos_coeffs = scale * (cos_.transpose() * values).transpose();
  sin_coeffs = scale * (sin_.transpose() * values).transpose();
  cos_coeffs.col(0) *= 0.5;
  sin_coeffs.col(0).setZero();
}

// ---------------------------------------------------------------------------

Vec evaluate(const PeriodicTrajectory& q, double t) {
  if (!std::isfinite(t)) throw PreconditionError("evaluation time must be finite");
  const double T = q.period();
  double tau = std::fmod(t, T);
  if (tau < 0) tau += T;
  const double theta = kTwoPi * tau / T;
  Vec out = q.mean();
  const Mat& a = q.cos_coeffs();
  const Mat& b = q.sin_coeffs();
  for (int k = 1; k <= q.modes(); ++k) {
    out += a.col(k) * std::cos(k * theta) + b.col(k) * std::sin(k * theta);
  }
  return out;
}

PeriodicTrajectory derivative(const PeriodicTrajectory& q) {
  const int K = q.modes();
  Mat a = Mat::Zero(q.dim(), K + 1);
  Mat b = Mat::Zero(q.dim(), K + 1);
  for (int k = 1; k <= K; ++k) {
    const double w = q.omega(k);
    a.col(k) = w * q.sin_coeffs().col(k);
    b.col(k) = -w * q.cos_coeffs().col(k);
  }
  return PeriodicTrajectory(q.period(), std::move(a), std::move(b));
}

Mat sample(const PeriodicTrajectory& q, int nodes) {
  if (nodes <= 0) nodes = quadrature_nodes(q.modes());
  return SpectralGrid::get(q.modes(), nodes)->sample(q.cos_coeffs(), q.sin_coeffs());
}

PeriodicTrajectory fit(const Mat& values, double period, int modes) {
  const auto grid = SpectralGrid::get(modes, static_cast<int>(values.rows()));
  Mat a, b;
  grid->analyze(values, a, b);
  return PeriodicTrajectory(period, std::move(a), std::move(b));
}

double l2_inner(const PeriodicTrajectory& p, const PeriodicTrajectory& q) {
  require_compatible(p, q);
  const int K = std::min(p.modes(), q.modes());
  const double T = p.period();
  const auto& pa = p.cos_coeffs();
  const auto& pb = p.sin_coeffs();
  const auto& qa = q.cos_coeffs();
  const auto& qb = q.sin_coeffs();
  double acc = T * pa.col(0).dot(qa.col(0));
  double osc = 0.0;
  for (int k = 1; k <= K; ++k) {
    osc += pa.col(k).dot(qa.col(k)) + pb.col(k).dot(qb.col(k));
  }
  return acc + 0.5 * T * osc;
}

double l2_norm(const PeriodicTrajectory& q) { return std::sqrt(l2_inner(q, q)); }

double kinetic_energy2(const PeriodicTrajectory& q) {
  double acc = 0.0;
  for (int k = 1; k <= q.modes(); ++k) {
    const double w = q.omega(k);
    acc += w * w * (q.cos_coeffs().col(k).squaredNorm() + q.sin_coeffs().col(k).squaredNorm());
  }
  return 0.5 * q.period() * acc;
}

double h1_norm(const PeriodicTrajectory& q) {
  // q(0) = a_0 + sum_k a_k
  const Vec q0 = q.cos_coeffs().rowwise().sum();
  return std::sqrt(kinetic_energy2(q)) + q0.norm();
}

double h1_norm_mean(const PeriodicTrajectory& q) {
  return std::sqrt(kinetic_energy2(q)) + q.mean().norm();
}

SpaceSplit split(const PeriodicTrajectory& q) {
  SpaceSplit s{q.mean(), q};
  s.oscillation.set_mean(Vec::Zero(q.dim()));
  return s;
}

PeriodicTrajectory reassemble(const SpaceSplit& s) {
  PeriodicTrajectory q = s.oscillation;
  q.set_mean(s.mean);
  return q;
}

double sup_norm(const PeriodicTrajectory& q, int refinement) {
  // Angle-addition recurrence keeps the cost O(points * K) without tables.
  const int K = q.modes();
  const int points = refinement * (2 * K + 2);
  const Mat& a = q.cos_coeffs();
  const Mat& b = q.sin_coeffs();
  double best = 0.0;
  Vec value(q.dim());
  for (int j = 0; j < points; ++j) {
    const double theta = kTwoPi * j / points;
    const double c1 = std::cos(theta);
    const double s1 = std::sin(theta);
    double ck = 1.0, sk = 0.0;
    value = a.col(0);
    for (int k = 1; k <= K; ++k) {
      const double cn = ck * c1 - sk * s1;
      const double sn = sk * c1 + ck * s1;
      ck = cn;
      sk = sn;
      value += a.col(k) * ck + b.col(k) * sk;
    }
    best = std::max(best, value.norm());
  }
  return best;
}

namespace {

void require_zero_mean(const PeriodicTrajectory& q, const char* what) {
  const double scale = 1.0 + q.cos_coeffs().cwiseAbs().maxCoeff() + q.sin_coeffs().cwiseAbs().maxCoeff();
  if (q.mean().cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw PreconditionError(std::string(what) + " requires a zero-mean trajectory");
  }
}

}  // namespace

InequalityReport check_wirtinger(const PeriodicTrajectory& q) {
  require_zero_mean(q, "Wirtinger check");
  InequalityReport r;
  if (q.is_zero()) return r;
  const double T = q.period();
  const double w1 = q.omega(1);
  double lhs = 0.0, rhs = 0.0, margin = 0.0;
  for (int k = 1; k <= q.modes(); ++k) {
    const double w = q.omega(k);
    const double e = q.cos_coeffs().col(k).squaredNorm() + q.sin_coeffs().col(k).squaredNorm();
    lhs += w * w * e;
    rhs += w1 * w1 * e;
    // Term-wise difference is exactly zero for k = 1.
    margin += (w * w - w1 * w1) * e;
  }
  r.lhs = 0.5 * T * lhs;
  r.rhs = 0.5 * T * rhs;
  r.margin = 0.5 * T * margin;
  r.holds = r.margin >= -kInequalitySlack;
  return r;
}

InequalityReport check_sobolev(const PeriodicTrajectory& q) {
  require_zero_mean(q, "Sobolev check");
  InequalityReport r;
  if (q.is_zero()) return r;
  r.lhs = sup_norm(q, 32);
  r.rhs = std::sqrt(q.period() / 12.0) * std::sqrt(kinetic_energy2(q));
  r.margin = r.rhs - r.lhs;
  r.holds = r.margin >= -kInequalitySlack;
  return r;
}

InequalityReport check_friedrichs(const PeriodicTrajectory& q) {
  const double q0 = evaluate(q, 0.0).norm();
  const double h1 = h1_norm(q);
  if (q0 > 1e-10 * h1) {
    throw PreconditionError("Friedrichs check requires q(0) = 0; got |q(0)| = " + std::to_string(q0));
  }
  InequalityReport r;
  if (q.is_zero()) return r;
  const double T = q.period();
  const Mat values = sample(q);
  const double integral = values.rowwise().squaredNorm().sum() * T / values.rows();
  r.lhs = kinetic_energy2(q);
  r.rhs = std::pow(std::numbers::pi / T, 2) * integral;
  r.margin = r.lhs - r.rhs;
  r.holds = r.margin >= -kInequalitySlack;
  return r;
}

}  // namespace hamincl
