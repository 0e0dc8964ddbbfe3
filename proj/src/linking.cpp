#include "hamincl/linking.hpp"

#include "hamincl/action.hpp"
#include "hamincl/errors.hpp"
#include "hamincl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace hamincl {

std::string to_string(GeometryMode m) {
  return m == GeometryMode::Superquadratic ? "superquadratic" : "saddle";
}

double alpha_lower_bound(double A, double T, double rho) {
  const double pi = std::numbers::pi;
  return (0.5 - A * T * T / (4.0 * pi * pi)) * rho * rho;
}

double period_threshold(double A) { return std::numbers::pi * std::sqrt(2.0 / A); }

namespace {

void check_threshold(double A, double T, bool force) {
  if (!(A > 0.0)) throw ParameterError("A must be positive");
  if (!(T > 0.0)) throw ParameterError("period must be positive");
  const double thr = period_threshold(A);
  if (T >= thr && !force) {
    std::ostringstream os;
    os.precision(17);
    os << "period T = " << T << " is not below the threshold pi*sqrt(2/A) = " << thr
       << "; admissible window is 0 < T < " << thr;
    throw InfeasibleGeometry(os.str(), T, thr);
  }
}

PeriodicTrajectory direction_loop(double T, int dim, int modes, const std::string& kind) {
  PeriodicTrajectory e(T, dim, modes);
  if (kind == "first_harmonic") {
    e.set_sin(0, 1, 1.0);
  } else if (kind == "circular") {
    if (dim < 2) throw ParameterError("circular direction needs dimension >= 2");
    e.set_sin(0, 1, 1.0);
    e.set_cos(1, 1, 1.0);
  } else {
    throw ParameterError("unknown direction '" + kind + "'");
  }
  return (1.0 / std::sqrt(kinetic_energy2(e))) * e;
}

// Analytic upper bound on f(x1 + s e) from the growth hypothesis.
double outer_bound(const HypothesisParams& p, double T, double E, double u, double s) {
  return 0.5 * s * s -
         p.a1 * std::pow(T, 1.0 - 0.5 * p.mu1) * std::pow(T * u * u + s * s * E, 0.5 * p.mu1) -
         p.a2 * T;
}

double outer_faces_max(const HypothesisParams& p, double T, double E, double r1, double r2) {
  double worst = -std::numeric_limits<double>::infinity();
  constexpr int kSteps = 400;
  for (int i = 0; i <= kSteps; ++i) {
    const double frac = static_cast<double>(i) / kSteps;
    worst = std::max(worst, outer_bound(p, T, E, frac * r1, r2));  // top face
    worst = std::max(worst, outer_bound(p, T, E, r1, frac * r2));  // lateral face
  }
  return worst;
}

PeriodicTrajectory random_oscillation(double T, int dim, int modes, int kmax, bool decay,
                                      std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  PeriodicTrajectory q(T, dim, modes);
  for (int k = 1; k <= std::min(kmax, modes); ++k) {
    const double s = decay ? 1.0 / k : 1.0;
    for (int i = 0; i < dim; ++i) {
      q.set_cos(i, k, s * normal(rng));
      q.set_sin(i, k, s * normal(rng));
    }
  }
  return q;
}

Vec evaluate_batch(const std::vector<PeriodicTrajectory>& loops, const PotentialModel& model) {
  return kernels::action_values_parallel(loops, model);
}

}  // namespace

LinkingGeometry calibrate_superquadratic(const PotentialModel& model, const HypothesisParams& certs,
                                         double T, int modes, const CalibrationOptions& opts) {
  check_threshold(certs.A, T, opts.force);
  if (!(certs.mu1 > 2.0)) throw ParameterError("superquadratic geometry needs mu1 > 2");
  if (!(certs.a1 > 0.0)) throw ParameterError("superquadratic geometry needs a1 > 0");
  if (!(certs.v4_radius > 0.0)) throw ParameterError("v4_radius must be positive");

  LinkingGeometry g;
  g.mode = GeometryMode::Superquadratic;
  g.period = T;
  g.dim = model.dim();
  g.modes = modes;
  g.forced = opts.force;
  g.direction = opts.direction;
  // Sobolev: ||q||_inf <= sqrt(T/12) rho keeps S inside the small ball
  g.rho = certs.v4_radius / std::sqrt(T / 12.0);
  g.alpha_bound = alpha_lower_bound(certs.A, T, g.rho);
  g.e = direction_loop(T, g.dim, modes, opts.direction);
  const double E = l2_inner(g.e, g.e);

  double r2 = 2.0 * g.rho;
  for (int it = 0; it < 60; ++it, r2 *= 2.0) {
    const double worst = outer_faces_max(certs, T, E, 0.25 * r2, r2);
    if (worst < 0.0) {
      g.r2 = r2;
      g.r1 = 0.25 * r2;
      g.outer_bound = worst;
      return g;
    }
  }
  throw ParameterError("outer bound never became negative; check a1 and mu1");
}

std::vector<PeriodicTrajectory> sample_sphere(double T, int dim, int modes, double rho, int count,
                                              std::uint64_t seed) {
  std::vector<PeriodicTrajectory> out;
  auto normalize = [&](PeriodicTrajectory q) {
    const double k = std::sqrt(kinetic_energy2(q));
    if (k > 0.0) out.push_back((rho / k) * q);
  };
  for (int k = 1; k <= std::min(4, modes); ++k) {
    for (int i = 0; i < dim; ++i) {
      normalize(PeriodicTrajectory::harmonic(T, dim, modes, k, i, true));
      normalize(PeriodicTrajectory::harmonic(T, dim, modes, k, i, false));
    }
  }
  std::mt19937_64 rng(seed);
  const int low = (7 * count) / 10;
  for (int s = 0; s < count; ++s) {
    normalize(s < low ? random_oscillation(T, dim, modes, 4, false, rng)
                      : random_oscillation(T, dim, modes, modes, true, rng));
  }
  return out;
}

std::vector<PeriodicTrajectory> sample_boundary(const LinkingGeometry& g, int count,
                                                std::uint64_t seed) {
  std::vector<PeriodicTrajectory> out;
  const int per_face = std::max(1, count / 3);
  auto add = [&](const Vec& x1, double s) {
    PeriodicTrajectory q = PeriodicTrajectory::constant(g.period, g.modes, x1);
    q += s * g.e;
    out.push_back(std::move(q));
  };
  for (const Vec& x : shell_samples(g.dim, 0.0, g.r1, per_face, seed)) add(x, 0.0);
  for (const Vec& x : shell_samples(g.dim, 0.0, g.r1, per_face, seed + 1)) add(x, g.r2);
  std::mt19937_64 rng(seed + 2);
  std::uniform_real_distribution<double> unit;
  for (const Vec& x : shell_samples(g.dim, g.r1, g.r1, per_face, seed + 3)) add(x, unit(rng) * g.r2);
  // deterministic lines on the lateral face
  for (int i = 0; i <= 32; ++i) {
    Vec x = Vec::Zero(g.dim);
    x[0] = g.r1;
    add(x, g.r2 * i / 32.0);
    add(-x, g.r2 * i / 32.0);
  }
  return out;
}

LinkingGeometry& certify_linking(LinkingGeometry& g, const PotentialModel& model, int budget,
                                 std::uint64_t seed,
                                 const std::vector<PeriodicTrajectory>& extra_sphere) {
  if (g.mode != GeometryMode::Superquadratic) {
    throw PreconditionError("certify_linking expects a superquadratic geometry");
  }
  auto sphere = sample_sphere(g.period, g.dim, g.modes, g.rho, budget, seed);
  sphere.insert(sphere.end(), extra_sphere.begin(), extra_sphere.end());
  const auto boundary = sample_boundary(g, budget, seed + 101);
  const Vec fs = evaluate_batch(sphere, model);
  const Vec fb = evaluate_batch(boundary, model);
  g.alpha_sampled = fs.minCoeff();
  g.beta_sampled = fb.maxCoeff();
  g.samples = static_cast<int>(sphere.size() + boundary.size());
  g.seed = seed;
  g.pass = g.alpha_sampled > g.beta_sampled;
  return g;
}

PeriodicTrajectory descend_x2(const PotentialModel& model, PeriodicTrajectory q, int iters) {
  double tau = 1.0;
  double f0 = action_value(q, model);
  for (int it = 0; it < iters; ++it) {
    auto g = min_norm_subgradient(q, model, Metric::H1Precond);
    Mat a = g.residual.cos_coeffs();
    a.col(0).setZero();
    const PeriodicTrajectory r(q.period(), a, g.residual.sin_coeffs());
    const PeriodicTrajectory pr = precondition(r);
    const double nd = l2_inner(r, pr);
    if (!(nd > 1e-30)) break;
    tau = std::min(2.0 * tau, 1.0);
    bool accepted = false;
    for (int h = 0; h < 40; ++h, tau *= 0.5) {
      PeriodicTrajectory trial = q - tau * pr;
      const double ft = action_value(trial, model);
      if (ft <= f0 - 1e-4 * tau * nd) {
        q = std::move(trial);
        f0 = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return q;
}

LinkingGeometry calibrate_saddle(const PotentialModel& model, const HypothesisParams& certs,
                                 double T, int modes, const CalibrationOptions& opts) {
  check_threshold(certs.A, T, opts.force);
  if (!(certs.mu1 < 2.0)) throw ParameterError("saddle geometry needs mu1 < 2");

  LinkingGeometry g;
  g.mode = GeometryMode::Saddle;
  g.period = T;
  g.dim = model.dim();
  g.modes = modes;
  g.forced = opts.force;
  g.seed = opts.seed;
  g.x2_inf_bound = -certs.a * T;

  std::mt19937_64 rng(opts.seed);
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < opts.descent_starts; ++s) {
    PeriodicTrajectory start = 1e-3 * random_oscillation(T, g.dim, modes, 4, true, rng);
    PeriodicTrajectory end = descend_x2(model, std::move(start), opts.descent_iters);
    const double f = action_value(end, model);
    if (f < best) {
      best = f;
      g.x2_seed = std::move(end);
    }
  }
  g.x2_inf_sampled = best;
  const double lower = std::min(g.x2_inf_bound, g.x2_inf_sampled);

  auto sphere_sup = [&](double R) {
    double vmin = std::numeric_limits<double>::infinity();
    for (const Vec& x : shell_samples(g.dim, R, R, opts.samples, opts.seed + 7)) {
      vmin = std::min(vmin, model.value(x));
    }
    return -T * vmin;
  };

  const int samples = opts.samples + 6 * g.dim;
  if (opts.R > 0.0) {
    g.R = opts.R;
    g.sphere_sup = sphere_sup(g.R);
  } else {
    double R = 1.0;
    double gap = 0.0;
    bool found = false;
    for (int it = 0; it < 40; ++it, R *= 2.0) {
      const double sup = sphere_sup(R);
      gap = lower - sup;
      if (gap > 0.0) {
        g.R = R;
        g.sphere_sup = sup;
        found = true;
        break;
      }
    }
    if (!found) {
      throw NonCoerciveError("sup of f on the constant sphere never dropped below inf over X2",
                             R / 2.0, gap);
    }
  }
  g.gap = lower - g.sphere_sup;
  g.alpha_sampled = lower;
  g.beta_sampled = g.sphere_sup;
  g.samples = samples;
  g.pass = g.gap > 0.0;
  return g;
}

}  // namespace hamincl
