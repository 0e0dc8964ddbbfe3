// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.

#include "hamincl/action.hpp"
#include "hamincl/cli.hpp"
#include "hamincl/config.hpp"
#include "hamincl/errors.hpp"
#include "hamincl/hull.hpp"
#include "hamincl/linking.hpp"
#include "hamincl/solver.hpp"
#include "hamincl/verify.hpp"

#include "helpers.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace hamincl;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

constexpr double kInequalityTol = 1e-8;
constexpr double kWirtingerEqualityTol = 1e-10;
constexpr double kClarkeTol = 1e-5;
constexpr double kKinkDistance = 1e-3;
constexpr double kHullDistanceTol = 1e-3;
constexpr double kHullOptimalityTol = 1e-9;
constexpr double kConvergenceTol = 1e-5;
constexpr double kSmoothResidualTol = 1e-5;
constexpr double kDriftTol = 1e-5;
constexpr double kOracleAgreementTol = 1e-3;
constexpr double kNonsmoothResidualTol = 1e-4;
constexpr double kExcludedFractionMax = 0.02;
constexpr double kSaddleResidualTol = 1e-4;
constexpr double kEkelandTol = 1e-8;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(const std::string& name, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0) o.require(secs < budget_s, "runtime budget " + std::to_string(budget_s) + " s");
  if (!o.pass) ++failures;
  std::printf("%s %s (%.2f s)%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs,
              o.detail.str().c_str());
  std::fflush(stdout);
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

void inequality_suite(Outcome& o) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> kdist(1, 64), ndist(1, 3);
  const double periods[] = {1.0, 2 * pi, 10.0};
  double worst_w = 1e300, worst_s = 1e300, worst_f = 1e300, worst_eq = 0.0;
  int count = 0;
  for (int i = 0; i < 1200; ++i) {
    const double T = periods[i % 3];
    const auto q = testing::random_loop(T, ndist(rng), kdist(rng), rng, true, 1.0 + (i % 4) * 0.5);
    worst_w = std::min(worst_w, check_wirtinger(q).margin);
    worst_s = std::min(worst_s, check_sobolev(q).margin);
    ++count;
  }
  for (double T : periods) {
    for (int c = 0; c < 2; ++c) {
      for (bool sine : {true, false}) {
        const auto h = PeriodicTrajectory::harmonic(T, 2, 16, 1, c, sine, 1.7);
        const auto r = check_wirtinger(h);
        worst_eq = std::max({worst_eq, std::abs(r.margin), std::abs(r.lhs - r.rhs)});
      }
    }
  }
  // sine series vanish at t = 0
  for (int i = 0; i < 300; ++i) {
    const double T = periods[i % 3];
    auto q = testing::random_loop(T, 2, kdist(rng), rng, true);
    Mat a = Mat::Zero(q.dim(), q.modes() + 1);
    q = PeriodicTrajectory(T, a, q.sin_coeffs());
    worst_f = std::min(worst_f, check_friedrichs(q).margin);
  }
  o.detail << ": " << count << " loops, worst Wirtinger margin " << num(worst_w)
           << ", worst Sobolev margin " << num(worst_s) << ", first-harmonic gap " << num(worst_eq)
           << ", worst Friedrichs margin " << num(worst_f);
  o.require(worst_w >= -kInequalityTol, "Wirtinger");
  o.require(worst_s >= -kInequalityTol, "Sobolev");
  o.require(worst_eq <= kWirtingerEqualityTol, "Wirtinger equality");
  o.require(worst_f >= -kInequalityTol, "Friedrichs");
}

void clarke_calculus(Outcome& o) {
  const auto mp = make_zoo("maxpair", 2);
  std::mt19937_64 rng(77);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> lam(0.0, 10.0);
  auto rnd = [&](double s) {
    Vec v(2);
    v << s * normal(rng), s * normal(rng);
    return v;
  };
  double worst_fd = 0.0, worst_sub = -1e300, worst_hom = 0.0;
  int tested = 0;
  while (tested < 100) {
    const Vec x = rnd(0.8);
    if (std::abs(x.norm() - 1.0) <= kKinkDistance) continue;
    const Vec v = rnd(1.0);
    worst_fd = std::max(worst_fd, std::abs(clarke_directional(mp, x, v) - clarke_directional_fd(mp, x, v)));
    ++tested;
  }
  for (int i = 0; i < 100; ++i) {
    Vec x = rnd(1.0);
    if (i % 2 == 0) x /= x.norm();
    const Vec v = rnd(1.0), w = rnd(1.0);
    const double l = lam(rng);
    worst_sub = std::max(worst_sub, clarke_directional(mp, x, v + w) - clarke_directional(mp, x, v) -
                                        clarke_directional(mp, x, w));
    const double a = clarke_directional(mp, x, l * v), b = l * clarke_directional(mp, x, v);
    worst_hom = std::max(worst_hom, std::abs(a - b) / (1.0 + std::abs(b)));
  }
  o.detail << ": max |vertex - fd| " << num(worst_fd) << ", max subadditivity excess "
           << num(worst_sub) << ", max homogeneity error " << num(worst_hom);
  o.require(worst_fd <= kClarkeTol, "finite-difference agreement");
  o.require(worst_sub <= 1e-12, "sublinearity");
  o.require(worst_hom <= 1e-12, "positive homogeneity");
}

// Grid search over the weight simplex followed by pairwise mass exchange with a
// shrinking step; independent of the Wolfe iteration.
double simplex_grid_distance(const Vec& x, const std::vector<Vec>& verts) {
  const int m = static_cast<int>(verts.size());
  auto dist = [&](const Vec& w) {
    Vec p = Vec::Zero(x.size());
    for (int i = 0; i < m; ++i) p += w[i] * verts[i];
    return (x - p).norm();
  };
  const int N = m <= 4 ? 60 : (m == 5 ? 36 : 20);
  Vec best_w = Vec::Zero(m), w(m);
  best_w[0] = 1.0;
  double best = dist(best_w);
  std::vector<int> c(m, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == m - 1) {
      c[i] = left;
      for (int k = 0; k < m; ++k) w[k] = static_cast<double>(c[k]) / N;
      const double v = dist(w);
      if (v < best) best = v, best_w = w;
      return;
    }
    for (int a = 0; a <= left; ++a) {
      c[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, N);
  for (double h = 1.0 / N; h > 1e-9; h *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          if (i == j || best_w[j] <= 0.0) continue;
          w = best_w;
          const double step = std::min(h, w[j]);
          w[i] += step;
          w[j] -= step;
          const double v = dist(w);
          if (v < best - 1e-15) best = v, best_w = w, moved = true;
        }
    }
  }
  return best;
}

void hull_oracle(Outcome& o) {
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> normal;
  double worst_dist = 0.0, worst_opt = -1e300;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 4;
    const int m = 1 + (t / 4) % 6;
    std::vector<Vec> verts;
    for (int i = 0; i < m; ++i) {
      Vec v(n);
      for (int k = 0; k < n; ++k) v[k] = normal(rng);
      verts.push_back(v);
    }
    Vec x(n);
    for (int k = 0; k < n; ++k) x[k] = 2.0 * normal(rng);
    const auto r = project_hull(x, verts);
    worst_dist = std::max(worst_dist, std::abs(r.distance - simplex_grid_distance(x, verts)));
    for (const auto& v : verts) worst_opt = std::max(worst_opt, (x - r.projection).dot(v - r.projection));
  }
  o.detail << ": 200 instances, max distance gap " << num(worst_dist)
           << ", max optimality residual " << num(worst_opt);
  o.require(worst_dist <= kHullDistanceTol, "grid distance");
  o.require(worst_opt <= kHullOptimalityTol, "optimality conditions");
}

void threshold_reproduction(Outcome& o) {
  const auto quartic = make_zoo("quartic", 1);
  double worst_zero = 0.0;
  bool flips = true, refuses = true, accepts = true;
  for (double A : {0.25, 0.5, 1.0, 2.0, 3.7}) {
    const double thr = period_threshold(A);
    worst_zero = std::max(worst_zero, std::abs(alpha_lower_bound(A, thr, 1.0)));
    const double below = thr * (1.0 - 4e-16), above = thr * (1.0 + 4e-16);
    flips = flips && alpha_lower_bound(A, below, 1.0) > 0.0 && alpha_lower_bound(A, above, 1.0) < 0.0;
    auto h = zoo_hypotheses("quartic");
    h.A = A;
    for (double T : {thr, std::nextafter(thr, 1e300), 1.5 * thr}) {
      try {
        calibrate_superquadratic(quartic, h, T, 16);
        refuses = false;
      } catch (const InfeasibleGeometry&) {
      }
    }
    const auto g = calibrate_superquadratic(quartic, h, 0.9 * thr, 16);
    accepts = accepts && g.alpha_bound > 0.0;
    calibrate_superquadratic(quartic, h, std::nextafter(thr, 0.0), 16);
  }
  o.detail << ": max |alpha bound| at threshold " << num(worst_zero);
  o.require(worst_zero <= 1e-15, "zero at threshold");
  o.require(flips, "sign flip");
  o.require(refuses, "refusal at or above threshold");
  o.require(accepts, "positive bound at 0.9 threshold");
}

void smooth_end_to_end(Outcome& o) {
  const auto model = make_zoo("quartic", 1);
  const double T = 2 * pi;
  auto g = calibrate_superquadratic(model, zoo_hypotheses("quartic"), T, 128);
  certify_linking(g, model, 400, 17);
  const auto res = run_minimax(model, g);
  const double drift = energy_drift(res.candidate, model);
  const Vec q0 = evaluate(res.candidate, 0.0);
  const Vec p0 = evaluate(derivative(res.candidate), 0.0);
  const auto oracle = shooting_oracle(model, T, q0, p0, 128);
  const double agree = l2_norm(oracle.orbit - res.candidate);
  o.detail << ": c " << num(res.c_estimate) << ", measure " << num(res.history.back().measure)
           << ", residual " << num(res.verification.aggregate) << ", drift " << num(drift)
           << ", oracle closure " << num(oracle.closure) << ", oracle L2 gap " << num(agree);
  o.require(res.converged && res.history.back().measure < kConvergenceTol, "convergence");
  o.require(res.verification.nonconstant, "nonconstant");
  o.require(res.verification.aggregate < kSmoothResidualTol, "inclusion residual");
  o.require(drift < kDriftTol, "energy drift");
  o.require(agree < kOracleAgreementTol, "oracle agreement");
}

void nonsmooth_end_to_end(Outcome& o) {
  const auto model = make_zoo("maxpair", 2);
  const double T = 2.0;
  auto g = calibrate_superquadratic(model, zoo_hypotheses("maxpair"), T, 128);
  certify_linking(g, model, 400, 17);
  const auto res = run_minimax(model, g);
  const auto cls = classify_sequence(res.history);
  const auto& v = res.verification;
  o.detail << ": c " << num(res.c_estimate) << ", " << res.history.size() << " records, residual "
           << num(v.aggregate) << " (all nodes " << num(v.aggregate_all) << "), excluded "
           << num(v.excluded_fraction) << ", CPS-like " << cls.is_CPS_like << ", bounded "
           << cls.bounded << ", decreasing " << cls.last_quartile_decreasing;
  o.require(res.converged, "convergence");
  o.require(v.aggregate < kNonsmoothResidualTol, "inclusion residual");
  o.require(v.excluded_fraction < kExcludedFractionMax, "excluded fraction");
  o.require(cls.last_quartile_decreasing, "last-quartile trend");
  o.require(cls.is_CPS_like, "CPS-like");
  o.require(cls.bounded, "bounded");

  // circular direction, reported only
  CalibrationOptions circ;
  circ.direction = "circular";
  auto gc = calibrate_superquadratic(model, zoo_hypotheses("maxpair"), T, 128, circ);
  certify_linking(gc, model, 400, 17);
  const auto rc = run_minimax(model, gc);
  o.detail << "\n     info: circular direction gives c " << num(rc.c_estimate) << ", residual "
           << num(rc.verification.aggregate) << ", converged " << rc.converged;
}

void saddle_end_to_end(Outcome& o) {
  const auto model = make_zoo("subq32", 2);
  const auto g = calibrate_saddle(model, zoo_hypotheses("subq32"), 1.0, 128);
  const auto res = run_saddle(model, g);
  EkelandOptions eo;
  eo.tol = kEkelandTol;
  const auto ek = ekeland_diagnostic(res.iterates, res.history, model, eo);
  o.detail << ": R " << num(g.R) << ", gap " << num(g.gap) << ", c " << num(res.c_estimate)
           << ", residual " << num(res.verification.aggregate) << ", Ekeland " << ek.violations
           << "/" << ek.pairs << " violations";
  o.require(g.pass && g.gap > 0.0, "positive gap");
  o.require(res.converged, "convergence");
  o.require(res.verification.aggregate < kSaddleResidualTol, "inclusion residual");
  o.require(ek.violations == 0, "Ekeland violations");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism(Outcome& o) {
  const fs::path root = fs::temp_directory_path() / "hamincl_acceptance";
  fs::remove_all(root);
  const char* configs[] = {
      R"({"potential": {"type": "quartic"}, "T": 6.283185307179586, "n": 1, "K": 128,
          "hypotheses": {"mu1": 4.0, "a1": 0.25, "A": 0.25}})",
      R"({"potential": {"type": "maxpair"}, "T": 2.0, "n": 2, "K": 64,
          "hypotheses": {"mu1": 4.0, "a1": 1.0, "A": 1.0}})",
      R"({"potential": {"type": "subq32"}, "T": 1.0, "n": 2, "K": 64, "mode": "saddle",
          "hypotheses": {"mu1": 1.5, "A": 1.0, "a": 0.10546875}})"};
  int compared = 0, differing = 0;
  std::ostringstream sink;
  for (int c = 0; c < 3; ++c) {
    std::vector<fs::path> dirs;
    for (int rep = 0; rep < 2; ++rep) {
      auto doc = nlohmann::json::parse(configs[c]);
      dirs.push_back(root / ("c" + std::to_string(c) + "_" + std::to_string(rep)));
      doc["output_dir"] = dirs.back().string();
      doc["verbosity"] = 0;
      cli::cmd_solve(parse_config(doc), sink);
    }
    for (const char* f : {"result.json", "trajectory.json", "trajectory.csv", "cerami.csv",
                          "certificates.json"}) {
      const auto a = dirs[0] / f, b = dirs[1] / f;
      ++compared;
      if (!fs::exists(a) || slurp(a) != slurp(b)) ++differing;
    }
  }
  o.detail << ": " << compared << " artifacts compared, " << differing << " differ";
  o.require(differing == 0, "byte-identical artifacts");
}

}  // namespace

int main() {
  criterion("inequality suite", 10.0, inequality_suite);
  criterion("Clarke calculus", 10.0, clarke_calculus);
  criterion("hull projection oracle", 30.0, hull_oracle);
  criterion("period threshold", 0.0, threshold_reproduction);
  criterion("smooth superquadratic end-to-end", 60.0, smooth_end_to_end);
  criterion("nonsmooth end-to-end", 300.0, nonsmooth_end_to_end);
  criterion("subquadratic saddle end-to-end", 300.0, saddle_end_to_end);
  criterion("determinism", 0.0, determinism);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
