#include "hamincl/action.hpp"
#include "hamincl/errors.hpp"
#include "hamincl/linking.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <numbers>

using namespace hamincl;
using std::numbers::pi;

TEST_CASE("alpha lower bound") {
  CHECK(alpha_lower_bound(1.0, pi * std::sqrt(2.0), 1.7) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(alpha_lower_bound(1.0, pi * std::sqrt(2.0), 1.7)) < 1e-14);
  CHECK(alpha_lower_bound(1.0, pi, 1.0) == doctest::Approx(0.25));
  CHECK(alpha_lower_bound(1.0, pi, 0.0) == 0.0);
  CHECK(period_threshold(1.0) == doctest::Approx(pi * std::sqrt(2.0)));
  // quadratic in rho, decreasing in T, sign flip at the threshold
  CHECK(alpha_lower_bound(0.5, 2.0, 3.0) == doctest::Approx(9.0 * alpha_lower_bound(0.5, 2.0, 1.0)));
  double prev = 1e300;
  const double thr = period_threshold(0.5);
  for (int i = 1; i < 50; ++i) {
    const double T = thr * i / 40.0;
    const double a = alpha_lower_bound(0.5, T, 1.0);
    CHECK(a < prev);
    prev = a;
    CHECK((a > 0) == (T < thr));
  }
}

TEST_CASE("superquadratic calibration on the quartic") {
  const auto quartic = make_zoo("quartic", 1);
  const auto h = zoo_hypotheses("quartic");
  auto g = calibrate_superquadratic(quartic, h, 2 * pi, 16);
  CHECK(g.alpha_bound > 0.0);
  CHECK(g.outer_bound < 0.0);
  CHECK(g.r2 > g.rho);
  CHECK(g.r1 == doctest::Approx(g.r2 / 4));
  CHECK(std::abs(kinetic_energy2(g.e) - 1.0) < 1e-12);
  CHECK(g.e.mean().norm() == 0.0);
  const auto g3 = calibrate_superquadratic(quartic, h, 3.0, 16);
  CHECK(std::abs(kinetic_energy2(g3.e) - 1.0) < 1e-12);
  CHECK(std::sqrt(2 * pi / 12) * g.rho == doctest::Approx(h.v4_radius));

  certify_linking(g, quartic, 400, 3);
  CHECK(g.pass);
  CHECK(g.alpha_sampled >= g.alpha_bound - 1e-8);
  CHECK(g.alpha_sampled > g.beta_sampled);

  const auto extra = 1.01 * g.rho / std::sqrt(kinetic_energy2(g.e)) * g.e;
  LinkingGeometry g2 = g;
  certify_linking(g2, quartic, 400, 3, {extra});
  CHECK(g2.alpha_sampled <= action_value(extra, quartic));
}

TEST_CASE("threshold refusal") {
  const auto quartic = make_zoo("quartic", 1);
  auto h = zoo_hypotheses("quartic");
  h.A = 1.0;
  CHECK_THROWS_AS(calibrate_superquadratic(quartic, h, pi * std::sqrt(2.0), 8), InfeasibleGeometry);
  try {
    calibrate_superquadratic(quartic, h, 10.0, 8);
    FAIL("expected refusal");
  } catch (const InfeasibleGeometry& e) {
    CHECK(e.threshold() == doctest::Approx(4.4428829));
    CHECK(e.period() == 10.0);
    CHECK(std::string(e.what()).find("4.44") != std::string::npos);
  }
}

TEST_CASE("forced geometry above the threshold fails certification") {
  const auto qq = make_zoo("quadquartic", 1);
  auto g = calibrate_superquadratic(qq, zoo_hypotheses("quadquartic"), 8.0, 12, [] {
    CalibrationOptions o;
    o.force = true;
    return o;
  }());
  CHECK(g.forced);
  CHECK(g.alpha_bound < 0.0);
  certify_linking(g, qq, 300, 5);
  CHECK_FALSE(g.pass);
}

TEST_CASE("larger a1 never grows r2") {
  const auto quartic = make_zoo("quartic", 2);
  auto h = zoo_hypotheses("quartic");
  double prev = 1e300;
  for (double a1 : {0.05, 0.1, 0.25, 0.5, 1.0, 4.0}) {
    h.a1 = a1;
    const auto g = calibrate_superquadratic(quartic, h, 2 * pi, 8);
    CHECK(g.r2 <= prev);
    prev = g.r2;
  }
}

TEST_CASE("sphere samples respect the analytic bound") {
  const auto quartic = make_zoo("quartic", 2);
  const auto h = zoo_hypotheses("quartic");
  const auto g = calibrate_superquadratic(quartic, h, 2 * pi, 12);
  const auto S = sample_sphere(2 * pi, 2, 12, g.rho, 300, 9);
  CHECK(S.size() >= 300);
  for (const auto& q : S) {
    CHECK(std::sqrt(kinetic_energy2(q)) == doctest::Approx(g.rho).epsilon(1e-12));
    CHECK(q.mean().norm() == 0.0);
    CHECK(sup_norm(q) <= h.v4_radius + 1e-9);
    CHECK(action_value(q, quartic) >= g.alpha_bound - 1e-10);
  }
  // constant loops on the bottom disk have f = -T V <= 0
  for (const auto& q : sample_boundary(g, 90, 4)) {
    if (q.sin_coeffs().norm() == 0.0 && q.cos_coeffs().rightCols(12).norm() == 0.0) {
      CHECK(action_value(q, quartic) <= 0.0);
    }
  }
}

TEST_CASE("circular direction") {
  const auto quartic = make_zoo("quartic", 2);
  CalibrationOptions o;
  o.direction = "circular";
  const auto g = calibrate_superquadratic(quartic, zoo_hypotheses("quartic"), 2 * pi, 8, o);
  CHECK(std::abs(kinetic_energy2(g.e) - 1.0) < 1e-12);
  CHECK(g.e.sin_coeffs()(0, 1) != 0.0);
  CHECK(g.e.cos_coeffs()(1, 1) != 0.0);
  CHECK_THROWS_AS(calibrate_superquadratic(make_zoo("quartic", 1), zoo_hypotheses("quartic"),
                                           2 * pi, 8, o),
                  ParameterError);
}

TEST_CASE("saddle calibration") {
  const auto sq = make_zoo("subq32", 2);
  const auto h = zoo_hypotheses("subq32");
  const auto g = calibrate_saddle(sq, h, 1.0, 8);
  CHECK(g.pass);
  CHECK(g.gap > 0.0);
  CHECK(g.x2_inf_bound == doctest::Approx(-h.a));
  CHECK(g.x2_inf_sampled >= g.x2_inf_bound - 1e-9);
  CHECK(g.alpha_sampled <= g.x2_inf_bound);
  CHECK(g.sphere_sup == doctest::Approx(-std::pow(g.R, 1.5)));

  CalibrationOptions small;
  small.R = 0.01;
  const auto gs = calibrate_saddle(sq, h, 1.0, 8, small);
  CHECK_FALSE(gs.pass);
  CHECK(gs.gap <= 0.0);
}

TEST_CASE("saddle calibration errors") {
  auto h = zoo_hypotheses("subq32");
  h.A = 0.5;
  CHECK_THROWS_AS(calibrate_saddle(make_zoo("harmonic", 1, 1.0), h, 7.0, 8), InfeasibleGeometry);
  CHECK_THROWS_AS(calibrate_saddle(make_zoo("bounded", 1), zoo_hypotheses("bounded"), 1.0, 6),
                  NonCoerciveError);
  CHECK_THROWS_AS(calibrate_saddle(make_zoo("quartic", 1), zoo_hypotheses("quartic"), 1.0, 6),
                  ParameterError);
}

TEST_CASE("X2 descent keeps zero mean and lowers f") {
  std::mt19937_64 rng(51);
  const auto sq = make_zoo("subq32cos", 2);
  const auto q = testing::random_loop(1.0, 2, 8, rng, true);
  const auto d = descend_x2(sq, q, 50);
  CHECK(d.mean().norm() == 0.0);
  CHECK(action_value(d, sq) <= action_value(q, sq));
}
