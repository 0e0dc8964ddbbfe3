#include "hamincl/action.hpp"
#include "hamincl/kernels.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <random>

using namespace hamincl;

TEST_CASE("serial and parallel node selection are bitwise identical") {
  std::mt19937_64 rng(31);
  for (const char* name : {"maxpair", "quartic", "subq32cos"}) {
    const auto model = make_zoo(name, 3);
    for (int trial = 0; trial < 5; ++trial) {
      const auto q = testing::random_loop(2.0, 3, 20, rng);
      const Mat x = sample(q);
      const Mat y = sample(derivative(derivative(q)));
      const auto s = kernels::select_nodes_serial(model, x, y, 1e-7, 1e-6);
      const auto p = kernels::select_nodes_parallel(model, x, y, 1e-7, 1e-6);
      CHECK(s.selection == p.selection);
      CHECK(s.distance == p.distance);
      CHECK(s.potential == p.potential);
      CHECK(s.active == p.active);
      CHECK(s.wide_count == p.wide_count);
      REQUIRE(s.weights.size() == p.weights.size());
      for (std::size_t j = 0; j < s.weights.size(); ++j) CHECK(s.weights[j] == p.weights[j]);
    }
  }
}

TEST_CASE("serial and parallel action batches are bitwise identical") {
  std::mt19937_64 rng(32);
  const auto model = make_zoo("maxpair", 2);
  std::vector<PeriodicTrajectory> loops;
  for (int i = 0; i < 37; ++i) loops.push_back(testing::random_loop(3.0, 2, 8, rng));
  const Vec s = kernels::action_values_serial(loops, model);
  const Vec p = kernels::action_values_parallel(loops, model);
  CHECK(s == p);
  for (int i = 0; i < 37; ++i) CHECK(s[i] == action_value(loops[i], model));
}

TEST_CASE("gradient is independent of the parallel flag") {
  std::mt19937_64 rng(33);
  const auto model = make_zoo("maxpair", 2);
  const auto q = testing::random_loop(3.0, 2, 12, rng);
  GradientOptions serial;
  serial.parallel = false;
  const auto a = min_norm_subgradient(q, model, Metric::H1Precond, serial);
  const auto b = min_norm_subgradient(q, model, Metric::H1Precond, {});
  CHECK(a.residual == b.residual);
  CHECK(a.h1_precond_norm == b.h1_precond_norm);
}

TEST_CASE("argmax takes the lowest index on ties") {
  Vec v(5);
  v << 1, 3, 2, 3, -1;
  CHECK(kernels::argmax_lowest(v) == 1);
  v << 4, 4, 4, 4, 4;
  CHECK(kernels::argmax_lowest(v) == 0);
}

TEST_CASE("wide count dominates the active count") {
  const auto model = make_zoo("maxpair", 2);
  Mat x(3, 2), y = Mat::Zero(3, 2);
  x << 1, 0, 0.6, 0.8, 0.2, 0.1;
  const auto s = kernels::select_nodes_serial(model, x, y, 1e-8, 1e-7);
  CHECK(s.active[0].size() == 2);
  CHECK(s.active[1].size() == 2);
  CHECK(s.active[2].size() == 1);
  for (int j = 0; j < 3; ++j) CHECK(s.wide_count[j] >= static_cast<int>(s.active[j].size()));
  CHECK(s.distance[0] == doctest::Approx(4.0));
}
