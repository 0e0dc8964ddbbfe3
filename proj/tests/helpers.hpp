#pragma once

#include "hamincl/trajectory.hpp"

#include <cmath>
#include <random>

namespace testing {

using hamincl::Mat;
using hamincl::PeriodicTrajectory;
using hamincl::Vec;

inline PeriodicTrajectory random_loop(double T, int n, int K, std::mt19937_64& rng,
                                      bool zero_mean = false, double decay = 1.0) {
  std::normal_distribution<double> normal;
  Mat a(n, K + 1), b(n, K + 1);
  for (int i = 0; i < n; ++i) {
    a(i, 0) = zero_mean ? 0.0 : normal(rng);
    b(i, 0) = 0.0;
    for (int k = 1; k <= K; ++k) {
      const double s = std::pow(k, -decay);
      a(i, k) = s * normal(rng);
      b(i, k) = s * normal(rng);
    }
  }
  return PeriodicTrajectory(T, a, b);
}

// Term-by-term summation, independent of the library's tables.
inline Vec direct_value(const PeriodicTrajectory& q, double t) {
  Vec v = q.cos_coeffs().col(0);
  for (int k = 1; k <= q.modes(); ++k) {
    const double w = 2.0 * M_PI * k / q.period();
    v += q.cos_coeffs().col(k) * std::cos(w * t) + q.sin_coeffs().col(k) * std::sin(w * t);
  }
  return v;
}

// Trapezoid rule for int_0^T g(t) dt on N points using direct summation.
template <class F>
double trapezoid(double T, int N, F&& g) {
  double s = 0.0;
  for (int j = 0; j < N; ++j) s += g(j * T / N);
  return s * T / N;
}

}  // namespace testing
