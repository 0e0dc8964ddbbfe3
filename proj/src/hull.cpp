#include "hamincl/hull.hpp"

#include "hamincl/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hamincl {

namespace {

// min |sum mu_i w_i| subject to sum mu_i = 1 over the corral S.
Vec affine_minimizer(const std::vector<Vec>& w, const std::vector<int>& S) {
  const int m = static_cast<int>(S.size());
  Mat K = Mat::Zero(m + 1, m + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) K(i, j) = K(j, i) = w[S[i]].dot(w[S[j]]);
    K(i, m) = K(m, i) = 1.0;
  }
  Vec rhs = Vec::Zero(m + 1);
  rhs[m] = 1.0;
  Vec sol = K.completeOrthogonalDecomposition().solve(rhs);
  return sol.head(m);
}

HullProjection segment(const Vec& p, const Vec& a, const Vec& b) {
  const Vec d = b - a;
  const double dd = d.squaredNorm();
  double t = dd > 0.0 ? (p - a).dot(d) / dd : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  HullProjection h;
  h.projection = a + t * d;
  h.weights = Vec(2);
  h.weights << 1.0 - t, t;
  h.distance = (p - h.projection).norm();
  return h;
}

}  // namespace

HullProjection project_hull(const Vec& point, const std::vector<Vec>& vertices) {
  if (vertices.empty()) throw PreconditionError("project_hull needs at least one vertex");
  const int m = static_cast<int>(vertices.size());
  for (const auto& v : vertices) {
    if (v.size() != point.size()) throw DimensionError("vertex dimension mismatch");
  }
  if (m == 1) {
    HullProjection h;
    h.projection = vertices[0];
    h.weights = Vec::Ones(1);
    h.distance = (point - vertices[0]).norm();
    return h;
  }
  if (m == 2) return segment(point, vertices[0], vertices[1]);

  std::vector<Vec> w(m);
  double scale = 0.0;
  for (int i = 0; i < m; ++i) {
    w[i] = vertices[i] - point;
    scale = std::max(scale, w[i].squaredNorm());
  }
  const double eps = 1e-15 * std::max(scale, 1e-300);

  int start = 0;
  for (int i = 1; i < m; ++i) {
    if (w[i].squaredNorm() < w[start].squaredNorm()) start = i;
  }
  std::vector<int> S{start};
  Vec lam = Vec::Zero(m);
  lam[start] = 1.0;
  Vec x = w[start];

  for (int major = 0; major < 50 * m; ++major) {
    int j = 0;
    double best = x.dot(w[0]);
    for (int i = 1; i < m; ++i) {
      const double d = x.dot(w[i]);
      if (d < best) best = d, j = i;
    }
    if (x.squaredNorm() - best <= eps) break;
    if (std::find(S.begin(), S.end(), j) != S.end()) break;
    S.push_back(j);

    for (int minor = 0; minor < 2 * m + 2; ++minor) {
      const Vec mu = affine_minimizer(w, S);
      bool interior = true;
      for (int k = 0; k < static_cast<int>(S.size()); ++k) interior = interior && mu[k] > 1e-14;
      if (interior) {
        for (int k = 0; k < static_cast<int>(S.size()); ++k) lam[S[k]] = mu[k];
        break;
      }
      double theta = 1.0;
      for (int k = 0; k < static_cast<int>(S.size()); ++k) {
        if (mu[k] <= 1e-14) {
          const double denom = lam[S[k]] - mu[k];
          if (denom > 0.0) theta = std::min(theta, lam[S[k]] / denom);
        }
      }
      for (int k = 0; k < static_cast<int>(S.size()); ++k) {
        lam[S[k]] = lam[S[k]] + theta * (mu[k] - lam[S[k]]);
      }
      std::vector<int> keep;
      for (int k : S) {
        if (lam[k] > 1e-14) {
          keep.push_back(k);
        } else {
          lam[k] = 0.0;
        }
      }
      S.swap(keep);
      if (S.empty()) {  // numerical corner: restart from the best vertex
        S.push_back(j);
        lam.setZero();
        lam[j] = 1.0;
        break;
      }
    }
    lam /= lam.sum();
    x.setZero();
    for (int k : S) x += lam[k] * w[k];
  }

  HullProjection h;
  h.weights = lam;
  h.projection = Vec::Zero(point.size());
  for (int i = 0; i < m; ++i) h.projection += lam[i] * vertices[i];
  h.distance = (point - h.projection).norm();
  return h;
}

}  // namespace hamincl
