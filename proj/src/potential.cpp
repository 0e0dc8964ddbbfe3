#include "hamincl/potential.hpp"

#include "hamincl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hamincl {

PotentialModel::PotentialModel(int dim, std::vector<SmoothPiece> pieces, bool smooth,
                               std::string name)
    : dim_(dim), pieces_(std::move(pieces)), smooth_(smooth), name_(std::move(name)) {
  if (dim_ < 1) throw DimensionError("potential dimension must be >= 1");
  if (pieces_.empty()) throw PreconditionError("potential needs at least one piece");
  for (const auto& p : pieces_) {
    if (!p.value || !p.gradient) throw PreconditionError("every piece needs value and gradient maps");
  }
}

PotentialModel PotentialModel::smooth(int dim, SmoothPiece piece, std::string name) {
  return PotentialModel(dim, {std::move(piece)}, true, std::move(name));
}

PotentialModel PotentialModel::piecewise_max(int dim, std::vector<SmoothPiece> pieces,
                                             std::string name) {
  const bool single = pieces.size() == 1;
  return PotentialModel(dim, std::move(pieces), single, std::move(name));
}

double PotentialModel::value(const Vec& x) const {
  if (x.size() != dim_) throw DimensionError("point has wrong dimension for potential");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) best = std::max(best, p.value(x));
  return best;
}

SubgradientSet PotentialModel::subdiff(const Vec& x, double tol_active) const {
  if (x.size() != dim_) throw DimensionError("point has wrong dimension for potential");
  if (!(tol_active >= 0.0)) throw PreconditionError("tol_active must be >= 0");
  SubgradientSet s;
  s.base = x;
  if (smooth_) {
    s.vertices.push_back(pieces_.front().gradient(x));
    s.pieces.push_back(0);
    return s;
  }
  thread_local std::vector<double> values;
  values.resize(pieces_.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    values[i] = pieces_[i].value(x);
    best = std::max(best, values[i]);
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (values[i] >= best - tol_active) {
      s.vertices.push_back(pieces_[i].gradient(x));
      s.pieces.push_back(static_cast<int>(i));
    }
  }
  if (s.vertices.empty()) throw Error("internal: empty active set");
  return s;
}

SubgradientSet PotentialModel::subdiff(const Vec& x) const {
  return subdiff(x, default_tolerance(value(x)));
}

double clarke_directional(const PotentialModel& model, const Vec& x, const Vec& v) {
  const auto s = model.subdiff(x);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& g : s.vertices) best = std::max(best, g.dot(v));
  return best;
}

double clarke_directional_fd(const PotentialModel& model, const Vec& x, const Vec& v,
                             const ClarkeFdOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  double best = -std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(x.size());
  for (int s = 0; s <= opts.samples; ++s) {
    Vec y = x;
    if (s > 0) {
      Vec dir(n);
      for (int i = 0; i < n; ++i) dir[i] = normal(rng);
      y += opts.radius * std::pow(unit(rng), 1.0 / n) * dir / dir.norm();
    }
    const double fy = model.value(y);
    for (double lambda : opts.steps) {
      best = std::max(best, (model.value(y + lambda * v) - fy) / lambda);
    }
  }
  return best;
}

}  // namespace hamincl
