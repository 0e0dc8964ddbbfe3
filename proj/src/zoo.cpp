#include "hamincl/errors.hpp"
#include "hamincl/potential.hpp"

#include <cmath>

namespace hamincl {

namespace {

// c |x|^p + d, gradient c p |x|^{p-2} x (zero at the origin, valid for p > 1).
SmoothPiece radial_power(double c, double p, double d = 0.0) {
  return {[=](const Vec& x) { return c * std::pow(x.squaredNorm(), 0.5 * p) + d; },
          [=](const Vec& x) -> Vec {
            const double r2 = x.squaredNorm();
            if (r2 == 0.0) return Vec::Zero(x.size());
            return (c * p * std::pow(r2, 0.5 * p - 1.0)) * x;
          }};
}

SmoothPiece linear_piece(Vec c) {
  return {[c](const Vec& x) { return c.dot(x); }, [c](const Vec&) -> Vec { return c; }};
}

}  // namespace

SmoothPiece polynomial_piece(int dim, std::vector<PolynomialTerm> terms) {
  for (const auto& t : terms) {
    if (static_cast<int>(t.powers.size()) != dim) {
      throw DimensionError("polynomial term has " + std::to_string(t.powers.size()) +
                           " powers, expected " + std::to_string(dim));
    }
    for (int p : t.powers) {
      if (p < 0) throw ParameterError("polynomial powers must be nonnegative");
    }
  }
  auto value = [terms](const Vec& x) {
    double s = 0.0;
    for (const auto& t : terms) {
      double m = t.coef;
      for (int i = 0; i < x.size(); ++i) m *= std::pow(x[i], t.powers[i]);
      s += m;
    }
    return s;
  };
  auto gradient = [terms](const Vec& x) -> Vec {
    Vec g = Vec::Zero(x.size());
    for (const auto& t : terms) {
      for (int j = 0; j < x.size(); ++j) {
        if (t.powers[j] == 0) continue;
        double m = t.coef * t.powers[j] * std::pow(x[j], t.powers[j] - 1);
        for (int i = 0; i < x.size(); ++i) {
          if (i != j) m *= std::pow(x[i], t.powers[i]);
        }
        g[j] += m;
      }
    }
    return g;
  };
  return {value, gradient};
}

std::vector<std::string> zoo_names() {
  return {"zero", "quartic", "maxpair", "subq32", "subq32cos", "quadquartic",
          "bounded", "harmonic", "abs", "linear"};
}

PotentialModel make_zoo(const std::string& name, int dim, double param) {
  if (dim < 1) throw DimensionError("potential dimension must be >= 1");
  if (name == "zero") {
    return PotentialModel::smooth(dim, radial_power(0.0, 2.0), name);
  }
  if (name == "quartic") {
    return PotentialModel::smooth(dim, radial_power(0.25, 4.0), name);
  }
  if (name == "maxpair") {
    return PotentialModel::piecewise_max(dim, {radial_power(1.0, 4.0), radial_power(2.0, 4.0, -1.0)},
                                         name);
  }
  if (name == "subq32") {
    return PotentialModel::smooth(dim, radial_power(1.0, 1.5), name);
  }
  if (name == "subq32cos") {
    const auto base = radial_power(1.0, 1.5);
    SmoothPiece p{[base](const Vec& x) { return base.value(x) + 0.1 * std::cos(x[0]); },
                  [base](const Vec& x) -> Vec {
                    Vec g = base.gradient(x);
                    g[0] -= 0.1 * std::sin(x[0]);
                    return g;
                  }};
    return PotentialModel::smooth(dim, p, name);
  }
  if (name == "quadquartic") {
    const auto p2 = radial_power(0.5, 2.0);
    const auto p4 = radial_power(0.25, 4.0);
    SmoothPiece p{[p2, p4](const Vec& x) { return p2.value(x) + p4.value(x); },
                  [p2, p4](const Vec& x) -> Vec { return p2.gradient(x) + p4.gradient(x); }};
    return PotentialModel::smooth(dim, p, name);
  }
  if (name == "bounded") {
    SmoothPiece p{[](const Vec& x) {
                    const double r2 = x.squaredNorm();
                    return r2 / (1.0 + r2);
                  },
                  [](const Vec& x) -> Vec {
                    const double d = 1.0 + x.squaredNorm();
                    return (2.0 / (d * d)) * x;
                  }};
    return PotentialModel::smooth(dim, p, name);
  }
  if (name == "harmonic") {
    return PotentialModel::smooth(dim, radial_power(0.5 * param * param, 2.0), name);
  }
  if (name == "abs") {
    if (dim != 1) throw DimensionError("abs potential is one-dimensional");
    Vec c(1);
    c[0] = 1.0;
    return PotentialModel::piecewise_max(1, {linear_piece(c), linear_piece(-c)}, name);
  }
  if (name == "linear") {
    return PotentialModel::smooth(dim, linear_piece(Vec::Constant(dim, param)), name);
  }
  throw ParameterError("unknown zoo potential '" + name + "'");
}

HypothesisParams zoo_hypotheses(const std::string& name) {
  HypothesisParams h;
  if (name == "quartic") {
    h.mu1 = 4.0, h.mu2 = 0.0, h.a1 = 0.25, h.a2 = 0.0, h.A = 0.25;
  } else if (name == "maxpair") {
    h.mu1 = 4.0, h.mu2 = 0.0, h.a1 = 1.0, h.a2 = 0.0, h.A = 1.0;
  } else if (name == "subq32") {
    // min_r (r^2 - r^{3/2}) = -0.25 * 0.75^3
    h.mu1 = 1.5, h.mu2 = 0.0, h.A = 1.0, h.a = 0.25 * 0.75 * 0.75 * 0.75;
  } else if (name == "subq32cos") {
    h.mu1 = 1.6, h.mu2 = 0.2, h.A = 1.0, h.a = 0.21;
  } else if (name == "quadquartic") {
    // (V2) margin is (|x|^2 - 1)^2 / 4; A = 1/2 + r^2/4 on the unit ball
    h.mu1 = 3.0, h.mu2 = -0.25, h.a1 = 0.25, h.a2 = 0.0, h.A = 0.75;
  } else if (name == "bounded") {
    h.mu1 = 1.5, h.mu2 = 0.1, h.A = 1.0, h.a = 1.0;
  }
  return h;
}

}  // namespace hamincl
