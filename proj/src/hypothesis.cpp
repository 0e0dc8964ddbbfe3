#include "hamincl/errors.hpp"
#include "hamincl/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hamincl {

std::string to_string(HypothesisId id) {
  switch (id) {
    case HypothesisId::V2: return "V2";
    case HypothesisId::V3: return "V3";
    case HypothesisId::V4: return "V4";
    case HypothesisId::V2Prime: return "V2'";
    case HypothesisId::V3Prime: return "V3'";
    case HypothesisId::V4Prime: return "V4'";
  }
  return "?";
}

HypothesisId hypothesis_from_string(const std::string& s) {
  for (auto id : {HypothesisId::V2, HypothesisId::V3, HypothesisId::V4, HypothesisId::V2Prime,
                  HypothesisId::V3Prime, HypothesisId::V4Prime}) {
    if (s == to_string(id)) return id;
  }
  if (s == "V2p") return HypothesisId::V2Prime;
  if (s == "V3p") return HypothesisId::V3Prime;
  if (s == "V4p") return HypothesisId::V4Prime;
  throw ParameterError("unknown hypothesis '" + s + "'");
}

namespace {

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

Vec place(const Vec& dir, double r) {
  const double nrm = dir.norm();
  if (nrm == 0.0) {
    Vec e = Vec::Zero(dir.size());
    e[0] = r;
    return e;
  }
  return (r / nrm) * dir;
}

}  // namespace

std::vector<Vec> shell_samples(int dim, double r_min, double r_max, int count, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("sample dimension must be >= 1");
  if (!(r_min >= 0.0) || !(r_max >= r_min)) throw ParameterError("invalid sample radius range");
  std::vector<Vec> out;
  out.reserve(count + 6 * dim);
  // axis points
  for (int i = 0; i < dim; ++i) {
    for (double r : {r_min, 0.5 * (r_min + r_max), r_max}) {
      for (double sgn : {1.0, -1.0}) {
        Vec x = Vec::Zero(dim);
        x[i] = sgn * r;
        out.push_back(x);
      }
    }
  }
  const int halton = count / 2;
  const bool halton_ok = dim + 1 <= static_cast<int>(std::size(kPrimes));
  for (int s = 0; s < halton && halton_ok; ++s) {
    Vec dir(dim);
    for (int i = 0; i < dim; ++i) dir[i] = 2.0 * radical_inverse(s + 1, kPrimes[i + 1]) - 1.0;
    const double u = radical_inverse(s + 1, kPrimes[0]);
    out.push_back(place(dir, r_min + u * (r_max - r_min)));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  const int rest = count - (halton_ok ? halton : 0);
  for (int s = 0; s < rest; ++s) {
    Vec dir(dim);
    for (int i = 0; i < dim; ++i) dir[i] = normal(rng);
    out.push_back(place(dir, r_min + unit(rng) * (r_max - r_min)));
  }
  return out;
}

HypothesisCertificate certify(const PotentialModel& model, HypothesisId id,
                              const HypothesisParams& p, const SamplerSpec& sampler) {
  if (sampler.count < 1) throw ParameterError("sampler count must be >= 1");
  switch (id) {
    case HypothesisId::V2:
      if (!(p.mu1 > 2.0)) throw ParameterError("V2 requires mu1 > 2");
      break;
    case HypothesisId::V2Prime:
      if (!(p.mu1 < 2.0)) throw ParameterError("V2' requires mu1 < 2");
      break;
    case HypothesisId::V3:
      if (!(p.a1 > 0.0)) throw ParameterError("V3 requires a1 > 0");
      break;
    case HypothesisId::V4:
      if (!(p.A > 0.0)) throw ParameterError("V4 requires A > 0");
      if (!(p.v4_radius > 0.0)) throw ParameterError("V4 requires a positive ball radius");
      break;
    case HypothesisId::V4Prime:
      if (!(p.A > 0.0)) throw ParameterError("V4' requires A > 0");
      break;
    case HypothesisId::V3Prime:
      if (!(p.outer_radius > 0.0)) throw ParameterError("V3' requires a positive shell radius");
      break;
  }
  if (!(p.inner_cutoff >= 0.0) || !(p.sample_radius > p.inner_cutoff)) {
    throw ParameterError("sample radius must exceed the inner cutoff");
  }

  const int n = model.dim();
  std::vector<Vec> pts;
  switch (id) {
    case HypothesisId::V2:
    case HypothesisId::V2Prime:
    case HypothesisId::V3:
      pts = shell_samples(n, id == HypothesisId::V3 ? 0.0 : p.inner_cutoff, p.sample_radius,
                          sampler.count, sampler.seed);
      break;
    case HypothesisId::V4:
      pts = shell_samples(n, 0.0, p.v4_radius, sampler.count, sampler.seed);
      break;
    case HypothesisId::V4Prime:
      pts = shell_samples(n, 0.0, p.sample_radius, sampler.count, sampler.seed);
      break;
    case HypothesisId::V3Prime:
      pts = shell_samples(n, p.outer_radius, p.outer_radius, sampler.count, sampler.seed);
      break;
  }

  HypothesisCertificate c;
  c.id = id;
  c.params = p;
  c.samples = static_cast<int>(pts.size());
  c.worst_margin = std::numeric_limits<double>::infinity();
  c.shell_min_value = std::numeric_limits<double>::infinity();
  for (const Vec& x : pts) {
    const double v = model.value(x);
    double m = 0.0;
    switch (id) {
      case HypothesisId::V2: {
        const auto s = model.subdiff(x);
        m = std::numeric_limits<double>::infinity();
        for (const auto& y : s.vertices) m = std::min(m, y.dot(x) - p.mu1 * v - p.mu2);
        break;
      }
      case HypothesisId::V2Prime: {
        const auto s = model.subdiff(x);
        m = std::numeric_limits<double>::infinity();
        for (const auto& y : s.vertices) m = std::min(m, p.mu1 * v + p.mu2 - y.dot(x));
        break;
      }
      case HypothesisId::V3:
        m = v - p.a1 * std::pow(x.norm(), p.mu1) - p.a2;
        break;
      case HypothesisId::V4:
        m = std::min(v, p.A * x.squaredNorm() - v);
        break;
      case HypothesisId::V4Prime:
        m = p.A * x.squaredNorm() + p.a - v;
        break;
      case HypothesisId::V3Prime:
        c.shell_min_value = std::min(c.shell_min_value, v);
        m = v - p.coercive_threshold;
        break;
    }
    if (m < c.worst_margin) {
      c.worst_margin = m;
      c.worst_point = x;
    }
  }
  c.pass = c.worst_margin >= -kCertificateTolerance;
  if (id == HypothesisId::V3Prime) c.non_coercive = !c.pass;
  return c;
}

}  // namespace hamincl
