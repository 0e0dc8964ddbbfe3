#include "hamincl/io.hpp"

#include "hamincl/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace hamincl {

using nlohmann::json;

namespace {

json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

Vec read_vec(const json& j, int n, const std::string& key) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw ConfigError(key, "expected an array of " + std::to_string(n) + " numbers");
  }
  Vec v(n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_number()) throw ConfigError(key, "expected numbers");
    v[i] = j[i].get<double>();
    if (!std::isfinite(v[i])) throw ConfigError(key, "coefficients must be finite");
  }
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json trajectory_to_json(const PeriodicTrajectory& q) {
  json j;
  j["T"] = q.period();
  j["n"] = q.dim();
  j["K"] = q.modes();
  j["a0"] = vec_json(q.mean());
  json a = json::array(), b = json::array();
  for (int k = 1; k <= q.modes(); ++k) {
    a.push_back(vec_json(q.cos_coeffs().col(k)));
    b.push_back(vec_json(q.sin_coeffs().col(k)));
  }
  j["a"] = a;
  j["b"] = b;
  return j;
}

PeriodicTrajectory trajectory_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("trajectory", "expected an object");
  for (const char* key : {"T", "n", "K", "a0", "a", "b"}) {
    if (!j.contains(key)) throw ConfigError(key, "missing");
  }
  if (!j["T"].is_number() || !(j["T"].get<double>() > 0.0)) throw ConfigError("T", "must be positive");
  if (!j["n"].is_number_integer() || j["n"].get<int>() < 1) throw ConfigError("n", "must be >= 1");
  if (!j["K"].is_number_integer() || j["K"].get<int>() < 1) throw ConfigError("K", "must be >= 1");
  const double T = j["T"].get<double>();
  const int n = j["n"].get<int>();
  const int K = j["K"].get<int>();
  if (!j["a"].is_array() || static_cast<int>(j["a"].size()) != K) {
    throw ConfigError("a", "expected K coefficient vectors");
  }
  if (!j["b"].is_array() || static_cast<int>(j["b"].size()) != K) {
    throw ConfigError("b", "expected K coefficient vectors");
  }
  Mat a = Mat::Zero(n, K + 1), b = Mat::Zero(n, K + 1);
  a.col(0) = read_vec(j["a0"], n, "a0");
  for (int k = 1; k <= K; ++k) {
    a.col(k) = read_vec(j["a"][k - 1], n, "a[" + std::to_string(k - 1) + "]");
    b.col(k) = read_vec(j["b"][k - 1], n, "b[" + std::to_string(k - 1) + "]");
  }
  return PeriodicTrajectory(T, std::move(a), std::move(b));
}

std::string trajectory_csv(const PeriodicTrajectory& q, int nodes) {
  if (nodes <= 0) nodes = quadrature_nodes(q.modes());
  const Mat x = sample(q, nodes);
  const Mat v = sample(derivative(q), nodes);
  std::string out = "t";
  for (int i = 1; i <= q.dim(); ++i) out += ",q_" + std::to_string(i);
  for (int i = 1; i <= q.dim(); ++i) out += ",qdot_" + std::to_string(i);
  out += "\n";
  for (int j = 0; j < nodes; ++j) {
    out += format_double(j * q.period() / nodes);
    for (int i = 0; i < q.dim(); ++i) out += "," + format_double(x(j, i));
    for (int i = 0; i < q.dim(); ++i) out += "," + format_double(v(j, i));
    out += "\n";
  }
  return out;
}

std::string cerami_csv(const std::vector<CeramiRecord>& records) {
  std::string out = "iter,f,h1norm,minnorm,measure\n";
  for (const auto& r : records) {
    out += std::to_string(r.iter) + "," + format_double(r.f) + "," + format_double(r.h1norm) + "," +
           format_double(r.minnorm) + "," + format_double(r.measure) + "\n";
  }
  return out;
}

std::string distances_csv(const VerificationReport& r) {
  std::string out = "t,dist,active_count\n";
  for (std::size_t j = 0; j < r.distances.size(); ++j) {
    out += format_double(r.times[j]) + "," + format_double(r.distances[j]) + "," +
           std::to_string(r.active_counts[j]) + "\n";
  }
  return out;
}

json certificate_to_json(const HypothesisCertificate& c) {
  json j;
  j["hypothesis"] = to_string(c.id);
  const auto& p = c.params;
  json params;
  switch (c.id) {
    case HypothesisId::V2:
    case HypothesisId::V2Prime:
      params = {{"mu1", p.mu1}, {"mu2", p.mu2}, {"r0", p.inner_cutoff}};
      break;
    case HypothesisId::V3:
      params = {{"a1", p.a1}, {"a2", p.a2}, {"mu1", p.mu1}};
      break;
    case HypothesisId::V4:
      params = {{"A", p.A}, {"radius", p.v4_radius}};
      break;
    case HypothesisId::V3Prime:
      params = {{"outer_radius", p.outer_radius}, {"threshold", p.coercive_threshold}};
      break;
    case HypothesisId::V4Prime:
      params = {{"A", p.A}, {"a", p.a}};
      break;
  }
  j["params"] = params;
  j["samples"] = c.samples;
  j["worst_margin"] = finite_or_null(c.worst_margin);
  j["worst_point"] = c.worst_point.size() ? vec_json(c.worst_point) : json::array();
  j["pass"] = c.pass;
  if (c.id == HypothesisId::V3Prime) {
    j["shell_min_value"] = finite_or_null(c.shell_min_value);
    j["non_coercive"] = c.non_coercive;
  }
  return j;
}

json geometry_to_json(const LinkingGeometry& g) {
  json j;
  j["mode"] = to_string(g.mode);
  j["rho"] = g.rho;
  j["r1"] = g.r1;
  j["r2"] = g.r2;
  j["R"] = g.R;
  j["alpha_bound"] = g.alpha_bound;
  j["alpha_sampled"] = finite_or_null(g.alpha_sampled);
  j["beta_sampled"] = finite_or_null(g.beta_sampled);
  j["pass"] = g.pass;
  j["samples"] = g.samples;
  j["seed"] = g.seed;
  j["T"] = g.period;
  j["forced"] = g.forced;
  if (g.mode == GeometryMode::Superquadratic) {
    j["direction"] = g.direction;
    j["outer_bound"] = g.outer_bound;
  } else {
    j["x2_inf_bound"] = g.x2_inf_bound;
    j["x2_inf_sampled"] = finite_or_null(g.x2_inf_sampled);
    j["sphere_sup"] = g.sphere_sup;
    j["gap"] = g.gap;
  }
  return j;
}

json verification_to_json(const VerificationReport& r) {
  json j;
  j["aggregate"] = r.aggregate;
  j["aggregate_all_nodes"] = r.aggregate_all;
  j["max_distance"] = r.max_distance;
  j["excluded_fraction"] = r.excluded_fraction;
  j["energy_drift"] = r.energy_drift;
  j["nonconstant"] = r.nonconstant;
  j["oscillation_norm"] = r.oscillation_norm;
  j["nodes"] = static_cast<int>(r.distances.size());
  j["periodicity"] = "exact by representation (Fourier series)";
  return j;
}

json result_to_json(const SolverResult& r) {
  json j;
  j["converged"] = r.converged;
  j["stalled"] = r.stalled;
  j["c_estimate"] = r.c_estimate;
  j["iterations"] = r.history.empty() ? 0 : r.history.back().iter;
  if (!r.history.empty()) {
    j["final_measure"] = r.history.back().measure;
    j["final_minnorm"] = r.history.back().minnorm;
  }
  j["candidate_node"] = r.candidate_node;
  j["surface_family"] = r.surface_family;
  j["restart_seeds"] = r.restart_seeds;
  j["geometry"] = geometry_to_json(r.geometry);
  j["verification"] = verification_to_json(r.verification);
  j["candidate"] = trajectory_to_json(r.candidate);
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace hamincl
