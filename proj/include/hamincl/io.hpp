#pragma once

#include "hamincl/action.hpp"
#include "hamincl/linking.hpp"
#include "hamincl/potential.hpp"
#include "hamincl/solver.hpp"
#include "hamincl/verify.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hamincl {

/// {T, n, K, a0, a[], b[]}; a and b hold K vectors of length n.
nlohmann::json trajectory_to_json(const PeriodicTrajectory& q);
/// Throws ConfigError naming the bad field.
PeriodicTrajectory trajectory_from_json(const nlohmann::json& j);

/// Columns t, q_1..q_n, qdot_1..qdot_n on the quadrature grid (or `nodes`).
std::string trajectory_csv(const PeriodicTrajectory& q, int nodes = 0);
/// Columns iter, f, h1norm, minnorm, measure.
std::string cerami_csv(const std::vector<CeramiRecord>& records);
/// Columns t, dist, active_count.
std::string distances_csv(const VerificationReport& r);

nlohmann::json certificate_to_json(const HypothesisCertificate& c);
nlohmann::json geometry_to_json(const LinkingGeometry& g);
nlohmann::json verification_to_json(const VerificationReport& r);
nlohmann::json result_to_json(const SolverResult& r);

std::string format_double(double x);
void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace hamincl
