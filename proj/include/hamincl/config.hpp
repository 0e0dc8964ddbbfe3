#pragma once

#include "hamincl/linking.hpp"
#include "hamincl/potential.hpp"
#include "hamincl/solver.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hamincl {

struct PotentialSpec {
  std::string type = "quartic";
  double param = 1.0;
  std::vector<std::vector<PolynomialTerm>> pieces;  ///< type "polynomial"
};

struct RunConfig {
  PotentialSpec potential;
  double T = 0.0;
  int n = 1;
  int K = 64;
  GeometryMode mode = GeometryMode::Superquadratic;
  HypothesisParams hypotheses;
  SamplerSpec certify_sampler;
  CalibrationOptions geometry;
  int linking_samples = 400;
  SolverConfig solver;
  double verify_threshold = 1e-5;
  int threads = 0;
  std::string output_dir = "out";
  int verbosity = 1;
  bool force = false;
};

/// Validates and converts a config document.  Throws ConfigError naming the
/// offending key.  Unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
nlohmann::json read_json_file(const std::string& path);

PotentialModel build_potential(const RunConfig& cfg);

}  // namespace hamincl
