#include "hamincl/cli.hpp"
#include "hamincl/io.hpp"
#include "hamincl/verify.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace hamincl;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("hamincl_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string(HAMINCL_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json quartic_config(const fs::path& out, int K = 16) {
  json c = json::parse(R"({
    "potential": {"type": "quartic"}, "T": 6.283185307179586, "n": 1,
    "mode": "superquadratic",
    "hypotheses": {"mu1": 4.0, "mu2": 0.0, "a1": 0.25, "a2": 0.0, "A": 0.25, "v4_radius": 1.0},
    "certify": {"samples": 500}, "verbosity": 0})");
  c["K"] = K;
  c["output_dir"] = out.string();
  return c;
}

}  // namespace

TEST_CASE("certify exit codes") {
  const auto dir = scratch("certify");
  put(dir / "q.json", quartic_config(dir / "out").dump());
  CHECK(run_cli("certify -c " + (dir / "q.json").string(), dir / "log") == 0);
  CHECK(fs::exists(dir / "out" / "certificates.json"));

  json bad = quartic_config(dir / "out");
  bad["hypotheses"]["mu1"] = 1.5;
  put(dir / "bad.json", bad.dump());
  CHECK(run_cli("certify -c " + (dir / "bad.json").string(), dir / "log") == 2);
  CHECK(slurp(dir / "log").find("hypotheses.mu1") != std::string::npos);

  json b = json::parse(R"({"potential": {"type": "bounded"}, "T": 1.0, "n": 1, "K": 8,
    "mode": "saddle", "hypotheses": {"mu1": 1.5, "mu2": 0.1, "A": 1.0, "a": 1.0},
    "certify": {"samples": 300}})");
  b["output_dir"] = (dir / "bounded").string();
  put(dir / "b.json", b.dump());
  CHECK(run_cli("certify -c " + (dir / "b.json").string(), dir / "log") == 1);
  const json cert = json::parse(slurp(dir / "bounded" / "certificates.json"));
  CHECK(cert["non_coercive"] == true);
}

TEST_CASE("solve refuses above the period threshold") {
  const auto dir = scratch("threshold");
  json c = json::parse(R"({"potential": {"type": "maxpair"}, "T": 10.0, "n": 1, "K": 8,
    "hypotheses": {"mu1": 4.0, "a1": 1.0, "A": 1.0}, "verbosity": 0})");
  c["output_dir"] = (dir / "out").string();
  put(dir / "c.json", c.dump());
  CHECK(run_cli("solve -c " + (dir / "c.json").string(), dir / "log") == 3);
  CHECK(slurp(dir / "log").find("4.44") != std::string::npos);

  // the flag overrides the file
  c["T"] = 2.0;
  put(dir / "c2.json", c.dump());
  CHECK(run_cli("calibrate -c " + (dir / "c2.json").string(), dir / "log") == 0);
  CHECK(run_cli("calibrate -c " + (dir / "c2.json").string() + " --T 10", dir / "log") == 3);
}

TEST_CASE("verify exit codes") {
  const auto dir = scratch("verify");
  json c = quartic_config(dir / "out", 24);
  put(dir / "q.json", c.dump());

  Vec q0(1), p0(1);
  q0 << 7.416298709205487 / (2 * std::numbers::pi);
  p0 << 0.0;
  const auto orbit = shooting_oracle(make_zoo("quartic", 1), 2 * std::numbers::pi, q0, p0, 24);
  put(dir / "orbit.json", trajectory_to_json(orbit.orbit).dump());
  CHECK(run_cli("verify -c " + (dir / "q.json").string() + " -t " + (dir / "orbit.json").string(),
                dir / "log") == 0);
  CHECK(fs::exists(dir / "out" / "distances.csv"));

  const auto h = PeriodicTrajectory::harmonic(2 * std::numbers::pi, 1, 24, 1, 0, true);
  put(dir / "harm.json", trajectory_to_json(h).dump());
  CHECK(run_cli("verify -c " + (dir / "q.json").string() + " -t " + (dir / "harm.json").string(),
                dir / "log") == 1);

  put(dir / "broken.json", "{\"T\": 6.28, \"n\": 1, \"K\": ");
  CHECK(run_cli("verify -c " + (dir / "q.json").string() + " -t " + (dir / "broken.json").string(),
                dir / "log") == 2);
  put(dir / "short.json", R"({"T": 6.28, "n": 1, "K": 3, "a0": [0], "a": [[1]], "b": [[0]]})");
  CHECK(run_cli("verify -c " + (dir / "q.json").string() + " -t " + (dir / "short.json").string(),
                dir / "log") == 2);
}

TEST_CASE("input errors") {
  const auto dir = scratch("input");
  CHECK(run_cli("certify -c " + (dir / "missing.json").string(), dir / "log") == 2);
  CHECK(run_cli("frobnicate", dir / "log") == 2);
  put(dir / "q.json", quartic_config(dir / "out").dump());
  CHECK(run_cli("certify -c " + (dir / "q.json").string() + " --no-such-flag", dir / "log") == 2);
  json c = quartic_config(dir / "out");
  c["solver"] = {{"gird", 9}};
  put(dir / "typo.json", c.dump());
  CHECK(run_cli("solve -c " + (dir / "typo.json").string(), dir / "log") == 2);
  CHECK(slurp(dir / "log").find("solver.gird") != std::string::npos);
}

TEST_CASE("solve writes deterministic artifacts") {
  const auto dir = scratch("solve");
  put(dir / "a.json", quartic_config(dir / "a").dump());
  put(dir / "b.json", quartic_config(dir / "b").dump());
  CHECK(run_cli("solve -c " + (dir / "a.json").string(), dir / "log") == 0);
  CHECK(run_cli("solve -c " + (dir / "b.json").string() + " --threads 1", dir / "log") == 0);
  for (const char* f : {"result.json", "trajectory.csv", "cerami.csv", "certificates.json",
                        "trajectory.json"}) {
    CHECK_MESSAGE(fs::exists(dir / "a" / f), f);
    CHECK_MESSAGE(slurp(dir / "a" / f) == slurp(dir / "b" / f), f);
  }
  CHECK(fs::exists(dir / "a" / "metadata.json"));
  const json r = json::parse(slurp(dir / "a" / "result.json"));
  CHECK(r["converged"] == true);
  CHECK(slurp(dir / "a" / "cerami.csv").rfind("iter,f,h1norm,minnorm,measure\n", 0) == 0);
  CHECK(slurp(dir / "a" / "trajectory.csv").rfind("t,q_1,qdot_1\n", 0) == 0);

  // the written trajectory verifies on its own
  CHECK(run_cli("verify -c " + (dir / "a.json").string() + " -t " +
                    (dir / "a" / "trajectory.json").string(),
                dir / "log") == 0);
}
