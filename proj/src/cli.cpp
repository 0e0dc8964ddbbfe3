#include "hamincl/cli.hpp"

#include "hamincl/errors.hpp"
#include "hamincl/io.hpp"
#include "hamincl/kernels.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace hamincl::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::vector<HypothesisId> hypotheses_for(GeometryMode mode) {
  if (mode == GeometryMode::Superquadratic) {
    return {HypothesisId::V2, HypothesisId::V3, HypothesisId::V4};
  }
  return {HypothesisId::V2Prime, HypothesisId::V3Prime, HypothesisId::V4Prime};
}

void prepare(const RunConfig& cfg) {
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  fs::create_directories(cfg.output_dir);
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (fs::path(cfg.output_dir) / name).string();
}

void write_metadata(const RunConfig& cfg, const std::string& command, double seconds) {
  json m;
  const std::time_t now = std::time(nullptr);
  char stamp[64];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  m["command"] = command;
  m["timestamp"] = stamp;
  m["elapsed_seconds"] = seconds;
  m["threads"] = omp_get_max_threads();
  write_json(out_path(cfg, "metadata.json"), m);
}

struct CertifyOutcome {
  json doc = json::array();
  bool all_pass = true;
  bool non_coercive = false;
};

CertifyOutcome run_certifiers(const RunConfig& cfg, const PotentialModel& model, std::ostream& log) {
  CertifyOutcome o;
  for (auto id : hypotheses_for(cfg.mode)) {
    const auto c = certify(model, id, cfg.hypotheses, cfg.certify_sampler);
    o.doc.push_back(certificate_to_json(c));
    o.all_pass = o.all_pass && c.pass;
    o.non_coercive = o.non_coercive || c.non_coercive;
    if (cfg.verbosity > 0) {
      log << "  " << to_string(id) << ": " << (c.pass ? "pass" : "FAIL") << " (worst margin "
          << format_double(c.worst_margin) << ", " << c.samples << " samples)\n";
    }
  }
  return o;
}

LinkingGeometry calibrate(const RunConfig& cfg, const PotentialModel& model) {
  if (cfg.mode == GeometryMode::Superquadratic) {
    auto g = calibrate_superquadratic(model, cfg.hypotheses, cfg.T, cfg.K, cfg.geometry);
    certify_linking(g, model, cfg.linking_samples, cfg.geometry.seed);
    return g;
  }
  return calibrate_saddle(model, cfg.hypotheses, cfg.T, cfg.K, cfg.geometry);
}

template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const InfeasibleGeometry& e) {
    log << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const NonCoerciveError& e) {
    log << "certified negative: " << e.what() << " (last R = " << format_double(e.last_radius())
        << ", gap = " << format_double(e.last_gap()) << ")\n";
    return kNegative;
  } catch (const CertificateRefused& e) {
    log << "refused: " << e.what() << "\n";
    return kNegative;
  } catch (const ConfigError& e) {
    log << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParameterError& e) {
    log << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DimensionError& e) {
    log << "input error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace

int cmd_certify(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&]() -> int {
    prepare(cfg);
    const auto model = build_potential(cfg);
    if (cfg.verbosity > 0) log << "certifying " << cfg.potential.type << " (" << to_string(cfg.mode) << ")\n";
    const auto o = run_certifiers(cfg, model, log);
    json doc;
    doc["mode"] = to_string(cfg.mode);
    doc["hypotheses"] = o.doc;
    doc["all_pass"] = o.all_pass;
    doc["non_coercive"] = o.non_coercive;
    doc["seed"] = cfg.certify_sampler.seed;
    write_json(out_path(cfg, "certificates.json"), doc);
    if (o.non_coercive) log << "potential is not coercive on the sampled shell\n";
    return o.all_pass ? kSuccess : kNegative;
  });
}

int cmd_calibrate(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&]() -> int {
    prepare(cfg);
    const auto model = build_potential(cfg);
    const auto g = calibrate(cfg, model);
    json doc;
    doc["geometry"] = geometry_to_json(g);
    write_json(out_path(cfg, "certificates.json"), doc);
    if (cfg.verbosity > 0) {
      log << "geometry " << to_string(g.mode) << ": alpha_sampled " << format_double(g.alpha_sampled)
          << ", beta_sampled " << format_double(g.beta_sampled) << ", "
          << (g.pass ? "pass" : "FAIL") << "\n";
    }
    return g.pass ? kSuccess : kNegative;
  });
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&]() -> int {
    const auto t0 = std::chrono::steady_clock::now();
    prepare(cfg);
    const auto model = build_potential(cfg);
    if (cfg.verbosity > 0) log << "hypotheses:\n";
    const auto o = run_certifiers(cfg, model, log);
    json certs;
    certs["mode"] = to_string(cfg.mode);
    certs["hypotheses"] = o.doc;
    certs["all_pass"] = o.all_pass;
    if (!o.all_pass && !cfg.force) {
      write_json(out_path(cfg, "certificates.json"), certs);
      log << "refused: hypothesis certificates failed (use --force to override)\n";
      return static_cast<int>(kNegative);
    }
    const auto g = calibrate(cfg, model);
    certs["geometry"] = geometry_to_json(g);
    write_json(out_path(cfg, "certificates.json"), certs);
    if (cfg.verbosity > 0) {
      log << "geometry: alpha_sampled " << format_double(g.alpha_sampled) << ", beta_sampled "
          << format_double(g.beta_sampled) << "\n";
    }

    SolverConfig sc = cfg.solver;
    const SolverResult r = cfg.mode == GeometryMode::Superquadratic ? run_minimax(model, g, sc)
                                                                     : run_saddle(model, g, sc);
    json result = result_to_json(r);
    result["potential"] = cfg.potential.type;
    result["verify_threshold"] = cfg.verify_threshold;
    const bool ok = r.converged && r.verification.aggregate < cfg.verify_threshold &&
                    (cfg.mode == GeometryMode::Saddle || r.verification.nonconstant);
    result["success"] = ok;
    write_json(out_path(cfg, "result.json"), result);
    write_json(out_path(cfg, "trajectory.json"), trajectory_to_json(r.candidate));
    write_text(out_path(cfg, "trajectory.csv"), trajectory_csv(r.candidate));
    write_text(out_path(cfg, "cerami.csv"), cerami_csv(r.history));
    write_metadata(cfg, "solve",
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    if (cfg.verbosity > 0) {
      log << "run: converged " << (r.converged ? "yes" : "no") << ", c = " << format_double(r.c_estimate)
          << ", measure " << format_double(r.history.empty() ? 0.0 : r.history.back().measure)
          << ", residual " << format_double(r.verification.aggregate) << ", excluded "
          << format_double(r.verification.excluded_fraction) << "\n";
    }
    return ok ? kSuccess : kNegative;
  });
}

int cmd_verify(const std::string& path, const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&]() -> int {
    prepare(cfg);
    const auto model = build_potential(cfg);
    const PeriodicTrajectory q = trajectory_from_json(read_json_file(path));
    if (q.dim() != model.dim()) throw ConfigError("n", "trajectory dimension differs from config");
    VerifyOptions vo = cfg.solver.verify;
    const auto rep = inclusion_residual(q, model, vo);
    json doc = verification_to_json(rep);
    doc["threshold"] = cfg.verify_threshold;
    doc["pass"] = rep.aggregate < cfg.verify_threshold;
    write_json(out_path(cfg, "verify.json"), doc);
    write_text(out_path(cfg, "distances.csv"), distances_csv(rep));
    if (cfg.verbosity > 0) {
      log << "inclusion residual " << format_double(rep.aggregate) << " (threshold "
          << format_double(cfg.verify_threshold) << "), energy drift "
          << format_double(rep.energy_drift) << "\n";
    }
    return rep.aggregate < cfg.verify_threshold ? kSuccess : kNegative;
  });
}

int cmd_bench(const RunConfig& cfg, std::ostream& log, int repeats) {
  return guarded(log, [&]() -> int {
    prepare(cfg);
    const auto model = build_potential(cfg);
    PeriodicTrajectory q(cfg.T, cfg.n, cfg.K);
    for (int i = 0; i < cfg.n; ++i) q.set_sin(i, 1, 1.0 + 0.1 * i);
    const int M = quadrature_nodes(cfg.K);
    const Mat x = sample(q, M);
    const Mat y = sample(derivative(derivative(q)), M);
    std::vector<PeriodicTrajectory> batch(64, q);
    for (int i = 0; i < 64; ++i) batch[i] *= 0.5 + i / 64.0;

    using clock = std::chrono::steady_clock;
    auto time_it = [&](auto&& f) {
      double best = 1e300;
      for (int r = 0; r < repeats; ++r) {
        const auto t0 = clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(clock::now() - t0).count());
      }
      return best;
    };
    const auto ss = kernels::select_nodes_serial(model, x, y, 1e-7, 1e-7);
    const auto sp = kernels::select_nodes_parallel(model, x, y, 1e-7, 1e-7);
    const Vec as = kernels::action_values_serial(batch, model);
    const Vec ap = kernels::action_values_parallel(batch, model);
    json doc;
    doc["threads"] = omp_get_max_threads();
    doc["nodes"] = M;
    doc["select_serial_s"] = time_it([&] { kernels::select_nodes_serial(model, x, y, 1e-7, 1e-7); });
    doc["select_parallel_s"] = time_it([&] { kernels::select_nodes_parallel(model, x, y, 1e-7, 1e-7); });
    doc["action_serial_s"] = time_it([&] { kernels::action_values_serial(batch, model); });
    doc["action_parallel_s"] = time_it([&] { kernels::action_values_parallel(batch, model); });
    doc["identical"] = ss.selection == sp.selection && as == ap;
    write_json(out_path(cfg, "bench.json"), doc);
    log << doc.dump(2) << "\n";
    return doc["identical"].get<bool>() ? kSuccess : kNegative;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Periodic solutions of 0 in q'' + dV(q) by nonsmooth minimax"};
  app.require_subcommand(1);

  std::string config_path, trajectory_path, output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads, K, grid, max_iters, verbosity, repeats;
  std::optional<double> T, tol_conv;
  bool force = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "config JSON")->required();
    sub->add_option("-o,--output-dir", output_dir, "output directory (overrides output_dir)");
    sub->add_option("--seed", seed, "overrides solver.seed");
    sub->add_option("--threads", threads, "OpenMP threads (overrides threads)");
    sub->add_option("--T", T, "overrides T");
    sub->add_option("--K", K, "overrides K");
    sub->add_option("--grid", grid, "overrides solver.grid");
    sub->add_option("--max-iters", max_iters, "overrides solver.max_iters");
    sub->add_option("--tol-conv", tol_conv, "overrides solver.tol_conv");
    sub->add_option("--verbosity", verbosity, "overrides verbosity");
    sub->add_flag("--force", force, "skip hypothesis and threshold refusals");
  };
  auto* c_cert = app.add_subcommand("certify", "check the growth hypotheses by sampling");
  auto* c_cal = app.add_subcommand("calibrate", "build and certify the minimax geometry");
  auto* c_solve = app.add_subcommand("solve", "certify, calibrate, run and verify");
  auto* c_ver = app.add_subcommand("verify", "verify a trajectory JSON against the inclusion");
  auto* c_bench = app.add_subcommand("bench", "time serial and parallel kernels");
  for (auto* s : {c_cert, c_cal, c_solve, c_ver, c_bench}) add_common(s);
  c_ver->add_option("-t,--trajectory", trajectory_path, "trajectory JSON")->required();
  c_bench->add_option("--repeats", repeats, "timing repeats");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    log << "input error: " << e.what() << "\n";
    return kInputError;
  }

  RunConfig cfg;
  try {
    json doc = read_json_file(config_path);
    if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
    if (!output_dir.empty()) doc["output_dir"] = output_dir;
    if (seed) doc["solver"]["seed"] = *seed;
    if (threads) doc["threads"] = *threads;
    if (T) doc["T"] = *T;
    if (K) doc["K"] = *K;
    if (grid) doc["solver"]["grid"] = *grid;
    if (max_iters) doc["solver"]["max_iters"] = *max_iters;
    if (tol_conv) doc["solver"]["tol_conv"] = *tol_conv;
    if (verbosity) doc["verbosity"] = *verbosity;
    if (force) doc["force"] = true;
    cfg = parse_config(doc);
  } catch (const ConfigError& e) {
    log << "input error: " << e.what() << "\n";
    return kInputError;
  }

  if (c_cert->parsed()) return cmd_certify(cfg, log);
  if (c_cal->parsed()) return cmd_calibrate(cfg, log);
  if (c_solve->parsed()) return cmd_solve(cfg, log);
  if (c_ver->parsed()) return cmd_verify(trajectory_path, cfg, log);
  return cmd_bench(cfg, log, repeats.value_or(5));
}

}  // namespace hamincl::cli
