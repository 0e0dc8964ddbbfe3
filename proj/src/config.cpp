#include "hamincl/config.hpp"

#include "hamincl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hamincl {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& prefix, const std::set<std::string>& known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) throw ConfigError(prefix + it.key(), "unknown key");
  }
}

const json& object_at(const json& doc, const std::string& key, const std::string& path) {
  const json& v = doc.at(key);
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  return v;
}

double get_number(const json& obj, const std::string& key, const std::string& path, double def) {
  if (!obj.contains(key)) return def;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
  return x;
}

long get_int(const json& obj, const std::string& key, const std::string& path, long def) {
  if (!obj.contains(key)) return def;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<long>();
}

std::uint64_t get_seed(const json& obj, const std::string& key, const std::string& path,
                       std::uint64_t def) {
  if (!obj.contains(key)) return def;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long>() < 0)) {
    throw ConfigError(path, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& path,
                       const std::string& def) {
  if (!obj.contains(key)) return def;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

bool get_bool(const json& obj, const std::string& key, const std::string& path, bool def) {
  if (!obj.contains(key)) return def;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  return v.get<bool>();
}

PotentialSpec parse_potential(const json& p, int n) {
  if (!p.is_object()) throw ConfigError("potential", "expected an object");
  reject_unknown(p, "potential.", {"type", "param", "pieces"});
  PotentialSpec s;
  if (!p.contains("type")) throw ConfigError("potential.type", "missing");
  s.type = get_string(p, "type", "potential.type", "");
  s.param = get_number(p, "param", "potential.param", 1.0);
  if (s.type == "polynomial") {
    if (!p.contains("pieces") || !p.at("pieces").is_array() || p.at("pieces").empty()) {
      throw ConfigError("potential.pieces", "polynomial potential needs a nonempty list of pieces");
    }
    const json& pieces = p.at("pieces");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const std::string pp = "potential.pieces[" + std::to_string(i) + "]";
      if (!pieces[i].is_array()) throw ConfigError(pp, "expected a list of terms");
      std::vector<PolynomialTerm> terms;
      for (std::size_t t = 0; t < pieces[i].size(); ++t) {
        const std::string tp = pp + "[" + std::to_string(t) + "]";
        const json& term = pieces[i][t];
        if (!term.is_object()) throw ConfigError(tp, "expected {coef, powers}");
        reject_unknown(term, tp + ".", {"coef", "powers"});
        PolynomialTerm pt;
        pt.coef = get_number(term, "coef", tp + ".coef", 0.0);
        if (!term.contains("powers") || !term.at("powers").is_array()) {
          throw ConfigError(tp + ".powers", "expected a list of integers");
        }
        for (const json& e : term.at("powers")) {
          if (!e.is_number_integer() || e.get<int>() < 0) {
            throw ConfigError(tp + ".powers", "expected nonnegative integers");
          }
          pt.powers.push_back(e.get<int>());
        }
        if (static_cast<int>(pt.powers.size()) != n) {
          throw ConfigError(tp + ".powers", "needs exactly n entries");
        }
        terms.push_back(std::move(pt));
      }
      s.pieces.push_back(std::move(terms));
    }
  } else {
    const auto names = zoo_names();
    if (std::find(names.begin(), names.end(), s.type) == names.end()) {
      throw ConfigError("potential.type", "unknown potential '" + s.type + "'");
    }
    if (p.contains("pieces")) throw ConfigError("potential.pieces", "only valid for polynomial");
  }
  return s;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
  reject_unknown(doc, "", {"potential", "T", "n", "K", "mode", "hypotheses", "certify", "geometry",
                           "solver", "verify", "threads", "output_dir", "verbosity", "force"});
  RunConfig c;
  if (!doc.contains("T")) throw ConfigError("T", "missing");
  c.T = get_number(doc, "T", "T", 0.0);
  if (!(c.T > 0.0)) throw ConfigError("T", "must be positive");
  c.n = static_cast<int>(get_int(doc, "n", "n", 1));
  if (c.n < 1 || c.n > 8) throw ConfigError("n", "must be between 1 and 8");
  c.K = static_cast<int>(get_int(doc, "K", "K", 64));
  if (c.K < 1 || c.K > 4096) throw ConfigError("K", "must be between 1 and 4096");
  if (!doc.contains("potential")) throw ConfigError("potential", "missing");
  c.potential = parse_potential(doc.at("potential"), c.n);

  const std::string mode = get_string(doc, "mode", "mode", "superquadratic");
  if (mode == "superquadratic") {
    c.mode = GeometryMode::Superquadratic;
  } else if (mode == "saddle" || mode == "subquadratic") {
    c.mode = GeometryMode::Saddle;
  } else {
    throw ConfigError("mode", "expected superquadratic or saddle");
  }

  c.hypotheses = zoo_hypotheses(c.potential.type);
  if (doc.contains("hypotheses")) {
    const json& h = object_at(doc, "hypotheses", "hypotheses");
    reject_unknown(h, "hypotheses.", {"mu1", "mu2", "a1", "a2", "A", "a", "v4_radius", "r0",
                                      "outer_radius", "coercive_threshold", "sample_radius"});
    auto& p = c.hypotheses;
    p.mu1 = get_number(h, "mu1", "hypotheses.mu1", p.mu1);
    p.mu2 = get_number(h, "mu2", "hypotheses.mu2", p.mu2);
    p.a1 = get_number(h, "a1", "hypotheses.a1", p.a1);
    p.a2 = get_number(h, "a2", "hypotheses.a2", p.a2);
    p.A = get_number(h, "A", "hypotheses.A", p.A);
    p.a = get_number(h, "a", "hypotheses.a", p.a);
    p.v4_radius = get_number(h, "v4_radius", "hypotheses.v4_radius", p.v4_radius);
    p.inner_cutoff = get_number(h, "r0", "hypotheses.r0", p.inner_cutoff);
    p.outer_radius = get_number(h, "outer_radius", "hypotheses.outer_radius", p.outer_radius);
    p.coercive_threshold =
        get_number(h, "coercive_threshold", "hypotheses.coercive_threshold", p.coercive_threshold);
    p.sample_radius = get_number(h, "sample_radius", "hypotheses.sample_radius", p.sample_radius);
  }
  if (c.mode == GeometryMode::Superquadratic && !(c.hypotheses.mu1 > 2.0)) {
    throw ConfigError("hypotheses.mu1", "superquadratic mode requires mu1 > 2");
  }
  if (c.mode == GeometryMode::Saddle && !(c.hypotheses.mu1 < 2.0)) {
    throw ConfigError("hypotheses.mu1", "saddle mode requires mu1 < 2");
  }
  if (!(c.hypotheses.A > 0.0)) throw ConfigError("hypotheses.A", "must be positive");

  if (doc.contains("certify")) {
    const json& s = object_at(doc, "certify", "certify");
    reject_unknown(s, "certify.", {"samples", "seed"});
    c.certify_sampler.count = static_cast<int>(get_int(s, "samples", "certify.samples", 2000));
    if (c.certify_sampler.count < 1) throw ConfigError("certify.samples", "must be >= 1");
    c.certify_sampler.seed = get_seed(s, "seed", "certify.seed", c.certify_sampler.seed);
  }

  c.force = get_bool(doc, "force", "force", false);
  if (doc.contains("geometry")) {
    const json& g = object_at(doc, "geometry", "geometry");
    reject_unknown(g, "geometry.", {"direction", "R", "samples", "seed", "descent_starts"});
    c.geometry.direction = get_string(g, "direction", "geometry.direction", "first_harmonic");
    if (c.geometry.direction != "first_harmonic" && c.geometry.direction != "circular") {
      throw ConfigError("geometry.direction", "expected first_harmonic or circular");
    }
    if (c.geometry.direction == "circular" && c.n < 2) {
      throw ConfigError("geometry.direction", "circular needs n >= 2");
    }
    c.geometry.R = get_number(g, "R", "geometry.R", 0.0);
    if (c.geometry.R < 0.0) throw ConfigError("geometry.R", "must be nonnegative");
    c.linking_samples = static_cast<int>(get_int(g, "samples", "geometry.samples", 400));
    if (c.linking_samples < 1) throw ConfigError("geometry.samples", "must be >= 1");
    c.geometry.seed = get_seed(g, "seed", "geometry.seed", c.geometry.seed);
    c.geometry.descent_starts =
        static_cast<int>(get_int(g, "descent_starts", "geometry.descent_starts", 4));
    if (c.geometry.descent_starts < 1) throw ConfigError("geometry.descent_starts", "must be >= 1");
  }
  c.geometry.samples = c.linking_samples;
  c.geometry.force = c.force;

  if (doc.contains("solver")) {
    const json& s = object_at(doc, "solver", "solver");
    reject_unknown(s, "solver.", {"grid", "tol_conv", "max_iters", "seed", "eta", "restarts",
                                  "line_search", "peak_iters"});
    auto& v = c.solver;
    v.grid = static_cast<int>(get_int(s, "grid", "solver.grid", v.grid));
    if (v.grid < 3) throw ConfigError("solver.grid", "must be >= 3");
    v.tol_conv = get_number(s, "tol_conv", "solver.tol_conv", v.tol_conv);
    if (!(v.tol_conv > 0.0)) throw ConfigError("solver.tol_conv", "must be positive");
    v.max_iters = static_cast<int>(get_int(s, "max_iters", "solver.max_iters", v.max_iters));
    if (v.max_iters < 1) throw ConfigError("solver.max_iters", "must be >= 1");
    v.seed = get_seed(s, "seed", "solver.seed", v.seed);
    v.eta = get_number(s, "eta", "solver.eta", v.eta);
    if (v.eta < 0.0 || v.eta > 1.0) throw ConfigError("solver.eta", "must lie in [0, 1]");
    v.restarts = static_cast<int>(get_int(s, "restarts", "solver.restarts", v.restarts));
    if (v.restarts < 0) throw ConfigError("solver.restarts", "must be >= 0");
    v.peak_iters = static_cast<int>(get_int(s, "peak_iters", "solver.peak_iters", v.peak_iters));
    if (s.contains("line_search")) {
      const json& l = object_at(s, "line_search", "solver.line_search");
      reject_unknown(l, "solver.line_search.", {"sigma", "max_halvings", "initial_step"});
      auto& ls = v.line_search;
      ls.sigma = get_number(l, "sigma", "solver.line_search.sigma", ls.sigma);
      if (!(ls.sigma > 0.0 && ls.sigma < 1.0)) {
        throw ConfigError("solver.line_search.sigma", "must lie in (0, 1)");
      }
      ls.max_halvings = static_cast<int>(
          get_int(l, "max_halvings", "solver.line_search.max_halvings", ls.max_halvings));
      if (ls.max_halvings < 0) throw ConfigError("solver.line_search.max_halvings", "must be >= 0");
      ls.initial_step = get_number(l, "initial_step", "solver.line_search.initial_step", ls.initial_step);
      if (!(ls.initial_step > 0.0)) {
        throw ConfigError("solver.line_search.initial_step", "must be positive");
      }
    }
  }

  if (doc.contains("verify")) {
    const json& v = object_at(doc, "verify", "verify");
    reject_unknown(v, "verify.", {"threshold", "tol_active"});
    c.verify_threshold = get_number(v, "threshold", "verify.threshold", c.verify_threshold);
    if (!(c.verify_threshold > 0.0)) throw ConfigError("verify.threshold", "must be positive");
    c.solver.verify.tol_active = get_number(v, "tol_active", "verify.tol_active", 1e-8);
    if (!(c.solver.verify.tol_active >= 0.0)) throw ConfigError("verify.tol_active", "must be >= 0");
  }

  c.threads = static_cast<int>(get_int(doc, "threads", "threads", 0));
  if (c.threads < 0) throw ConfigError("threads", "must be >= 0");
  c.output_dir = get_string(doc, "output_dir", "output_dir", "out");
  c.verbosity = static_cast<int>(get_int(doc, "verbosity", "verbosity", 1));
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, std::string("invalid JSON: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) { return parse_config(read_json_file(path)); }

PotentialModel build_potential(const RunConfig& cfg) {
  if (cfg.potential.type == "polynomial") {
    std::vector<SmoothPiece> pieces;
    for (const auto& terms : cfg.potential.pieces) pieces.push_back(polynomial_piece(cfg.n, terms));
    if (pieces.size() == 1) return PotentialModel::smooth(cfg.n, pieces.front(), "polynomial");
    return PotentialModel::piecewise_max(cfg.n, std::move(pieces), "polynomial");
  }
  try {
    return make_zoo(cfg.potential.type, cfg.n, cfg.potential.param);
  } catch (const DimensionError& e) {
    throw ConfigError("n", e.what());
  }
}

}  // namespace hamincl
