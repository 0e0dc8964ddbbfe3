#include "hamincl/solver.hpp"

#include "hamincl/errors.hpp"
#include "hamincl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hamincl {

int Surface::argmax() const {
  return kernels::argmax_lowest(Eigen::Map<const Vec>(values.data(), static_cast<int>(values.size())));
}

double Surface::max_value() const { return values[argmax()]; }

namespace {

Vec evaluate_nodes(const std::vector<PeriodicTrajectory>& loops, const PotentialModel& model,
                   bool parallel) {
  return parallel ? kernels::action_values_parallel(loops, model)
                  : kernels::action_values_serial(loops, model);
}

// Cube [-1,1]^n onto the ball of radius r; the cube boundary lands on the sphere.
Vec cube_to_ball(const Vec& u, double r) {
  const double n2 = u.norm();
  if (n2 == 0.0) return Vec::Zero(u.size());
  return (r * u.cwiseAbs().maxCoeff() / n2) * u;
}

}  // namespace

Surface init_surface(const LinkingGeometry& geom, int grid) {
  if (grid < 3) throw PreconditionError("surface resolution must be >= 3 per axis");
  Surface s;
  s.mode = geom.mode;
  s.grid = grid;
  const bool linking = geom.mode == GeometryMode::Superquadratic;
  const int n = geom.dim;
  s.axes = linking ? n + 1 : n;
  long total = 1;
  for (int i = 0; i < s.axes; ++i) total *= grid;
  if (total > 200000) throw PreconditionError("surface grid too large for this dimension");

  const double radius = linking ? geom.r1 : geom.R;
  std::vector<int> digits(s.axes);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    for (int a = s.axes - 1; a >= 0; --a) {
      digits[a] = static_cast<int>(rem % grid);
      rem /= grid;
    }
    bool pin = false;
    Vec u(n);
    for (int i = 0; i < n; ++i) {
      u[i] = -1.0 + 2.0 * digits[i] / (grid - 1);
      pin = pin || digits[i] == 0 || digits[i] == grid - 1;
    }
    const Vec x1 = cube_to_ball(u, radius);
    Vec param(s.axes);
    param.head(n) = x1;
    PeriodicTrajectory q = PeriodicTrajectory::constant(geom.period, geom.modes, x1);
    if (linking) {
      const int ds = digits[n];
      pin = pin || ds == 0 || ds == grid - 1;
      const double sv = geom.r2 * ds / (grid - 1);
      param[n] = sv;
      if (ds > 0) q += sv * geom.e;
    } else if (!pin) {
      q += (1.0 - x1.squaredNorm() / (radius * radius)) * geom.x2_seed;
    }
    s.params.push_back(param);
    s.nodes.push_back(std::move(q));
    s.pinned.push_back(pin);
  }
  s.peaked.assign(total, false);
  s.values.assign(total, 0.0);

  s.neighbours.resize(total);
  long offsets = 1;
  for (int i = 0; i < s.axes; ++i) offsets *= 3;
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    for (int a = s.axes - 1; a >= 0; --a) {
      digits[a] = static_cast<int>(rem % grid);
      rem /= grid;
    }
    for (long o = 0; o < offsets; ++o) {
      long code = o, nb = 0;
      bool ok = true, self = true;
      for (int a = 0; a < s.axes; ++a) {
        const int d = static_cast<int>(code % 3) - 1;
        code /= 3;
        self = self && d == 0;
        const int v = digits[a] + d;
        ok = ok && v >= 0 && v < grid;
      }
      if (!ok || self) continue;
      code = o;
      std::vector<int> nd(s.axes);
      for (int a = 0; a < s.axes; ++a) {
        nd[a] = digits[a] + static_cast<int>(code % 3) - 1;
        code /= 3;
      }
      for (int a = 0; a < s.axes; ++a) nb = nb * grid + nd[a];
      s.neighbours[idx].push_back(static_cast<int>(nb));
    }
    std::sort(s.neighbours[idx].begin(), s.neighbours[idx].end());
  }
  return s;
}

PeriodicTrajectory peak_align(const PeriodicTrajectory& q, const PotentialModel& model, bool saddle,
                              int iters, const GradientOptions& opts) {
  std::vector<PeriodicTrajectory> frame;
  for (int i = 0; i < q.dim(); ++i) {
    Vec c = Vec::Zero(q.dim());
    c[i] = 1.0;
    frame.push_back(PeriodicTrajectory::constant(q.period(), q.modes(), c));
  }
  if (!saddle) {
    PeriodicTrajectory osc = split(q).oscillation;
    if (!osc.is_zero()) frame.push_back(std::move(osc));
  }
  const int m = static_cast<int>(frame.size());
  auto point = [&](const Vec& y) {
    PeriodicTrajectory p = q;
    for (int i = 0; i < m; ++i) {
      if (y[i] != 0.0) p += y[i] * frame[i];
    }
    return p;
  };
  auto frame_gradient = [&](const Vec& y) {
    const auto g = min_norm_subgradient(point(y), model, Metric::L2, opts);
    Vec out(m);
    for (int i = 0; i < m; ++i) out[i] = l2_inner(g.residual, frame[i]);
    return out;
  };

  Vec y = Vec::Zero(m);
  double f0 = action_value(q, model);
  for (int it = 0; it < iters; ++it) {
    const Vec g = frame_gradient(y);
    if (g.norm() < 1e-13) break;
    constexpr double h = 1e-6;
    Mat H(m, m);
    for (int i = 0; i < m; ++i) {
      Vec yp = y, ym = y;
      yp[i] += h;
      ym[i] -= h;
      H.col(i) = (frame_gradient(yp) - frame_gradient(ym)) / (2.0 * h);
    }
    H = 0.5 * (H + H.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> eig(H);
    Vec step = 0.1 * g;
    if (eig.info() == Eigen::Success && eig.eigenvalues().maxCoeff() < 0.0) {
      step = -H.ldlt().solve(g);
    }
    double t = 1.0;
    double ft = action_value(point(y + t * step), model);
    while (ft < f0 - 1e-14 * std::abs(f0) && t > 1e-8) {
      t *= 0.5;
      ft = action_value(point(y + t * step), model);
    }
    if (ft < f0 - 1e-14 * std::abs(f0)) break;
    y += t * step;
    f0 = ft;
  }
  return point(y);
}

namespace {

const ActionGradient& gradient_at(Surface& s, int k, const PotentialModel& model,
                                  const SolverConfig& cfg, StepState& state) {
  if (state.grad_node != k || !state.grad) {
    GradientOptions opts = cfg.gradient;
    opts.parallel = cfg.parallel;
    state.grad = min_norm_subgradient(s.nodes[k], model, Metric::H1Precond, opts);
    state.grad_node = k;
    state.measure = (1.0 + h1_norm(s.nodes[k])) * state.grad->l2_norm;
  }
  return *state.grad;
}

}  // namespace

CeramiRecord deform_step(Surface& s, const PotentialModel& model, const SolverConfig& cfg,
                         StepState& state, int iter) {
  const bool saddle = s.mode == GeometryMode::Saddle;
  const int k = s.argmax();
  const ActionGradient& g = gradient_at(s, k, model, cfg, state);
  const double measure = state.measure;
  if (measure < cfg.tol_conv) {
    return make_record(s.nodes[k], s.values[k], g.l2_norm, iter);
  }
  if (s.pinned[k]) {
    throw StallError("maximum of the surface sits on the pinned boundary", k, s.values[k], measure);
  }

  const PeriodicTrajectory q = s.nodes[k];
  const double fq = s.values[k];
  const PeriodicTrajectory d = g.direction;
  const double nd = g.h1_precond_norm * g.h1_precond_norm;
  GradientOptions popts = cfg.gradient;
  popts.parallel = cfg.parallel;

  double tau = std::min(cfg.line_search.initial_step, 2.0 * state.tau);
  bool accepted = false;
  PeriodicTrajectory trial = q;
  double ft = fq;
  for (int h = 0; h <= cfg.line_search.max_halvings; ++h) {
    trial = q + tau * d;
    if (s.peaked[k]) trial = peak_align(trial, model, saddle, cfg.peak_iters, popts);
    ft = action_value(trial, model);
    if (ft <= fq - cfg.line_search.sigma * tau * nd) {
      accepted = true;
      break;
    }
    tau *= 0.5;
  }
  if (!accepted) {
    std::ostringstream os;
    os.precision(17);
    os << "line search exhausted at node " << k << " (f = " << fq << ", measure = " << measure
       << ")";
    throw StallError(os.str(), k, fq, measure);
  }
  state.tau = tau;
  ++state.steps;

  const PeriodicTrajectory disp = trial - q;
  s.nodes[k] = trial;
  s.values[k] = ft;
  state.grad_node = -1;

  // peak shaving: move the unpinned ring-1 neighbours part of the way
  if (cfg.eta > 0.0) {
    std::vector<int> targets;
    std::vector<PeriodicTrajectory> moved;
    for (int j : s.neighbours[k]) {
      if (s.pinned[j]) continue;
      targets.push_back(j);
      moved.push_back(s.nodes[j] + cfg.eta * disp);
    }
    const Vec fv = evaluate_nodes(moved, model, cfg.parallel);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (fv[i] <= fq) {
        s.nodes[targets[i]] = std::move(moved[i]);
        s.values[targets[i]] = fv[i];
        s.peaked[targets[i]] = false;
      }
    }
  }

  const int k2 = s.argmax();
  const ActionGradient& g2 = gradient_at(s, k2, model, cfg, state);
  return make_record(s.nodes[k2], s.values[k2], g2.l2_norm, iter);
}

namespace {

PeriodicTrajectory noise(const PeriodicTrajectory& like, double size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  PeriodicTrajectory h(like.period(), like.dim(), like.modes());
  for (int k = 1; k <= std::min(4, like.modes()); ++k) {
    for (int i = 0; i < like.dim(); ++i) {
      h.set_cos(i, k, normal(rng) / k);
      h.set_sin(i, k, normal(rng) / k);
    }
  }
  return (size / std::sqrt(kinetic_energy2(h))) * h;
}

SolverResult run_engine(const PotentialModel& model, const LinkingGeometry& geom,
                        const SolverConfig& cfg) {
  const bool saddle = geom.mode == GeometryMode::Saddle;
  if (!geom.pass) {
    std::ostringstream os;
    os.precision(17);
    if (saddle) {
      os << "saddle geometry certificate failed (gap = " << geom.gap << ")";
    } else {
      os << "linking geometry certificate failed (alpha_sampled = " << geom.alpha_sampled
         << ", beta_sampled = " << geom.beta_sampled << ")";
    }
    throw CertificateRefused(os.str());
  }
  if (geom.dim != model.dim()) throw DimensionError("geometry and potential dimensions differ");

  SolverResult res;
  res.geometry = geom;
  Surface s = init_surface(geom, cfg.grid);
  const Vec v0 = evaluate_nodes(s.nodes, model, cfg.parallel);
  for (int i = 0; i < s.size(); ++i) s.values[i] = v0[i];

  GradientOptions popts = cfg.gradient;
  popts.parallel = cfg.parallel;
  {
    const int k = s.argmax();
    if (!s.pinned[k]) {
      s.nodes[k] = peak_align(s.nodes[k], model, saddle, cfg.peak_iters, popts);
      s.values[k] = action_value(s.nodes[k], model);
      s.peaked[k] = true;
    }
  }

  std::ostringstream fam;
  fam << (saddle ? "ball B_R" : "cylinder (x1 disk) x [0,r2]") << ", grid " << cfg.grid << "^"
      << s.axes << ", ring-1 diffusion eta " << cfg.eta << ", boundary pinned";
  res.surface_family = fam.str();

  const double scale = saddle ? std::max(std::sqrt(kinetic_energy2(geom.x2_seed)), 1e-12)
                              : geom.rho;
  StepState state;
  state.tau = cfg.line_search.initial_step;
  {
    const int k = s.argmax();
    const ActionGradient& g = gradient_at(s, k, model, cfg, state);
    res.history.push_back(make_record(s.nodes[k], s.values[k], g.l2_norm, 0));
    res.iterates.push_back(s.nodes[k]);
    res.node_max.push_back(s.values[k]);
    res.converged = res.history.back().measure < cfg.tol_conv;
  }
  int restarts = 0;
  for (int iter = 1; !res.converged && iter <= cfg.max_iters; ++iter) {
    CeramiRecord rec;
    try {
      rec = deform_step(s, model, cfg, state, iter);
    } catch (const StallError&) {
      if (restarts >= cfg.restarts) {
        res.stalled = true;
        break;
      }
      ++restarts;
      const std::uint64_t seed = cfg.seed + 1000 * restarts;
      res.restart_seeds.push_back(seed);
      const int k = s.argmax();
      if (!s.pinned[k]) {
        s.nodes[k] += noise(s.nodes[k], 1e-3 * scale, seed);
        s.values[k] = action_value(s.nodes[k], model);
      }
      state.grad_node = -1;
      state.tau = cfg.line_search.initial_step;
      continue;
    }
    res.history.push_back(rec);
    res.iterates.push_back(s.nodes[s.argmax()]);
    res.node_max.push_back(s.max_value());
    if (rec.measure < cfg.tol_conv) {
      res.converged = true;
      break;
    }
  }

  res.candidate_node = s.argmax();
  res.candidate = s.nodes[res.candidate_node];
  res.c_estimate = action_value(res.candidate, model);
  VerifyOptions vo = cfg.verify;
  vo.parallel = cfg.parallel;
  res.verification = inclusion_residual(res.candidate, model, vo);
  return res;
}

}  // namespace

SolverResult run_minimax(const PotentialModel& model, const LinkingGeometry& geom,
                         const SolverConfig& cfg) {
  if (geom.mode != GeometryMode::Superquadratic) {
    throw PreconditionError("run_minimax expects a superquadratic geometry");
  }
  return run_engine(model, geom, cfg);
}

SolverResult run_saddle(const PotentialModel& model, const LinkingGeometry& geom,
                        const SolverConfig& cfg) {
  if (geom.mode != GeometryMode::Saddle) {
    throw PreconditionError("run_saddle expects a saddle geometry");
  }
  return run_engine(model, geom, cfg);
}

}  // namespace hamincl
