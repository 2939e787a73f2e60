#include "blowup/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "blowup/fit.hpp"

namespace blowup {

namespace {

constexpr double kEdgeRatio = 1e-3;
constexpr double kMinGradientScaleSpacings = 4.0;

// Runs fn(i) for i in [0, count) on up to `workers` threads. Exceptions are
// rethrown after all workers join, lowest index first.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  if (threads == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(threads, count); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double edge_ratio(const Profile& prof, double t, double radius) {
  return std::abs(prof.value(t, radius)) / std::abs(prof.value(t, 0.0));
}

std::vector<double> window_taus(const EpsilonTrajectory& traj) {
  std::vector<double> tau(traj.times.size());
  for (std::size_t i = 0; i < tau.size(); ++i) tau[i] = traj.t_n - traj.times[i];
  return tau;
}

double quantity_of(const NormReport& r, RateQuantity q) {
  switch (q) {
    case RateQuantity::EpsL2: return r.l2;
    case RateQuantity::EpsH1dot: return r.h1_dot;
    case RateQuantity::EpsH1: return r.h1;
    case RateQuantity::EpsWeighted: return r.weighted_l2;
  }
  return 0.0;
}

double l2_bound_constant(const EpsilonTrajectory& traj, double mu1, double lo, double hi) {
  const auto tau = window_taus(traj);
  double c = 0.0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] >= lo * (1.0 - 1e-12) && tau[i] <= hi * (1.0 + 1e-12) && tau[i] > 0.0) {
      c = std::max(c, traj.eps_norms[i].l2 / std::pow(tau[i], mu1));
    }
  }
  return c;
}

}  // namespace

const char* to_string(RateQuantity q) {
  switch (q) {
    case RateQuantity::EpsL2: return "EpsL2";
    case RateQuantity::EpsH1dot: return "EpsH1dot";
    case RateQuantity::EpsH1: return "EpsH1";
    case RateQuantity::EpsWeighted: return "EpsWeighted";
  }
  return "?";
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BLOWUP_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

double default_delta(const std::vector<int>& n_list) {
  if (n_list.empty()) throw std::invalid_argument("n_list is empty");
  const int n_max = *std::max_element(n_list.begin(), n_list.end());
  return 0.5 / n_max;
}

Grid default_study_grid(const PhysParams& p, const std::vector<int>& n_list, double delta,
                        std::size_t num_points) {
  const Profile prof(p);
  const int n_min = *std::min_element(n_list.begin(), n_list.end());
  const double worst = -(initial_time(n_min) - delta);
  // |U(t,R)|/|U(t,0)| = ((-t)/(R^k - t))^{1/α} < 1e-3 with a 1.5x margin.
  const double rk = worst * (std::pow(kEdgeRatio, -p.alpha) - 1.0);
  const double radius = std::ceil(1.5 * std::pow(rk, 1.0 / p.k));
  (void)prof;
  if (p.dim == 1) return Grid::cartesian(num_points, radius);
  return Grid::radial(p.dim, num_points, radius);
}

double profile_gradient_scale(const Profile& prof, const Grid& grid, double t) {
  double scale = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.num_points; ++i) {
    const double r = std::abs(grid.coordinate(i));
    if (r == 0.0) continue;
    const double d = std::abs(prof.radial_derivative(t, r));
    if (d > 0.0) scale = std::min(scale, std::abs(prof.value(t, r)) / d);
  }
  return scale;
}

void validate_study(const StudyConfig& cfg) {
  const PhysParams& p = cfg.params;
  check_well_formed(p);
  if (!(p.lambda.imag() > 0.0)) {
    throw std::invalid_argument(
        "blow-up study needs Im(lambda) > 0; run evolve in validation mode for real lambda");
  }
  if (!std::isfinite(p.k)) throw std::invalid_argument("blow-up study needs a finite k");
  if (cfg.n_list.empty()) throw std::invalid_argument("n_list is empty");
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    if (cfg.n_list[i] < 1) throw std::invalid_argument("n_list entries must be positive");
    if (i > 0 && cfg.n_list[i] < cfg.n_list[i - 1]) {
      throw std::invalid_argument("n_list must be non-decreasing");
    }
  }
  if (!(cfg.delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(cfg.fit_lo > 0.0 && cfg.fit_lo < cfg.fit_hi && cfg.fit_hi <= 1.0)) {
    throw std::invalid_argument("fit window must satisfy 0 < fit_lo < fit_hi <= 1");
  }
  const Grid& g = cfg.grid;
  if (p.dim == 1 && g.mode != GridMode::Cartesian1D) {
    throw std::invalid_argument("N = 1 studies use a Cartesian grid");
  }
  if (p.dim >= 2 && (g.mode != GridMode::RadialND || g.dim != p.dim)) {
    throw std::invalid_argument("N >= 2 studies use a radial grid of matching dimension");
  }
  const Profile prof(p);
  for (int n : cfg.n_list) {
    const double t_far = initial_time(n) - cfg.delta;
    const double ratio = edge_ratio(prof, t_far, g.radius);
    if (!(ratio < kEdgeRatio)) {
      std::ostringstream os;
      os << "grid radius " << g.radius << " too small: |U| at the edge is " << ratio
         << " of the centre value at t = " << t_far;
      throw ResolutionError(os.str());
    }
  }
}

EpsilonTrajectory run_epsilon_trajectory(const StudyConfig& cfg, int n, bool keep_snapshots) {
  validate_study(cfg);
  const Profile prof(cfg.params);
  const double t_n = initial_time(n);
  const double scale = profile_gradient_scale(prof, cfg.grid, t_n);
  if (scale < kMinGradientScaleSpacings * cfg.grid.spacing) {
    std::ostringstream os;
    os << "U(T_n) for n = " << n << " varies on a scale " << scale << " below "
       << kMinGradientScaleSpacings << " grid spacings (" << cfg.grid.spacing << ")";
    throw ResolutionError(os.str());
  }

  EpsilonTrajectory out;
  out.n = n;
  out.t_n = t_n;
  out.delta = cfg.delta;

  SolveConfig sc;
  sc.dt = cfg.dt;
  sc.t_start = t_n;
  sc.t_end = t_n - cfg.delta;
  sc.scheme = cfg.scheme;
  sc.viscosity_eps = cfg.viscosity_eps;
  sc.diag_every = cfg.diag_every;

  const Field u0 = prof.sample(cfg.grid, t_n);
  out.solution = evolve(u0, cfg.params, sc, [&](const Field& u) {
    Field eps = u - prof.sample(cfg.grid, u.time_tag());
    eps.set_time_tag(u.time_tag());
    out.times.push_back(u.time_tag());
    out.eps_norms.push_back(norm_report(eps, cfg.params.alpha));
    if (keep_snapshots) out.snapshots.push_back(std::move(eps));
  });
  return out;
}

std::vector<RateFit> fit_rates(const EpsilonTrajectory& traj, const ExponentTable& predicted,
                               double fit_lo, double fit_hi) {
  const auto tau = window_taus(traj);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] >= fit_lo * traj.delta * (1.0 - 1e-12) &&
        tau[i] <= fit_hi * traj.delta * (1.0 + 1e-12)) {
      idx.push_back(i);
    }
  }
  if (idx.size() < 8) {
    throw std::invalid_argument("rate fit needs at least 8 recorded times in the window, got " +
                                std::to_string(idx.size()));
  }
  std::vector<RateFit> fits;
  for (RateQuantity q : {RateQuantity::EpsL2, RateQuantity::EpsH1dot, RateQuantity::EpsH1,
                         RateQuantity::EpsWeighted}) {
    RateFit f;
    f.quantity = q;
    switch (q) {
      case RateQuantity::EpsL2: f.predicted_exponent = predicted.mu1; break;
      case RateQuantity::EpsH1dot: f.predicted_exponent = predicted.h1dot_rate; break;
      case RateQuantity::EpsH1: f.predicted_exponent = predicted.predicted_mu; break;
      case RateQuantity::EpsWeighted: break;
    }
    std::vector<double> x, y;
    for (std::size_t i : idx) {
      const double v = quantity_of(traj.eps_norms[i], q);
      if (v > 0.0) {
        x.push_back(tau[i]);
        y.push_back(v);
      }
    }
    f.points = x.size();
    if (x.empty()) {
      f.skipped = true;
      fits.push_back(f);
      continue;
    }
    if (x.size() < 8) {
      throw std::invalid_argument(std::string("too few non-zero samples to fit ") + to_string(q));
    }
    const PowerLawFit pl = fit_power_law(x, y);
    f.fitted_exponent = pl.slope;
    f.prefactor = std::exp(pl.log_prefactor);
    f.fit_residual = pl.residual;
    const double e = f.predicted_exponent.value_or(pl.slope);
    for (std::size_t i = 0; i < x.size(); ++i) {
      f.bound_constant = std::max(f.bound_constant, y[i] / std::pow(x[i], e));
    }
    fits.push_back(f);
  }
  return fits;
}

const RateFit& find_fit(const std::vector<RateFit>& fits, RateQuantity q) {
  for (const auto& f : fits) {
    if (f.quantity == q) return f;
  }
  throw std::out_of_range(std::string("no fit for ") + to_string(q));
}

ReversedTrajectory time_reversed(const EpsilonTrajectory& traj) {
  if (traj.snapshots.size() != traj.times.size()) {
    throw std::invalid_argument("trajectory was run without snapshots");
  }
  ReversedTrajectory out;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double s = traj.t_n - traj.times[i];
    Field eta = traj.snapshots[i];
    eta.set_time_tag(s);
    out.s.push_back(s);
    out.eta.push_back(std::move(eta));
  }
  return out;
}

std::vector<double> eta_equation_residual(const EpsilonTrajectory& traj) {
  const ReversedTrajectory rev = time_reversed(traj);
  const PhysParams& p = traj.solution.params;
  const Profile prof(p);
  const cplx i_unit{0.0, 1.0};
  std::vector<double> out;
  for (std::size_t j = 1; j + 1 < rev.s.size(); ++j) {
    const Field& eta = rev.eta[j];
    const Grid& g = eta.grid();
    const double ds = rev.s[j + 1] - rev.s[j - 1];
    Field lhs = rev.eta[j + 1] - rev.eta[j - 1];
    lhs *= 1.0 / ds;

    const Field v = prof.sample(g, traj.t_n - rev.s[j]);
    const Field lap_eta = laplacian(eta);
    const Field lap_v = laplacian(v);
    std::vector<cplx> rhs(g.num_points);
    for (std::size_t i = 0; i < g.num_points; ++i) {
      const cplx w = v[i] + eta[i];
      const cplx nl = std::pow(std::abs(w), p.alpha) * w - std::pow(std::abs(v[i]), p.alpha) * v[i];
      rhs[i] = -i_unit * lap_eta[i] + i_unit * p.lambda * nl - i_unit * lap_v[i];
    }
    const Field rhs_field(g, std::move(rhs));
    const double scale = lp_norm(rhs_field, 2.0);
    const double diff = lp_norm(lhs - rhs_field, 2.0);
    out.push_back(scale > 0.0 ? diff / scale : diff);
  }
  return out;
}

CauchyDiagnostic cauchy_diagnostic(const std::vector<EpsilonTrajectory>& trajectories, double tau) {
  if (trajectories.size() < 3) {
    throw std::invalid_argument("cauchy diagnostic needs at least three trajectories");
  }
  const Grid& grid = trajectories.front().snapshots.empty()
                         ? throw std::invalid_argument("trajectories lack snapshots")
                         : trajectories.front().snapshots.front().grid();
  for (const auto& t : trajectories) {
    if (t.snapshots.empty() || t.snapshots.size() != t.times.size()) {
      throw std::invalid_argument("trajectories lack snapshots");
    }
    if (!(t.snapshots.front().grid() == grid)) {
      throw std::invalid_argument("cauchy diagnostic: trajectories use different grids");
    }
  }
  CauchyDiagnostic out;
  out.tau = tau;
  for (std::size_t k = 0; k + 1 < trajectories.size(); ++k) {
    const auto& a = trajectories[k];
    const auto& b = trajectories[k + 1];
    const double upper = std::min(a.delta, b.delta);
    const double tol = 1e-9 * upper;
    const auto sa = window_taus(a);
    const auto sb = window_taus(b);
    double gap = 0.0;
    bool matched = false;
    std::size_t jb = 0;
    for (std::size_t ja = 0; ja < sa.size(); ++ja) {
      if (sa[ja] < tau - tol || sa[ja] > upper + tol) continue;
      while (jb < sb.size() && sb[jb] < sa[ja] - tol) ++jb;
      if (jb == sb.size()) break;
      if (std::abs(sb[jb] - sa[ja]) > tol) continue;
      matched = true;
      gap = std::max(gap, lp_norm(a.snapshots[ja] - b.snapshots[jb], 2.0));
    }
    if (!matched) throw std::invalid_argument("cauchy diagnostic: no common times in [tau, delta]");
    out.pairs.emplace_back(a.n, b.n);
    out.pair_gaps.push_back(gap);
  }
  return out;
}

std::vector<double> l2_bound_constants(const std::vector<EpsilonTrajectory>& trajectories,
                                       const ExponentTable& predicted, double fit_lo,
                                       double fit_hi) {
  std::vector<double> c;
  for (const auto& t : trajectories) {
    c.push_back(l2_bound_constant(t, predicted.mu1, fit_lo * t.delta, fit_hi * t.delta));
  }
  return c;
}

double uniform_delta_probe(const std::vector<EpsilonTrajectory>& trajectories,
                           const ExponentTable& predicted, double fit_lo) {
  if (trajectories.empty()) throw std::invalid_argument("uniform_delta_probe: no trajectories");
  double delta = trajectories.front().delta;
  for (const auto& t : trajectories) delta = std::min(delta, t.delta);
  if (trajectories.size() == 1) return delta;
  constexpr int kSteps = 20;
  for (int j = kSteps; j >= 1; --j) {
    const double d = delta * j / kSteps;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& t : trajectories) {
      const double c = l2_bound_constant(t, predicted.mu1, fit_lo * d, d);
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    if (hi == 0.0 || (lo > 0.0 && hi / lo < 2.0)) return d;
  }
  return 0.0;
}

SelfConvergence strang_self_convergence(const StudyConfig& cfg, int n) {
  SelfConvergence out;
  out.n = n;
  const ExponentTable table = exponent_table(cfg.params);
  StudyConfig c1 = cfg;
  StudyConfig c2 = cfg;
  c2.dt = cfg.dt / 2;
  c2.diag_every = cfg.diag_every * 2;
  StudyConfig c4 = cfg;
  c4.dt = cfg.dt / 4;
  c4.diag_every = cfg.diag_every * 4;
  const auto r1 = run_epsilon_trajectory(c1, n, false);
  const auto r2 = run_epsilon_trajectory(c2, n, false);
  const auto r4 = run_epsilon_trajectory(c4, n, false);
  out.err_coarse = lp_norm(r1.solution.final_field - r2.solution.final_field, 2.0);
  out.err_fine = lp_norm(r2.solution.final_field - r4.solution.final_field, 2.0);
  out.ratio = out.err_fine > 0.0 ? out.err_coarse / out.err_fine
                                 : std::numeric_limits<double>::infinity();
  out.h1_exponent_dt =
      find_fit(fit_rates(r1, table, cfg.fit_lo, cfg.fit_hi), RateQuantity::EpsH1).fitted_exponent;
  out.h1_exponent_half =
      find_fit(fit_rates(r2, table, cfg.fit_lo, cfg.fit_hi), RateQuantity::EpsH1).fitted_exponent;
  return out;
}

bool StudyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

StudyReport blowup_report(const StudyConfig& cfg) {
  if (!(cfg.params.lambda.imag() > 0.0)) {
    throw std::invalid_argument(
        "blow-up study refused: Im(lambda) must be positive; use evolve in validation mode");
  }
  validate_study(cfg);
  StudyReport rep;
  rep.config = cfg;
  rep.admissibility = validate_assumptions(cfg.params);
  rep.exponents = exponent_table(cfg.params);
  const ExponentTable& ex = rep.exponents;
  const int workers = resolve_workers(cfg.workers);
  const std::size_t count = cfg.n_list.size();

  rep.trajectories.resize(count);
  parallel_for(count, workers, [&](std::size_t i) {
    rep.trajectories[i] = run_epsilon_trajectory(cfg, cfg.n_list[i], true);
  });
  std::vector<std::optional<SelfConvergence>> conv(count);
  if (cfg.self_convergence) {
    parallel_for(count, workers, [&](std::size_t i) {
      conv[i] = strang_self_convergence(cfg, cfg.n_list[i]);
    });
  }

  const bool critical = is_critical_power(cfg.params.dim, cfg.params.alpha) &&
                        rep.admissibility.strict_coeff_ok;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& traj = rep.trajectories[i];
    RunSummary s;
    s.n = traj.n;
    s.t_n = traj.t_n;
    s.fits = fit_rates(traj, ex, cfg.fit_lo, cfg.fit_hi);
    s.l2_bound_constant =
        l2_bound_constant(traj, ex.mu1, cfg.fit_lo * traj.delta, cfg.fit_hi * traj.delta);
    for (double r : traj.solution.charge_identity_residual) {
      s.max_charge_residual = std::max(s.max_charge_residual, r);
    }
    s.gradient_monotone = std::all_of(traj.solution.gradient_monotone_ok.begin(),
                                      traj.solution.gradient_monotone_ok.end(),
                                      [](bool b) { return b; });
    const NormReport& first = traj.eps_norms.front();
    s.eps_zero_at_start = first.l2 == 0.0 && first.h1 == 0.0 && first.weighted_l2 == 0.0;
    if (critical) s.critical = critical_spacetime_bound(traj.solution);
    s.convergence = conv[i];
    rep.runs.push_back(std::move(s));
  }
  rep.bound_constants = l2_bound_constants(rep.trajectories, ex, cfg.fit_lo, cfg.fit_hi);
  rep.uniform_delta = uniform_delta_probe(rep.trajectories, ex, cfg.fit_lo);
  if (count >= 3) rep.cauchy = cauchy_diagnostic(rep.trajectories, cfg.delta / 4.0);

  std::vector<double> t_list;
  for (int j = 0; j < 16; ++j) t_list.push_back(-std::pow(10.0, -j / 15.0));
  rep.profile_scaling.push_back(verify_scaling(cfg.params, ProfileQuantity::Lp, t_list, 2.0));
  rep.profile_scaling.push_back(verify_scaling(cfg.params, ProfileQuantity::GradLp, t_list, 2.0));
  rep.profile_scaling.push_back(verify_scaling(cfg.params, ProfileQuantity::LapL2, t_list, 2.0));

  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  std::ostringstream d;
  add("admissible_parameters", rep.admissibility.theorem_applies,
      rep.admissibility.theorem_applies ? "" : rep.admissibility.explanation());

  bool zero = true, l2_ok = true, h1_ok = true, grad_ok = true, envelope_ok = true;
  std::ostringstream l2d, h1d;
  for (std::size_t i = 0; i < count; ++i) {
    const RunSummary& s = rep.runs[i];
    zero = zero && s.eps_zero_at_start;
    grad_ok = grad_ok && s.gradient_monotone;
    const RateFit& l2 = find_fit(s.fits, RateQuantity::EpsL2);
    const RateFit& h1 = find_fit(s.fits, RateQuantity::EpsH1);
    l2_ok = l2_ok && !l2.skipped && l2.fitted_exponent >= ex.mu1 - 0.05;
    h1_ok = h1_ok && !h1.skipped && h1.fitted_exponent >= ex.predicted_mu - 0.1;
    l2d << "n=" << s.n << ": " << l2.fitted_exponent << " ";
    h1d << "n=" << s.n << ": " << h1.fitted_exponent << " ";
    const auto& traj = rep.trajectories[i];
    for (std::size_t j = 0; j < traj.times.size(); ++j) {
      const double tau = traj.t_n - traj.times[j];
      if (tau < cfg.fit_lo * traj.delta || tau > cfg.fit_hi * traj.delta) continue;
      envelope_ok = envelope_ok &&
                    traj.eps_norms[j].l2 <= 1.1 * s.l2_bound_constant * std::pow(tau, ex.mu1);
    }
  }
  add("eps_zero_at_initial_time", zero, "");
  l2d << "(need >= " << ex.mu1 - 0.05 << ")";
  h1d << "(need >= " << ex.predicted_mu - 0.1 << ")";
  add("l2_rate", l2_ok, l2d.str());
  add("h1_rate", h1_ok, h1d.str());
  add("one_sided_l2_bound", envelope_ok, "");
  {
    const auto [lo, hi] = std::minmax_element(rep.bound_constants.begin(), rep.bound_constants.end());
    const double ratio = *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "max/min C1 = " << ratio << ", uniform delta' = " << rep.uniform_delta;
    add("uniform_prefactor", ratio < 2.0, os.str());
  }
  if (count >= 3) {
    bool dec = true;
    std::ostringstream os;
    for (std::size_t k = 0; k < rep.cauchy.pair_gaps.size(); ++k) {
      os << rep.cauchy.pairs[k].first << "->" << rep.cauchy.pairs[k].second << ": "
         << rep.cauchy.pair_gaps[k] << " ";
      if (k > 0) dec = dec && rep.cauchy.pair_gaps[k] < rep.cauchy.pair_gaps[k - 1];
    }
    add("compactness_proxy", dec, os.str());
  }
  add("gradient_monotone", grad_ok, "");
  if (cfg.self_convergence) {
    double worst = std::numeric_limits<double>::infinity();
    double drift = 0.0;
    for (const auto& c : conv) {
      worst = std::min(worst, c->ratio);
      drift = std::max(drift, std::abs(c->h1_exponent_dt - c->h1_exponent_half));
    }
    std::ostringstream os;
    os << "min ratio = " << worst;
    add("strang_order", worst >= 3.5, os.str());
    std::ostringstream os2;
    os2 << "max |Δ exponent| = " << drift;
    add("h1_exponent_dt_stable", drift <= 0.05, os2.str());
  }
  {
    bool ok = true;
    std::ostringstream os;
    for (const auto& f : rep.profile_scaling) {
      ok = ok && std::abs(f.fitted_slope - f.predicted_slope) <= 1e-2;
      os << to_string(f.quantity) << ": " << f.fitted_slope << " vs " << f.predicted_slope << " ";
    }
    add("profile_scaling", ok, os.str());
  }
  if (critical) {
    bool ok = true;
    for (const auto& s : rep.runs) ok = ok && s.critical->holds;
    add("critical_spacetime_bound", ok, "");
  }
  return rep;
}

}  // namespace blowup
