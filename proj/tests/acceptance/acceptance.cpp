// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "blowup/field.hpp"
#include "blowup/params.hpp"
#include "blowup/profile.hpp"
#include "blowup/solver.hpp"
#include "blowup/study.hpp"

using namespace blowup;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

PhysParams nls(int dim, double alpha, cplx lambda, double k = kInf) {
  PhysParams p;
  p.dim = dim;
  p.alpha = alpha;
  p.lambda = lambda;
  p.k = k;
  return p;
}

Field gaussian(const Grid& g, double amplitude, double width) {
  return Field::sample(g, [&](double x) { return cplx{amplitude * std::exp(-x * x / (width * width)), 0.0}; });
}

Outcome profile_ode_identity() {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> logt(std::log(1e-3), 0.0), xs(-4.0, 4.0);
  const std::vector<PhysParams> cases{nls(1, 2.0, {0.0, 1.0}, 6.0), nls(3, 2.0, {0.7, 1.3}, 8.0),
                                      nls(2, 1.5, {-0.4, 2.0}, 10.0)};
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const PhysParams& p = cases[i % cases.size()];
    const Profile prof(p);
    const double t = -std::exp(logt(rng));
    const double r = std::abs(xs(rng));
    const cplx u = prof.value(t, r);
    const cplx ut = prof.time_derivative(t, r);
    const double mag = std::abs(u);
    const double res = std::abs(cplx{0.0, 1.0} * ut - p.lambda * std::pow(mag, p.alpha) * u) /
                       (std::abs(p.lambda) * std::pow(mag, p.alpha + 1.0));
    worst = std::max(worst, res);
  }
  return {worst <= 1e-10, fmt("max relative residual %.3e (limit 1e-10)", worst)};
}

Outcome profile_scaling() {
  const double k = min_admissible_k(1, 2.0, {2.0, 4.0, kInf});
  const PhysParams p = nls(1, 2.0, {0.0, 1.0}, k);
  std::vector<double> t_list;
  for (int j = 0; j < 16; ++j) t_list.push_back(-std::pow(10.0, -j / 15.0));
  double worst = 0.0;
  std::string which;
  auto run = [&](ProfileQuantity q, double pe) {
    const ScalingFit f = verify_scaling(p, q, t_list, pe);
    const double d = std::abs(f.fitted_slope - f.predicted_slope);
    if (d >= worst) {
      worst = d;
      which = std::string(to_string(q)) + " p=" + fmt("%g", pe);
    }
  };
  for (double pe : {2.0, 4.0, kInf}) {
    run(ProfileQuantity::Lp, pe);
    run(ProfileQuantity::GradLp, pe);
  }
  run(ProfileQuantity::LapL2, 2.0);
  return {worst <= 1e-2, fmt("k = %g, max |fitted - predicted| = %.3e (limit 1e-2), worst ", k, worst) + which};
}

Outcome conservation() {
  const PhysParams p = nls(1, 2.0, {1.0, 0.0});
  const Grid g = Grid::cartesian(1024, 40.0);
  const Field f0 = gaussian(g, 0.5, 1.0);
  SolveConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_start = 0.0;
  cfg.t_end = 1.0;
  cfg.validation_mode = true;
  cfg.diag_every = 10;
  const TrajectoryRecord traj = evolve(f0, p, cfg);
  const double m0 = traj.norms.front().l2;
  const double e0 = energy(f0, p);
  double l2_drift = 0.0;
  for (const auto& r : traj.norms) l2_drift = std::max(l2_drift, std::abs(r.l2 - m0) / m0);
  const double e_drift = std::abs(energy(traj.final_field, p) - e0) / std::abs(e0);
  return {l2_drift <= 1e-8 && e_drift <= 1e-6,
          fmt("relative L2 drift %.3e (limit 1e-8), relative energy drift %.3e (limit 1e-6)",
              l2_drift, e_drift)};
}

Outcome apriori_identity() {
  const PhysParams p = nls(1, 2.0, {0.0, 1.0});
  const Grid g = Grid::cartesian(1024, 40.0);
  const Field f0 = gaussian(g, 0.5, 1.0);
  SolveConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_start = 0.0;
  cfg.t_end = -0.5;
  cfg.diag_every = 1;
  const TrajectoryRecord traj = evolve(f0, p, cfg);
  double worst = 0.0;
  for (double r : traj.charge_identity_residual) worst = std::max(worst, r);
  bool monotone = true;
  for (bool b : traj.gradient_monotone_ok) monotone = monotone && b;
  const double limit = 5.0 * cfg.dt * cfg.dt;
  return {worst <= limit && monotone,
          fmt("max charge residual %.3e (limit %.1e), gradient monotone: ", worst, limit) +
              (monotone ? "all" : "violated")};
}

StudyConfig criterion5_config() {
  StudyConfig cfg;
  cfg.params = nls(1, 2.0, {0.0, 1.0}, min_admissible_k(1, 2.0, {2.0, 4.0, kInf}));
  cfg.n_list = {4, 8, 16};
  cfg.delta = 0.1;
  cfg.dt = 1e-4;
  cfg.grid = default_study_grid(cfg.params, cfg.n_list, cfg.delta);
  cfg.self_convergence = true;
  return cfg;
}

Outcome lemma_property_suite() {
  // Both sides are homogeneous of degree p, so |z| = 1 loses nothing. Even
  // draws spread w/z log-uniformly in modulus (reaching w -> 0 and w -> inf),
  // odd draws put w = z(1 + zeta) with |zeta| log-uniform (reaching w -> z).
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> log_ratio(std::log(1e-8), std::log(1e8));
  std::uniform_real_distribution<double> log_gap(std::log(1e-8), std::log(10.0));
  std::vector<std::pair<cplx, cplx>> pairs;
  for (int i = 0; i < 200000; ++i) {
    const cplx z = std::polar(1.0, angle(rng));
    if (i % 2 == 0) {
      pairs.emplace_back(z, z * std::polar(std::exp(log_ratio(rng)), angle(rng)));
    } else {
      pairs.emplace_back(z, z * (1.0 + std::polar(std::exp(log_gap(rng)), angle(rng))));
    }
  }
  double worst_change = 0.0;
  bool finite = true;
  for (double pe : {0.5, 1.0, 2.0, 3.0}) {
    for (int n : {0, 1, 2}) {
      double sup_half = 0.0, sup_full = 0.0;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const PowerDiffBound b = power_diff_bound_check(pairs[i].first, pairs[i].second, pe, n);
        const double major = pe >= 1.0 ? *b.lipschitz : *b.holder;
        if (major == 0.0) continue;
        const double ratio = b.lhs / major;
        sup_full = std::max(sup_full, ratio);
        if (i < pairs.size() / 2) sup_half = std::max(sup_half, ratio);
      }
      finite = finite && std::isfinite(sup_full) && sup_full > 0.0;
      worst_change = std::max(worst_change, (sup_full - sup_half) / sup_half);
    }
  }
  return {finite && worst_change < 0.05,
          fmt("largest relative change of the sup from 1e5 to 2e5 pairs %.3e (limit 5e-2)", worst_change)};
}

Outcome critical_bound() {
  const PhysParams p = nls(3, 4.0, {0.0, 1.0});
  const Grid g = Grid::radial(3, 512, 12.0);
  const Field f0 = gaussian(g, 0.3, 1.0);
  SolveConfig cfg;
  cfg.dt = 1e-4;
  cfg.t_start = 0.0;
  cfg.t_end = -0.5;
  cfg.diag_every = 5;
  const TrajectoryRecord traj = evolve(f0, p, cfg);
  const SpacetimeBound b = critical_spacetime_bound(traj, 0.05);
  return {b.holds, fmt("integral %.6e, bound %.6e, ratio %.4f (limit 1.05)", b.integral, b.bound,
                       b.integral / b.bound)};
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  int failures = 0;
  auto report = [&](int id, const char* name, double budget_s, const std::function<Outcome()>& fn) {
    const auto t0 = clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    const bool in_time = secs <= budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %d %s: %s; %.2f s (budget %.0f s)\n", pass ? "PASS" : "FAIL", id, name,
                o.detail.c_str(), secs, budget_s);
    std::fflush(stdout);
  };

  report(1, "profile ODE identity", 1, profile_ode_identity);
  report(2, "profile norm scaling", 10, profile_scaling);
  report(3, "conservation sanity", 30, conservation);
  report(4, "a-priori identity", 60, apriori_identity);

  // Criteria 5, 6 and 9 share one study.
  StudyReport rep;
  double study_secs = 0.0;
  std::string study_error;
  {
    const auto t0 = clock::now();
    try {
      rep = blowup_report(criterion5_config());
    } catch (const std::exception& e) {
      study_error = e.what();
    }
    study_secs = std::chrono::duration<double>(clock::now() - t0).count();
  }
  report(5, "blow-up construction rates", 600, [&]() -> Outcome {
    if (!study_error.empty()) return {false, "study threw: " + study_error};
    const ExponentTable& ex = rep.exponents;
    bool ok = true;
    std::string d = fmt("mu1 = %.4f, predicted_mu = %.4f;", ex.mu1, ex.predicted_mu);
    for (const auto& s : rep.runs) {
      const RateFit& l2 = find_fit(s.fits, RateQuantity::EpsL2);
      const RateFit& h1 = find_fit(s.fits, RateQuantity::EpsH1);
      ok = ok && !l2.skipped && !h1.skipped && l2.fitted_exponent >= ex.mu1 - 0.05 &&
           h1.fitted_exponent >= ex.predicted_mu - 0.1;
      d += fmt(" n=%g: L2 %.4f, H1 %.4f;", s.n, l2.fitted_exponent, h1.fitted_exponent);
    }
    double lo = kInf, hi = 0.0;
    for (double c : rep.bound_constants) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    const double ratio = hi / lo;
    ok = ok && ratio < 2.0;
    d += fmt(" C1 max/min %.4f (limit 2); study %.1f s", ratio, study_secs);
    return {ok, d};
  });
  report(6, "compactness proxy", 600, [&]() -> Outcome {
    if (!study_error.empty()) return {false, "study threw: " + study_error};
    const auto& gaps = rep.cauchy.pair_gaps;
    bool dec = gaps.size() == 2;
    for (std::size_t i = 1; i < gaps.size(); ++i) dec = dec && gaps[i] < gaps[i - 1];
    std::string d = fmt("tau = %.4g;", rep.cauchy.tau);
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      d += fmt(" %g->%g: %.4e", rep.cauchy.pairs[i].first, rep.cauchy.pairs[i].second, gaps[i]);
    }
    return {dec, d};
  });
  report(7, "power difference lemma suite", 10, lemma_property_suite);
  report(8, "critical-case space-time bound", 300, critical_bound);
  report(9, "Strang self-convergence", 300, [&]() -> Outcome {
    if (!study_error.empty()) return {false, "study threw: " + study_error};
    double worst = kInf;
    std::string d;
    for (const auto& s : rep.runs) {
      worst = std::min(worst, s.convergence->ratio);
      d += fmt("n=%g: %.3f; ", s.n, s.convergence->ratio);
    }
    return {worst >= 3.5, d + fmt("min ratio %.3f (limit 3.5)", worst)};
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
