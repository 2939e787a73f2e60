#include "blowup/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace blowup {

double sig12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json num(double x) {
  if (std::isfinite(x)) return sig12(x);
  return fmt12(x);
}

json to_json(const PhysParams& p) {
  return {{"N", p.dim},
          {"alpha", num(p.alpha)},
          {"lambda_re", num(p.lambda.real())},
          {"lambda_im", num(p.lambda.imag())},
          {"k", num(p.k)}};
}

json to_json(const Grid& g) {
  return {{"mode", g.mode == GridMode::Cartesian1D ? "cartesian" : "radial"},
          {"dim", g.dim},
          {"points", g.num_points},
          {"spacing", num(g.spacing)},
          {"radius", num(g.radius)}};
}

json to_json(const AdmissibilityReport& r) {
  return {{"subcritical_or_critical", r.subcritical_or_critical},
          {"alpha_above_one", r.alpha_above_one},
          {"weak_coeff_ok", r.weak_coeff_ok},
          {"strict_coeff_ok", r.strict_coeff_ok},
          {"strict_required", r.strict_required},
          {"theorem_applies", r.theorem_applies},
          {"explanation", r.explanation()}};
}

json to_json(const ExponentTable& t) {
  return {{"N", t.dim},          {"alpha", num(t.alpha)},
          {"k", num(t.k)},       {"mu1", num(t.mu1)},
          {"mu2", num(t.mu2)},   {"mu3", num(t.mu3)},
          {"mu4", num(t.mu4)},   {"mu5", num(t.mu5)},
          {"h1dot_rate", num(t.h1dot_rate)},
          {"predicted_mu", num(t.predicted_mu)},
          {"mu3_in_mu5", t.mu3_in_mu5}};
}

json to_json(const NormReport& r) {
  return {{"l2", num(r.l2)},
          {"h1_dot", num(r.h1_dot)},
          {"h1", num(r.h1)},
          {"l_alpha_plus_2", num(r.l_alpha_plus_2)},
          {"sigma", num(r.sigma)},
          {"weighted_l2", num(r.weighted_l2)},
          {"time", num(r.time_tag)}};
}

json to_json(const RateFit& f) {
  json j{{"quantity", to_string(f.quantity)},
         {"skipped", f.skipped},
         {"points", f.points},
         {"fitted_exponent", num(f.fitted_exponent)},
         {"prefactor", num(f.prefactor)},
         {"fit_residual", num(f.fit_residual)},
         {"bound_constant", num(f.bound_constant)}};
  j["predicted_exponent"] = f.predicted_exponent ? num(*f.predicted_exponent) : json(nullptr);
  return j;
}

json to_json(const ScalingFit& f) {
  return {{"quantity", to_string(f.quantity)},
          {"p", num(f.p)},
          {"fitted_slope", num(f.fitted_slope)},
          {"predicted_slope", num(f.predicted_slope)},
          {"residual", num(f.residual)}};
}

json to_json(const SpacetimeBound& b) {
  return {{"integral", num(b.integral)},
          {"bound", num(b.bound)},
          {"lebesgue_exponent", num(b.lebesgue_exponent)},
          {"holds", b.holds}};
}

json to_json(const SelfConvergence& c) {
  return {{"n", c.n},
          {"err_coarse", num(c.err_coarse)},
          {"err_fine", num(c.err_fine)},
          {"ratio", num(c.ratio)},
          {"h1_exponent_dt", num(c.h1_exponent_dt)},
          {"h1_exponent_half", num(c.h1_exponent_half)}};
}

json to_json(const CauchyDiagnostic& c) {
  json pairs = json::array();
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    pairs.push_back({{"n", c.pairs[i].first}, {"m", c.pairs[i].second}, {"gap", num(c.pair_gaps[i])}});
  }
  return {{"tau", num(c.tau)}, {"pairs", pairs}};
}

json to_json(const StudyReport& r) {
  const StudyConfig& c = r.config;
  json cfg{{"params", to_json(c.params)},
           {"n_list", c.n_list},
           {"delta", num(c.delta)},
           {"dt", num(c.dt)},
           {"fit_lo", num(c.fit_lo)},
           {"fit_hi", num(c.fit_hi)},
           {"grid", to_json(c.grid)},
           {"diag_every", c.diag_every},
           {"scheme", to_string(c.scheme)},
           {"viscosity_eps", num(c.viscosity_eps)},
           {"self_convergence", c.self_convergence}};
  json runs = json::array();
  for (const auto& s : r.runs) {
    json fits = json::array();
    for (const auto& f : s.fits) fits.push_back(to_json(f));
    json run{{"n", s.n},
             {"t_n", num(s.t_n)},
             {"fits", fits},
             {"l2_bound_constant", num(s.l2_bound_constant)},
             {"max_charge_residual", num(s.max_charge_residual)},
             {"gradient_monotone", s.gradient_monotone},
             {"eps_zero_at_start", s.eps_zero_at_start}};
    if (s.critical) run["critical_spacetime_bound"] = to_json(*s.critical);
    if (s.convergence) run["self_convergence"] = to_json(*s.convergence);
    runs.push_back(run);
  }
  json bounds = json::array();
  for (double b : r.bound_constants) bounds.push_back(num(b));
  json scaling = json::array();
  for (const auto& f : r.profile_scaling) scaling.push_back(to_json(f));
  json checks = json::array();
  for (const auto& ch : r.checks) {
    checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
  }
  json j{{"config", cfg},
         {"admissibility", to_json(r.admissibility)},
         {"exponents", to_json(r.exponents)},
         {"runs", runs},
         {"bound_constants", bounds},
         {"uniform_delta", num(r.uniform_delta)},
         {"profile_scaling", scaling},
         {"checks", checks},
         {"all_passed", r.all_passed()}};
  if (!r.cauchy.pairs.empty()) j["cauchy"] = to_json(r.cauchy);
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string epsilon_csv(const EpsilonTrajectory& traj) {
  std::ostringstream os;
  os << "t,tau,eps_l2,eps_h1_dot,eps_h1,eps_weighted_l2,u_l2,u_h1_dot,charge_residual,"
        "gradient_monotone\n";
  const auto& sol = traj.solution;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const NormReport& e = traj.eps_norms[i];
    os << fmt12(traj.times[i]) << ',' << fmt12(traj.t_n - traj.times[i]) << ',' << fmt12(e.l2)
       << ',' << fmt12(e.h1_dot) << ',' << fmt12(e.h1) << ',' << fmt12(e.weighted_l2) << ',';
    if (i < sol.norms.size()) os << fmt12(sol.norms[i].l2) << ',' << fmt12(sol.norms[i].h1_dot);
    else os << ',';
    os << ',';
    if (i < sol.charge_identity_residual.size()) os << fmt12(sol.charge_identity_residual[i]);
    os << ',';
    if (i < sol.gradient_monotone_ok.size()) os << (sol.gradient_monotone_ok[i] ? 1 : 0);
    os << '\n';
  }
  return os.str();
}

EpsilonTrajectory read_epsilon_csv(const std::string& path, int n, double delta) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  std::getline(in, line);
  if (line.rfind("t,tau,eps_l2,eps_h1_dot,eps_h1,eps_weighted_l2", 0) != 0) {
    throw std::runtime_error(path + ": unexpected header");
  }
  EpsilonTrajectory traj;
  traj.n = n;
  traj.t_n = initial_time(n);
  traj.delta = delta;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> cols;
    std::stringstream ss(line);
    std::string cell;
    for (int c = 0; c < 6 && std::getline(ss, cell, ','); ++c) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size()) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
      cols.push_back(v);
    }
    if (cols.size() < 6) throw std::runtime_error(path + ":" + std::to_string(line_no) + ": short row");
    NormReport r;
    r.l2 = cols[2];
    r.h1_dot = cols[3];
    r.h1 = cols[4];
    r.weighted_l2 = cols[5];
    r.time_tag = cols[0];
    traj.times.push_back(cols[0]);
    traj.eps_norms.push_back(r);
  }
  return traj;
}

json csv_schema() {
  json traj{{"t", "time"},
            {"l2", "L2 norm of u"},
            {"h1_dot", "L2 norm of the gradient of u"},
            {"h1", "full H1 norm of u"},
            {"l_alpha_plus_2", "L^(alpha+2) norm of u"},
            {"sigma", "sqrt(h1^2 + weighted_l2^2)"},
            {"weighted_l2", "L2 norm of |x| u"},
            {"charge_residual", "relative residual of the charge identity; blank at the ends"},
            {"gradient_monotone", "1 if the gradient norm is monotone up to dt^2 against the next record"},
            {"critical_lp", "L^q norm of u with q = N(alpha+2)/(N-2); N >= 3 only"}};
  json eps{{"t", "time"},
           {"tau", "T_n - t"},
           {"eps_l2", "L2 norm of u_n - U"},
           {"eps_h1_dot", "L2 norm of the gradient of u_n - U"},
           {"eps_h1", "H1 norm of u_n - U"},
           {"eps_weighted_l2", "L2 norm of |x| (u_n - U)"},
           {"u_l2", "L2 norm of u_n"},
           {"u_h1_dot", "gradient norm of u_n"},
           {"charge_residual", "charge identity residual of u_n"},
           {"gradient_monotone", "gradient monotonicity flag of u_n"}};
  json profile{{"t", "time (negative)"},
               {"norm", "norm of the profile at t"},
               {"predicted", "first norm scaled by the predicted power of -t"},
               {"fitted", "least-squares power law at t"}};
  json field{{"coordinate", "x (Cartesian) or r (radial)"}, {"re", "real part"}, {"im", "imaginary part"}};
  return {{"trajectory.csv", traj},
          {"eps_n<n>.csv", eps},
          {"profile_<quantity>_p<p>.csv", profile},
          {"final_field.csv", field}};
}

json manifest(const RunConfig& cfg, const std::string& status) {
  json j{{"command", to_string(cfg.command)},
         {"config_hash", hex_hash(config_hash(cfg.source))},
         {"params", to_json(cfg.params)},
         {"seed", cfg.seed},
         {"status", status}};
  if (cfg.study) {
    j["grid"] = to_json(cfg.study->grid);
    j["dt"] = num(cfg.study->dt);
  } else {
    j["grid"] = to_json(cfg.grid);
    j["dt"] = num(cfg.solve.dt);
  }
  return j;
}

json conservation_report(const TrajectoryRecord& traj, const Field& initial) {
  const PhysParams& p = traj.params;
  json j{{"params", to_json(p)},
         {"dt", num(traj.dt)},
         {"t_start", num(traj.times.front())},
         {"t_end", num(traj.times.back())},
         {"records", traj.times.size()}};
  const double l2_0 = lp_norm(initial, 2.0);
  auto energy_of = [&](const NormReport& r) {
    return 0.5 * r.h1_dot * r.h1_dot +
           p.lambda.real() / (p.alpha + 2.0) * std::pow(r.l_alpha_plus_2, p.alpha + 2.0);
  };
  const double e0 = energy_of(traj.norms.front());
  double l2_drift = 0.0, e_drift = 0.0;
  for (const auto& r : traj.norms) {
    l2_drift = std::max(l2_drift, std::abs(r.l2 - l2_0) / l2_0);
    e_drift = std::max(e_drift, std::abs(energy_of(r) - e0) / std::abs(e0));
  }
  double max_res = 0.0;
  for (double r : traj.charge_identity_residual) max_res = std::max(max_res, r);
  bool monotone = true;
  for (bool b : traj.gradient_monotone_ok) monotone = monotone && b;
  if (p.lambda.imag() == 0.0) {
    j["relative_l2_drift"] = num(l2_drift);
    j["relative_energy_drift"] = num(e_drift);
  } else {
    j["l2_ratio_end_to_start"] = num(traj.norms.back().l2 / traj.norms.front().l2);
    j["max_charge_residual"] = num(max_res);
    j["gradient_monotone"] = monotone;
    if (is_critical_power(p.dim, p.alpha) && validate_assumptions(p).strict_coeff_ok) {
      j["critical_spacetime_bound"] = to_json(critical_spacetime_bound(traj));
    }
  }
  return j;
}

}  // namespace blowup
