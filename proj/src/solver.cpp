#include "blowup/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>

#include "spectral.hpp"

namespace blowup {

namespace {

// Pointwise nonlinear flow, in place.
void apply_nonlinear(std::span<cplx> u, const PhysParams& p, double dt) {
  const double a = p.lambda.real();
  const double b = p.lambda.imag();
  const double alpha = p.alpha;
  if (b == 0.0) {
    for (auto& z : u) {
      const double rho_a = std::pow(std::abs(z), alpha);
      z *= std::polar(1.0, -a * rho_a * dt);
    }
    return;
  }
  const double phase_rate = a / (alpha * b);
  for (auto& z : u) {
    const double rho = std::abs(z);
    if (rho == 0.0) continue;
    const double x = -alpha * b * std::pow(rho, alpha) * dt;
    if (!(x > -1.0)) {
      throw std::domain_error("nonlinear substep reaches the pointwise blow-up time");
    }
    const double log_q = std::log1p(x);
    z *= std::polar(std::exp(-log_q / alpha), phase_rate * log_q);
  }
}

// Linear flow u_t = (i - ε) Δu over a fixed dt on one grid.
class LinearFlow {
 public:
  LinearFlow(const Grid& grid, double dt, double eps) : grid_(grid) {
    if (dt > 0.0 && eps > 0.0) {
      throw std::invalid_argument("viscosity is only well-posed for backward steps");
    }
    const cplx coeff{-eps, 1.0};
    if (grid.mode == GridMode::Cartesian1D) {
      fft_.emplace(grid.num_points);
      const auto xi = detail::wavenumbers(grid.num_points, grid.period());
      symbol_.resize(xi.size());
      for (std::size_t j = 0; j < xi.size(); ++j) symbol_[j] = std::exp(-coeff * xi[j] * xi[j] * dt);
      return;
    }
    // Crank–Nicolson on V u_t = c K u, K the symmetric flux matrix.
    const std::size_t m = grid.num_points;
    const double h = grid.spacing;
    std::vector<double> area(m - 1), vol(m);
    for (std::size_t i = 0; i + 1 < m; ++i) area[i] = std::pow((i + 0.5) * h, grid.dim - 1) / h;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = static_cast<double>(i) * h;
      const double lo = std::max(0.0, r - 0.5 * h);
      const double hi = (i + 1 == m) ? r : r + 0.5 * h;
      vol[i] = (std::pow(hi, grid.dim) - std::pow(lo, grid.dim)) / grid.dim;
    }
    const cplx half = 0.5 * dt * coeff;
    diag_k_.assign(m, 0.0);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      diag_k_[i] -= area[i];
      diag_k_[i + 1] -= area[i];
    }
    off_k_ = area;
    vol_ = vol;
    half_ = half;
    // Thomas factorisation of A = V - half K.
    lower_.resize(m);
    pivot_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const cplx diag = vol[i] - half * diag_k_[i];
      if (i == 0) {
        pivot_[i] = diag;
      } else {
        const cplx sub = -half * off_k_[i - 1];
        lower_[i] = sub / pivot_[i - 1];
        pivot_[i] = diag - lower_[i] * sub;
      }
    }
  }

  void apply(std::span<cplx> u) {
    if (fft_) {
      fft_->forward(u);
      for (std::size_t j = 0; j < u.size(); ++j) u[j] *= symbol_[j];
      fft_->inverse(u);
      return;
    }
    const std::size_t m = u.size();
    rhs_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      cplx ku = diag_k_[i] * u[i];
      if (i + 1 < m) ku += off_k_[i] * u[i + 1];
      if (i > 0) ku += off_k_[i - 1] * u[i - 1];
      rhs_[i] = vol_[i] * u[i] + half_ * ku;
    }
    for (std::size_t i = 1; i < m; ++i) rhs_[i] -= lower_[i] * rhs_[i - 1];
    u[m - 1] = rhs_[m - 1] / pivot_[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
      u[i] = (rhs_[i] + half_ * off_k_[i] * u[i + 1]) / pivot_[i];
    }
  }

 private:
  Grid grid_;
  std::optional<detail::Fft> fft_;
  std::vector<cplx> symbol_;
  std::vector<double> diag_k_, off_k_, vol_;
  std::vector<cplx> lower_, pivot_, rhs_;
  cplx half_;
};

// Derivative at x[j] of the Lagrange interpolant through x[first .. first+count).
double lagrange_derivative(std::span<const double> x, std::span<const double> y, std::size_t j,
                           std::size_t first, std::size_t count) {
  const double t = x[j];
  double d = 0.0;
  for (std::size_t i = first; i < first + count; ++i) {
    double li = 0.0;
    for (std::size_t m = first; m < first + count; ++m) {
      if (m == i) continue;
      double term = 1.0 / (x[i] - x[m]);
      for (std::size_t l = first; l < first + count; ++l) {
        if (l != i && l != m) term *= (t - x[l]) / (x[i] - x[l]);
      }
      li += term;
    }
    d += li * y[i];
  }
  return d;
}

// Centred three-point differences inside; at the two ends, where no centred
// stencil exists, a one-sided four-point closure (three-point if n = 3).
double time_derivative(std::span<const double> x, std::span<const double> y, std::size_t j) {
  const std::size_t n = x.size();
  if (j > 0 && j + 1 < n) return lagrange_derivative(x, y, j, j - 1, 3);
  const std::size_t count = n >= 4 ? 4 : 3;
  return lagrange_derivative(x, y, j, j == 0 ? 0 : n - count, count);
}

bool finite_report(const NormReport& r) {
  return std::isfinite(r.l2) && std::isfinite(r.h1) && std::isfinite(r.sigma) &&
         std::isfinite(r.l_alpha_plus_2);
}

}  // namespace

const char* to_string(Scheme s) { return s == Scheme::StrangSplit ? "strang" : "lie"; }

double max_stable_dt(const Grid& grid) {
  return grid.spacing * grid.spacing / std::numbers::pi;
}

Field nonlinear_substep(const Field& f, const PhysParams& p, double dt_sub) {
  Field out = f;
  apply_nonlinear(out.values(), p, dt_sub);
  out.set_time_tag(f.time_tag() + dt_sub);
  return out;
}

Field linear_substep(const Field& f, double dt_sub, double viscosity_eps) {
  Field out = f;
  if (dt_sub != 0.0) {
    LinearFlow flow(f.grid(), dt_sub, viscosity_eps);
    flow.apply(out.values());
  }
  out.set_time_tag(f.time_tag() + dt_sub);
  return out;
}

TrajectoryRecord evolve(const Field& f0, const PhysParams& p, const SolveConfig& cfg,
                        const RecordObserver& observer) {
  check_well_formed(p);
  if (!f0.all_finite()) throw NonFiniteError("initial data is not finite");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (cfg.diag_every < 1) throw std::invalid_argument("diag_every must be >= 1");
  if (cfg.viscosity_eps < 0.0) throw std::invalid_argument("viscosity must be non-negative");
  const double span = cfg.t_end - cfg.t_start;
  if (span == 0.0) throw std::invalid_argument("t_end must differ from t_start");
  if (span > 0.0 && !cfg.validation_mode) {
    throw std::invalid_argument("forward integration is only allowed in validation mode");
  }
  if (cfg.dt > max_stable_dt(f0.grid()) * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt = " << cfg.dt << " exceeds the dispersion limit " << max_stable_dt(f0.grid())
       << " for this grid";
    throw std::invalid_argument(os.str());
  }
  const auto steps = static_cast<long long>(std::llround(std::abs(span) / cfg.dt));
  if (steps < 1 || std::abs(steps * cfg.dt - std::abs(span)) > 1e-9 * std::abs(span)) {
    throw std::invalid_argument("the time span must be an integer multiple of dt");
  }
  const double dir = span > 0.0 ? 1.0 : -1.0;
  const double h = dir * cfg.dt;

  TrajectoryRecord traj;
  traj.params = p;
  traj.dt = cfg.dt;
  const bool has_critical = p.dim >= 3;
  const double q = has_critical ? p.dim * (p.alpha + 2.0) / (p.dim - 2.0) : 0.0;

  Field u = f0;
  u.set_time_tag(cfg.t_start);
  auto record = [&](double t) {
    u.set_time_tag(t);
    const NormReport r = norm_report(u, p.alpha);
    if (!finite_report(r)) {
      std::ostringstream os;
      os << "non-finite norm at t = " << t;
      throw NonFiniteError(os.str());
    }
    traj.times.push_back(t);
    traj.norms.push_back(r);
    if (has_critical) traj.critical_lp.push_back(lp_norm(u, q));
    if (observer) observer(u);
  };

  const bool strang = cfg.scheme == Scheme::StrangSplit;
  LinearFlow linear(f0.grid(), strang ? 0.5 * h : h, cfg.viscosity_eps);
  record(cfg.t_start);
  for (long long j = 1; j <= steps; ++j) {
    auto v = u.values();
    if (strang) {
      linear.apply(v);
      apply_nonlinear(v, p, h);
      linear.apply(v);
    } else {
      linear.apply(v);
      apply_nonlinear(v, p, h);
    }
    if (j % cfg.diag_every == 0 || j == steps) {
      record(j == steps ? cfg.t_end : cfg.t_start + static_cast<double>(j) * h);
    }
  }
  traj.final_field = u;
  if (traj.times.size() >= 3) traj.charge_identity_residual = charge_identity_residual(traj);
  traj.gradient_monotone_ok = gradient_monotonicity_check(traj);
  return traj;
}

std::vector<double> charge_identity_residual(const TrajectoryRecord& traj) {
  const std::size_t n = traj.times.size();
  if (n < 3) throw std::invalid_argument("charge identity needs at least three recorded times");
  const double b = traj.params.lambda.imag();
  const double power = traj.params.alpha + 2.0;
  std::vector<double> mass(n);
  for (std::size_t i = 0; i < n; ++i) mass[i] = 0.5 * traj.norms[i].l2 * traj.norms[i].l2;
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double rate = time_derivative(traj.times, mass, j);
    const double source = b * std::pow(traj.norms[j].l_alpha_plus_2, power);
    const double scale = b != 0.0 ? std::abs(source) : mass[j];
    out[j] = scale > 0.0 ? std::abs(rate - source) / scale : std::abs(rate - source);
  }
  return out;
}

std::vector<bool> gradient_monotonicity_check(const TrajectoryRecord& traj) {
  const std::size_t n = traj.times.size();
  std::vector<bool> ok(n, true);
  const double tol = traj.dt * traj.dt;
  for (std::size_t j = 1; j < n; ++j) {
    const bool forward = traj.times[j] > traj.times[j - 1];
    const double earlier = forward ? traj.norms[j - 1].h1_dot : traj.norms[j].h1_dot;
    const double later = forward ? traj.norms[j].h1_dot : traj.norms[j - 1].h1_dot;
    ok[j] = earlier <= later * (1.0 + tol) + 1e-300;
  }
  return ok;
}

SpacetimeBound critical_spacetime_bound(const TrajectoryRecord& traj, double tolerance) {
  const PhysParams& p = traj.params;
  const double gap = (p.alpha + 2.0) * p.lambda.imag() - p.alpha * std::abs(p.lambda);
  if (!is_critical_power(p.dim, p.alpha) || !validate_assumptions(p).strict_coeff_ok) {
    throw InapplicableParameters(
        "space-time bound needs N >= 3, alpha = 4/(N-2) and (alpha+2) Im(lambda) > alpha |lambda|");
  }
  if (traj.critical_lp.size() != traj.times.size() || traj.times.size() < 2) {
    throw std::invalid_argument("trajectory lacks critical Lebesgue norms");
  }
  SpacetimeBound out;
  out.lebesgue_exponent = p.dim * (p.alpha + 2.0) / (p.dim - 2.0);
  const double power = p.alpha + 2.0;
  for (std::size_t j = 1; j < traj.times.size(); ++j) {
    const double dt = std::abs(traj.times[j] - traj.times[j - 1]);
    out.integral += 0.5 * dt *
                    (std::pow(traj.critical_lp[j - 1], power) + std::pow(traj.critical_lp[j], power));
  }
  const bool backward = traj.times.back() < traj.times.front();
  const double g_late = backward ? traj.norms.front().h1_dot : traj.norms.back().h1_dot;
  const double g_early = backward ? traj.norms.back().h1_dot : traj.norms.front().h1_dot;
  out.bound = (g_late * g_late - g_early * g_early) / gap;
  out.holds = out.integral <= out.bound * (1.0 + tolerance);
  return out;
}

double energy(const Field& f, const PhysParams& p) {
  const double g = h1_seminorm(f);
  return 0.5 * g * g + p.lambda.real() / (p.alpha + 2.0) * std::pow(lp_norm(f, p.alpha + 2.0), p.alpha + 2.0);
}

std::string trajectory_csv(const TrajectoryRecord& traj) {
  std::ostringstream os;
  os << std::setprecision(12);
  const bool critical = !traj.critical_lp.empty();
  os << "t,l2,h1_dot,h1,l_alpha_plus_2,sigma,weighted_l2,charge_residual,gradient_monotone";
  if (critical) os << ",critical_lp";
  os << '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const NormReport& r = traj.norms[i];
    os << traj.times[i] << ',' << r.l2 << ',' << r.h1_dot << ',' << r.h1 << ','
       << r.l_alpha_plus_2 << ',' << r.sigma << ',' << r.weighted_l2 << ',';
    if (i < traj.charge_identity_residual.size()) os << traj.charge_identity_residual[i];
    os << ',';
    if (i < traj.gradient_monotone_ok.size()) os << (traj.gradient_monotone_ok[i] ? 1 : 0);
    if (critical) os << ',' << traj.critical_lp[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace blowup
