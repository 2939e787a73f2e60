#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowup/field.hpp"
#include "blowup/params.hpp"

namespace blowup {

class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InapplicableParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Scheme { StrangSplit, LieSplit };
const char* to_string(Scheme s);

struct SolveConfig {
  double dt = 1e-3;
  double t_start = 0.0;
  double t_end = -1.0;
  Scheme scheme = Scheme::StrangSplit;
  /// Viscous regularisation; damps high modes in backward time. Forward runs
  /// require 0.
  double viscosity_eps = 0.0;
  int diag_every = 1;
  /// Permits t_end > t_start (small data, short horizons only).
  bool validation_mode = false;
};

struct TrajectoryRecord {
  PhysParams params;
  double dt = 0;
  std::vector<double> times;
  std::vector<NormReport> norms;
  /// ‖u‖ in L^q, q = N(α+2)/(N-2); filled for N >= 3 only.
  std::vector<double> critical_lp;
  std::vector<double> charge_identity_residual;
  std::vector<bool> gradient_monotone_ok;
  Field final_field;
};

/// Largest dt for which the highest resolved linear mode turns by at most π
/// per step: h²/π. Both substeps are unconditionally stable; this is the
/// accuracy limit enforced by evolve.
double max_stable_dt(const Grid& grid);

/// Exact flow of u_t = -iλ|u|^α u over dt_sub, pointwise:
/// u ↦ u (1 - α Im λ |u|^α dt)^{c}, c = -1/α + i Re λ/(α Im λ).
/// Throws std::domain_error when a forward step reaches the pointwise
/// blow-up time.
Field nonlinear_substep(const Field& f, const PhysParams& p, double dt_sub);

/// Exact (spectral, Cartesian) or Crank–Nicolson (radial) flow of
/// u_t = (i - ε) Δu over dt_sub. An L² isometry at ε = 0.
Field linear_substep(const Field& f, double dt_sub, double viscosity_eps = 0.0);

using RecordObserver = std::function<void(const Field&)>;

/// Integrates i u_t + Δu = λ|u|^α u from cfg.t_start to cfg.t_end, recording
/// norms every diag_every steps (and at both ends). The observer sees the
/// field at every recorded time. Throws NonFiniteError if a norm blows up.
TrajectoryRecord evolve(const Field& f0, const PhysParams& p, const SolveConfig& cfg,
                        const RecordObserver& observer = {});

/// Relative discrepancy in d/dt ½‖u‖² = Im λ ‖u‖_{α+2}^{α+2}, one entry per
/// recorded time (centred differences, one-sided four-point at the ends). For real λ the
/// normalisation is ½‖u‖² instead.
std::vector<double> charge_identity_residual(const TrajectoryRecord& traj);

/// One flag per recorded time: ‖∇u‖ at the earlier of two consecutive times
/// does not exceed the later one by more than dt² relative.
std::vector<bool> gradient_monotonicity_check(const TrajectoryRecord& traj);

struct SpacetimeBound {
  double integral = 0;
  double bound = 0;
  double lebesgue_exponent = 0;
  bool holds = false;
};

/// ∫ ‖u(t)‖_{L^q}^{α+2} dt over the run against
/// (‖∇u(later)‖² - ‖∇u(earlier)‖²) / ((α+2) Im λ - α|λ|).
/// Throws InapplicableParameters outside N >= 3, α = 4/(N-2) with the strict
/// coefficient inequality.
SpacetimeBound critical_spacetime_bound(const TrajectoryRecord& traj, double tolerance = 0.05);

/// ½‖∇u‖² + Re λ/(α+2) ‖u‖_{α+2}^{α+2}.
double energy(const Field& f, const PhysParams& p);

/// CSV: t,l2,h1_dot,h1,l_alpha_plus_2,sigma,weighted_l2,charge_residual,
/// gradient_monotone[,critical_lp].
std::string trajectory_csv(const TrajectoryRecord& traj);

}  // namespace blowup
