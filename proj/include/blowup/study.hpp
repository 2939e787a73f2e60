#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blowup/field.hpp"
#include "blowup/params.hpp"
#include "blowup/profile.hpp"
#include "blowup/solver.hpp"

namespace blowup {

/// The sequence of Cauchy problems u_n(T_n) = U(T_n), T_n = -1/n, each solved
/// backward over [T_n - δ, T_n].
struct StudyConfig {
  PhysParams params;
  std::vector<int> n_list{4, 8, 16};
  double delta = 0.1;
  double dt = 1e-4;
  /// Rate fits use T_n - t in [fit_lo δ, fit_hi δ].
  double fit_lo = 0.05;
  double fit_hi = 0.95;
  Grid grid = Grid::cartesian(1024, 20.0);
  int diag_every = 10;
  Scheme scheme = Scheme::StrangSplit;
  double viscosity_eps = 0.0;
  /// Also run dt/2 and dt/4 for a self-convergence certificate.
  bool self_convergence = true;
  /// Worker threads for independent trajectories; 0 reads BLOWUP_WORKERS.
  int workers = 0;
};

inline double initial_time(int n) { return -1.0 / n; }

/// δ = |T_{n_max}| / 2 when the caller does not fix it.
double default_delta(const std::vector<int>& n_list);

/// Grid for the study: Cartesian for N = 1 (periodic, with |U| at the edge
/// below 1e-3 of the centre at every time of every window), radial otherwise.
Grid default_study_grid(const PhysParams& p, const std::vector<int>& n_list, double delta,
                        std::size_t num_points = 1024);

class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument on malformed configs (Im λ <= 0, bad window,
/// decreasing n_list) and ResolutionError when the grid cannot carry the
/// data (edge amplitude, gradient scale below 4 spacings).
void validate_study(const StudyConfig& cfg);

/// Smallest |U|/|∂_r U| over the grid nodes at time t.
double profile_gradient_scale(const Profile& prof, const Grid& grid, double t);

struct EpsilonTrajectory {
  int n = 0;
  double t_n = 0;
  double delta = 0;
  /// Norms of u_n.
  TrajectoryRecord solution;
  /// Norms of ε_n = u_n - U at the same times.
  std::vector<double> times;
  std::vector<NormReport> eps_norms;
  /// ε_n at every recorded time (empty when snapshots were not kept).
  std::vector<Field> snapshots;
};

EpsilonTrajectory run_epsilon_trajectory(const StudyConfig& cfg, int n, bool keep_snapshots = true);

enum class RateQuantity { EpsL2, EpsH1dot, EpsH1, EpsWeighted };
const char* to_string(RateQuantity q);

struct RateFit {
  RateQuantity quantity = RateQuantity::EpsL2;
  double fitted_exponent = 0;
  std::optional<double> predicted_exponent;
  /// Least-squares prefactor exp(intercept).
  double prefactor = 0;
  double fit_residual = 0;
  /// Smallest C with ‖·‖ <= C (T_n - t)^e over the fit window, e the
  /// predicted exponent (fitted when none is predicted).
  double bound_constant = 0;
  std::size_t points = 0;
  bool skipped = false;
};

/// Fits over the configured window. Throws std::invalid_argument on fewer
/// than 8 points in the window. A trajectory with ε ≡ 0 yields skipped fits.
std::vector<RateFit> fit_rates(const EpsilonTrajectory& traj, const ExponentTable& predicted,
                               double fit_lo = 0.05, double fit_hi = 0.95);

const RateFit& find_fit(const std::vector<RateFit>& fits, RateQuantity q);

/// η_n(s) = ε_n(T_n - s).
struct ReversedTrajectory {
  std::vector<double> s;
  std::vector<Field> eta;
};
ReversedTrajectory time_reversed(const EpsilonTrajectory& traj);

/// Relative residual of ∂_s η = -iΔη + iλ(|V+η|^α(V+η) - |V|^α V) - iΔV,
/// V(s) = U(T_n - s), at interior snapshots (centred differences in s).
std::vector<double> eta_equation_residual(const EpsilonTrajectory& traj);

struct CauchyDiagnostic {
  double tau = 0;
  std::vector<std::pair<int, int>> pairs;
  /// sup over s in [τ, δ] of ‖η_n(s) - η_m(s)‖_{L²} for consecutive members.
  std::vector<double> pair_gaps;
};

CauchyDiagnostic cauchy_diagnostic(const std::vector<EpsilonTrajectory>& trajectories, double tau);

/// Largest δ' <= δ such that the L² bound constants C₁(n) over
/// [T_n - δ', T_n] differ by less than a factor 2 across the runs; 0 when none.
double uniform_delta_probe(const std::vector<EpsilonTrajectory>& trajectories,
                           const ExponentTable& predicted, double fit_lo = 0.05);

/// C₁(n) for each run over the full window.
std::vector<double> l2_bound_constants(const std::vector<EpsilonTrajectory>& trajectories,
                                       const ExponentTable& predicted, double fit_lo = 0.05,
                                       double fit_hi = 0.95);

struct SelfConvergence {
  int n = 0;
  double err_coarse = 0;  // ‖u_dt - u_{dt/2}‖
  double err_fine = 0;    // ‖u_{dt/2} - u_{dt/4}‖
  double ratio = 0;
  /// EpsH1 exponent at dt and dt/2.
  double h1_exponent_dt = 0;
  double h1_exponent_half = 0;
};

SelfConvergence strang_self_convergence(const StudyConfig& cfg, int n);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunSummary {
  int n = 0;
  double t_n = 0;
  std::vector<RateFit> fits;
  double l2_bound_constant = 0;
  double max_charge_residual = 0;
  bool gradient_monotone = true;
  bool eps_zero_at_start = true;
  std::optional<SpacetimeBound> critical;
  std::optional<SelfConvergence> convergence;
};

struct StudyReport {
  StudyConfig config;
  AdmissibilityReport admissibility;
  ExponentTable exponents;
  std::vector<RunSummary> runs;
  std::vector<double> bound_constants;
  double uniform_delta = 0;
  CauchyDiagnostic cauchy;
  std::vector<ScalingFit> profile_scaling;
  std::vector<CheckResult> checks;
  std::vector<EpsilonTrajectory> trajectories;

  bool all_passed() const;
};

/// Runs the whole construction and evaluates every check. Throws
/// std::invalid_argument for Im λ <= 0 (use evolve in validation mode).
StudyReport blowup_report(const StudyConfig& cfg);

/// Number of worker threads: cfg value if positive, else BLOWUP_WORKERS, else
/// hardware concurrency.
int resolve_workers(int requested);

}  // namespace blowup
