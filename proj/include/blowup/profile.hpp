#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "blowup/field.hpp"
#include "blowup/params.hpp"

namespace blowup {

/// The explicit blow-up profile
///
///     U(t, x) = s^c,   s = α Im λ (|x|^k − t),   c = −1/α + i Re λ / (α Im λ),
///
/// which solves the pointwise ODE  i U_t = λ |U|^α U  with blow-up time |x|^k.
/// s > 0 for t < 0, so the power uses the principal branch of a positive
/// real base. All evaluators throw std::domain_error for t >= 0 and
/// std::invalid_argument when Im λ <= 0.
class Profile {
 public:
  explicit Profile(const PhysParams& params);

  const PhysParams& params() const { return p_; }
  cplx exponent() const { return c_; }
  /// s(t, r) = α Im λ (r^k − t).
  double base(double t, double r) const;

  cplx value(double t, double r) const;
  /// ∂U/∂r; the gradient is (∂U/∂r) x / r.
  cplx radial_derivative(double t, double r) const;
  cplx time_derivative(double t, double r) const;
  cplx laplacian(double t, double r) const;
  /// ∂(ΔU)/∂r.
  cplx laplacian_radial_derivative(double t, double r) const;

  /// Samples U(t, ·) on a grid (r = |x|).
  Field sample(const Grid& grid, double t) const;

 private:
  PhysParams p_;
  double g_ = 0;  // α Im λ
  cplx c_;
};

cplx profile_value(const PhysParams& p, double t, std::span<const double> x);
cplx profile_value(const PhysParams& p, double t, double r);
/// Analytic ∇U at x.
std::vector<cplx> profile_gradient(const PhysParams& p, double t, std::span<const double> x);

/// |iU_t − λ|U|^α U| with the analytic U_t.
double profile_ode_residual(const PhysParams& p, double t, double r);
/// Same residual with a centred finite difference of step dt for U_t.
double profile_ode_residual_fd(const PhysParams& p, double t, double r, double dt);

enum class ProfileQuantity { Lp, GradLp, LapL2, GradLapL2, WeightedLapL2 };
const char* to_string(ProfileQuantity q);

/// ‖U(t)‖_{L^p} by quadrature on the grid (p may be +inf). Throws
/// std::domain_error when k <= Nα/p (non-integrable tail).
double profile_norm(const PhysParams& p, double t, double lp_exponent, const Grid& grid);

/// Any of the profile quantities by quadrature of the analytic fields.
double profile_quantity_norm(const PhysParams& p, ProfileQuantity q, double lp_exponent, double t,
                             const Grid& grid);

/// Predicted log-log slope of a quantity in (−t).
double predicted_profile_slope(const ExponentTable& table, ProfileQuantity q, double lp_exponent);

/// Grid (Cartesian for N = 1, radial otherwise) wide enough that the L^p tail
/// beyond the radius, bounded analytically, is below tail_tol of the norm at
/// every t in t_list, and fine enough to resolve the core at the smallest |t|.
Grid profile_grid(const PhysParams& p, std::span<const double> t_list, double lp_exponent,
                  double tail_tol = 1e-6);

struct ScalingFit {
  ProfileQuantity quantity = ProfileQuantity::Lp;
  double p = 2.0;
  double fitted_slope = 0;
  double predicted_slope = 0;
  double residual = 0;
  double log_prefactor = 0;
  std::vector<double> times;
  std::vector<double> norms;
};

/// Least-squares slope of log‖·‖ against log(−t) over t_list.
ScalingFit verify_scaling(const PhysParams& p, ProfileQuantity q, std::span<const double> t_list,
                          double lp_exponent = 2.0);

/// CSV with columns t,norm,predicted,fitted. The predicted column is the
/// predicted power law anchored at the first time.
std::string scaling_fit_csv(const ScalingFit& fit);

}  // namespace blowup
