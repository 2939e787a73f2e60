#pragma once

#include <complex>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>

namespace blowup {

/// Problem data for  i u_t + Δu = λ|u|^α u  on R^N together with the
/// steepness k of the blow-up profile.
struct PhysParams {
  int dim = 1;
  double alpha = 2.0;
  std::complex<double> lambda{0.0, 1.0};
  double k = std::numeric_limits<double>::infinity();

  double lambda_re() const { return lambda.real(); }
  double lambda_im() const { return lambda.imag(); }
};

/// Throws std::invalid_argument unless 1 <= dim <= 5, alpha > 0, lambda != 0
/// and k > 0.
void check_well_formed(const PhysParams& p);

struct AdmissibilityReport {
  bool subcritical_or_critical = false;  // 0 < α <= 4/(N-2)
  bool alpha_above_one = false;          // 1 < α
  bool weak_coeff_ok = false;            // (α+2) Im λ >= α|λ|
  bool strict_coeff_ok = false;          // (α+2) Im λ >  α|λ|
  bool strict_required = false;          // α > N/(N-2) or α = 4/(N-2)
  bool theorem_applies = false;

  /// Human-readable list of failed conditions; empty when theorem_applies.
  std::string explanation() const;
};

AdmissibilityReport validate_assumptions(const PhysParams& p);

/// 4/(N-2), or +inf for N <= 2.
double critical_power(int dim);
/// N/(N-2), or +inf for N <= 2.
double low_power_limit(int dim);
/// (N+2)/(N-2), or +inf for N <= 2.
double a2_limit(int dim);

/// True iff α equals 4/(N-2) up to a relative 1e-9 (N >= 3 only).
bool is_critical_power(int dim, double alpha);

/// 1 < α < (N+2)/(N-2).
bool condition_A2(const PhysParams& p);

enum class PowerCase { LowPower, HighPower };

/// LowPower for 1 < α <= N/(N-2), HighPower for 2 <= α <= 4/(N-2); the
/// overlap resolves to LowPower. Throws std::invalid_argument otherwise.
PowerCase power_case(double alpha, int dim);

const char* to_string(PowerCase c);

/// Closed-form exponents of the construction. All are affine (or a min of
/// affine maps) in 1/k, so k = +inf gives the k -> inf limit.
struct ExponentTable {
  int dim = 1;
  double alpha = 2.0;
  double k = std::numeric_limits<double>::infinity();

  double mu1 = 0;
  double mu2 = 0;
  double mu3 = 0;
  double mu4 = 0;
  double mu5 = 0;
  double predicted_mu = 0;
  /// Ḣ¹ rate obtained by integrating the gradient differential inequality.
  double h1dot_rate = 0;
  /// Whether μ₃ entered μ₅ (only in the high-power case).
  bool mu3_in_mu5 = false;

  /// ‖U(t)‖_{L^p} ~ (-t)^{profile_lp(p)}; p may be +inf.
  double profile_lp(double p) const;
  double profile_grad_lp(double p) const;
  double profile_lap_l2() const;
  double profile_gradlap_l2() const;
};

ExponentTable exponent_table(const PhysParams& p);

/// Smallest even k such that |U| ∈ L^p for every p in p_list, μ₁ ∈ (0,1)
/// and μ₅ > -1. Throws std::domain_error when no k up to max_k qualifies.
double min_admissible_k(int dim, double alpha, std::span<const double> p_list,
                        double max_k = 4096);
double min_admissible_k(int dim, double alpha, std::initializer_list<double> p_list);

}  // namespace blowup
