#include "blowup/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace blowup {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-9;

bool approx_equal(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= kRelTol * std::max({1.0, std::abs(a), std::abs(b)});
}

bool le_tol(double a, double b) { return a <= b || approx_equal(a, b); }

}  // namespace

void check_well_formed(const PhysParams& p) {
  if (p.dim < 1 || p.dim > 5) {
    throw std::invalid_argument("dimension N must be in 1..5, got " + std::to_string(p.dim));
  }
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
    throw std::invalid_argument("alpha must be a finite positive number");
  }
  if (p.lambda == std::complex<double>{0.0, 0.0} || !std::isfinite(p.lambda.real()) ||
      !std::isfinite(p.lambda.imag())) {
    throw std::invalid_argument("lambda must be finite and nonzero");
  }
  if (!(p.k > 0.0)) {
    throw std::invalid_argument("k must be positive");
  }
}

double critical_power(int dim) { return dim <= 2 ? kInf : 4.0 / (dim - 2); }
double low_power_limit(int dim) { return dim <= 2 ? kInf : static_cast<double>(dim) / (dim - 2); }
double a2_limit(int dim) { return dim <= 2 ? kInf : (dim + 2.0) / (dim - 2); }

bool is_critical_power(int dim, double alpha) {
  return dim >= 3 && approx_equal(alpha, critical_power(dim));
}

AdmissibilityReport validate_assumptions(const PhysParams& p) {
  check_well_formed(p);
  AdmissibilityReport r;
  const double a = p.alpha;
  r.subcritical_or_critical = le_tol(a, critical_power(p.dim));
  r.alpha_above_one = a > 1.0 && !approx_equal(a, 1.0);

  // (α+2) Im λ  vs  α|λ|, compared with a relative tolerance so that the
  // equality case survives decimal round-off in configuration files.
  const double lhs = (a + 2.0) * p.lambda.imag();
  const double rhs = a * std::abs(p.lambda);
  const double gap = lhs - rhs;
  const double tol = kRelTol * std::max(std::abs(lhs), std::abs(rhs));
  r.weak_coeff_ok = gap >= -tol;
  r.strict_coeff_ok = gap > tol;

  r.strict_required = (a > low_power_limit(p.dim) && !approx_equal(a, low_power_limit(p.dim))) ||
                      is_critical_power(p.dim, a);
  r.theorem_applies = r.subcritical_or_critical && r.alpha_above_one && r.weak_coeff_ok &&
                      (!r.strict_required || r.strict_coeff_ok);
  return r;
}

std::string AdmissibilityReport::explanation() const {
  std::ostringstream os;
  if (!alpha_above_one) os << "power must satisfy 1 < alpha\n";
  if (!subcritical_or_critical) os << "power must satisfy alpha <= 4/(N-2)\n";
  if (!weak_coeff_ok) os << "coefficient must satisfy (alpha+2) Im(lambda) >= alpha |lambda|\n";
  if (weak_coeff_ok && strict_required && !strict_coeff_ok) {
    os << "strict inequality required: (alpha+2) Im(lambda) > alpha |lambda| "
          "when alpha > N/(N-2) or alpha = 4/(N-2)\n";
  }
  return os.str();
}

bool condition_A2(const PhysParams& p) {
  return p.alpha > 1.0 && p.alpha < a2_limit(p.dim) && !approx_equal(p.alpha, a2_limit(p.dim));
}

PowerCase power_case(double alpha, int dim) {
  if (alpha > 1.0 && le_tol(alpha, low_power_limit(dim))) return PowerCase::LowPower;
  if (alpha >= 2.0 && le_tol(alpha, critical_power(dim))) return PowerCase::HighPower;
  std::ostringstream os;
  os << "alpha = " << alpha << " lies outside both 1 < alpha <= N/(N-2) and "
     << "2 <= alpha <= 4/(N-2) for N = " << dim;
  throw std::invalid_argument(os.str());
}

const char* to_string(PowerCase c) {
  return c == PowerCase::LowPower ? "LowPower" : "HighPower";
}

double ExponentTable::profile_lp(double p) const {
  return -1.0 / alpha + dim / (p * k);
}
double ExponentTable::profile_grad_lp(double p) const {
  return -1.0 / alpha - 1.0 / k + dim / (p * k);
}
double ExponentTable::profile_lap_l2() const {
  return -1.0 / alpha - 2.0 / k + dim / (2.0 * k);
}
double ExponentTable::profile_gradlap_l2() const {
  return -1.0 / alpha - 3.0 / k + dim / (2.0 * k);
}

ExponentTable exponent_table(const PhysParams& p) {
  check_well_formed(p);
  ExponentTable t;
  t.dim = p.dim;
  t.alpha = p.alpha;
  t.k = p.k;
  const double a = p.alpha;
  const double n = p.dim;
  const double inv_k = 1.0 / p.k;

  t.mu1 = 1.0 - 1.0 / a - (4.0 - n) / 2.0 * inv_k;
  t.mu2 = t.mu1 * (a - n * (a - 1.0) / 2.0) - 1.0 / a - inv_k;
  // Two terms of the weighted-gradient bound: ‖ε‖²‖U‖∞^{α-2}‖∇U‖∞² and,
  // after Gagliardo–Nirenberg, ‖ε‖₂^{(2N-α(N-2))/2}‖∇U‖∞².
  t.mu3 = std::min(2.0 * t.mu1 - 1.0 - 2.0 * inv_k,
                   t.mu1 * (2.0 * n - a * (n - 2.0)) / 2.0 - 2.0 / a - 2.0 * inv_k);
  t.mu4 = -1.0 / a - (6.0 - n) / 2.0 * inv_k;

  // μ₃ comes from the α >= 2 branch of the argument only.
  bool use_mu3 = true;
  try {
    use_mu3 = power_case(a, p.dim) == PowerCase::HighPower;
  } catch (const std::invalid_argument&) {
    use_mu3 = true;
  }
  t.mu3_in_mu5 = use_mu3;
  t.mu5 = use_mu3 ? std::min({t.mu2, t.mu3, t.mu4}) : std::min(t.mu2, t.mu4);
  t.h1dot_rate = (t.mu5 + 1.0) / 2.0;
  t.predicted_mu = std::min(t.mu1, t.h1dot_rate);
  return t;
}

double min_admissible_k(int dim, double alpha, std::span<const double> p_list, double max_k) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (dim < 1 || dim > 5) throw std::invalid_argument("dimension N must be in 1..5");
  for (double k = 2.0; k <= max_k; k += 2.0) {
    const bool tails_ok = std::all_of(p_list.begin(), p_list.end(), [&](double p) {
      return std::isinf(p) || p * k / alpha > dim;
    });
    if (!tails_ok) continue;
    PhysParams trial{dim, alpha, {0.0, 1.0}, k};
    const ExponentTable t = exponent_table(trial);
    if (t.mu1 > 0.0 && t.mu1 < 1.0 && t.mu5 > -1.0) return k;
  }
  std::ostringstream os;
  os << "no even k <= " << max_k << " makes the profile admissible for N = " << dim
     << ", alpha = " << alpha;
  throw std::domain_error(os.str());
}

double min_admissible_k(int dim, double alpha, std::initializer_list<double> p_list) {
  const std::vector<double> ps(p_list);
  return min_admissible_k(dim, alpha, std::span<const double>(ps));
}

}  // namespace blowup
