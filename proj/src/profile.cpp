#include "blowup/profile.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "blowup/fit.hpp"

namespace blowup {

namespace {

void require_negative_time(double t) {
  if (!(t < 0.0)) throw std::domain_error("profile is only defined for t < 0");
}

// r^e, with the convention that a vanishing coefficient kills the term even
// where r^e is singular at the origin.
double rpow(double r, double e, double coeff) {
  if (coeff == 0.0) return 0.0;
  return std::pow(r, e);
}

cplx spow(double s, cplx e) { return std::exp(e * std::log(s)); }

double euclidean_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

Profile::Profile(const PhysParams& params) : p_(params) {
  check_well_formed(p_);
  if (!(p_.lambda.imag() > 0.0)) {
    throw std::invalid_argument("the blow-up profile needs Im(lambda) > 0");
  }
  if (!std::isfinite(p_.k)) throw std::invalid_argument("the blow-up profile needs a finite k");
  g_ = p_.alpha * p_.lambda.imag();
  c_ = cplx{-1.0 / p_.alpha, p_.lambda.real() / g_};
}

double Profile::base(double t, double r) const {
  require_negative_time(t);
  return g_ * (std::pow(r, p_.k) - t);
}

cplx Profile::value(double t, double r) const { return spow(base(t, r), c_); }

cplx Profile::radial_derivative(double t, double r) const {
  const double s = base(t, r);
  const double gk = g_ * p_.k;
  return c_ * gk * spow(s, c_ - 1.0) * rpow(r, p_.k - 1.0, gk);
}

cplx Profile::time_derivative(double t, double r) const {
  return -g_ * c_ * spow(base(t, r), c_ - 1.0);
}

cplx Profile::laplacian(double t, double r) const {
  const double s = base(t, r);
  const double gk = g_ * p_.k;
  const double k = p_.k;
  const double lin = k + p_.dim - 2.0;
  return c_ * (c_ - 1.0) * gk * gk * spow(s, c_ - 2.0) * rpow(r, 2.0 * k - 2.0, 1.0) +
         c_ * gk * lin * spow(s, c_ - 1.0) * rpow(r, k - 2.0, lin);
}

cplx Profile::laplacian_radial_derivative(double t, double r) const {
  const double s = base(t, r);
  const double gk = g_ * p_.k;
  const double k = p_.k;
  const double lin = k + p_.dim - 2.0;
  const cplx quad = c_ * (c_ - 1.0) * gk * gk;
  const cplx t1 = quad * ((c_ - 2.0) * gk * spow(s, c_ - 3.0) * rpow(r, 3.0 * k - 3.0, 1.0) +
                          (2.0 * k - 2.0) * spow(s, c_ - 2.0) * rpow(r, 2.0 * k - 3.0, 2.0 * k - 2.0));
  const cplx t2 = c_ * gk * lin *
                  ((c_ - 1.0) * gk * spow(s, c_ - 2.0) * rpow(r, 2.0 * k - 3.0, 1.0) +
                   (k - 2.0) * spow(s, c_ - 1.0) * rpow(r, k - 3.0, (k - 2.0) * lin));
  return t1 + t2;
}

Field Profile::sample(const Grid& grid, double t) const {
  return Field::sample(grid, [&](double x) { return value(t, std::abs(x)); }, t);
}

cplx profile_value(const PhysParams& p, double t, std::span<const double> x) {
  return Profile(p).value(t, euclidean_norm(x));
}

cplx profile_value(const PhysParams& p, double t, double r) {
  return Profile(p).value(t, std::abs(r));
}

std::vector<cplx> profile_gradient(const PhysParams& p, double t, std::span<const double> x) {
  const double r = euclidean_norm(x);
  std::vector<cplx> grad(x.size());
  if (r == 0.0) {
    require_negative_time(t);
    return grad;
  }
  const cplx dr = Profile(p).radial_derivative(t, r);
  for (std::size_t i = 0; i < x.size(); ++i) grad[i] = dr * (x[i] / r);
  return grad;
}

double profile_ode_residual(const PhysParams& p, double t, double r) {
  const Profile prof(p);
  const cplx u = prof.value(t, r);
  const cplx ut = prof.time_derivative(t, r);
  return std::abs(cplx{0.0, 1.0} * ut - p.lambda * std::pow(std::abs(u), p.alpha) * u);
}

double profile_ode_residual_fd(const PhysParams& p, double t, double r, double dt) {
  const Profile prof(p);
  const cplx u = prof.value(t, r);
  const cplx ut = (prof.value(t + dt, r) - prof.value(t - dt, r)) / (2.0 * dt);
  return std::abs(cplx{0.0, 1.0} * ut - p.lambda * std::pow(std::abs(u), p.alpha) * u);
}

const char* to_string(ProfileQuantity q) {
  switch (q) {
    case ProfileQuantity::Lp: return "Lp";
    case ProfileQuantity::GradLp: return "GradLp";
    case ProfileQuantity::LapL2: return "LapL2";
    case ProfileQuantity::GradLapL2: return "GradLapL2";
    case ProfileQuantity::WeightedLapL2: return "WeightedLapL2";
  }
  return "?";
}

double profile_quantity_norm(const PhysParams& p, ProfileQuantity q, double lp_exponent, double t,
                             const Grid& grid) {
  require_negative_time(t);
  const Profile prof(p);
  double exponent = 2.0;
  if (q == ProfileQuantity::Lp || q == ProfileQuantity::GradLp) exponent = lp_exponent;
  if (q == ProfileQuantity::Lp && std::isfinite(exponent) &&
      !(p.k > p.dim * p.alpha / exponent)) {
    throw std::domain_error("non-integrable tail: need k > N alpha / p");
  }
  auto sample = [&](double r) -> double {
    switch (q) {
      case ProfileQuantity::Lp: return std::abs(prof.value(t, r));
      case ProfileQuantity::GradLp: return std::abs(prof.radial_derivative(t, r));
      case ProfileQuantity::LapL2: return std::abs(prof.laplacian(t, r));
      case ProfileQuantity::GradLapL2: return std::abs(prof.laplacian_radial_derivative(t, r));
      case ProfileQuantity::WeightedLapL2: return (1.0 + r) * std::abs(prof.laplacian(t, r));
    }
    return 0.0;
  };
  if (std::isinf(exponent)) {
    double m = 0.0;
    for (std::size_t i = 0; i < grid.num_points; ++i) {
      m = std::max(m, sample(std::abs(grid.coordinate(i))));
    }
    return m;
  }
  const auto w = grid.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.num_points; ++i) {
    sum += w[i] * std::pow(sample(std::abs(grid.coordinate(i))), exponent);
  }
  const double norm = std::pow(sum, 1.0 / exponent);
  if (!std::isfinite(norm)) throw std::runtime_error("profile norm is not finite");
  return norm;
}

double profile_norm(const PhysParams& p, double t, double lp_exponent, const Grid& grid) {
  return profile_quantity_norm(p, ProfileQuantity::Lp, lp_exponent, t, grid);
}

double predicted_profile_slope(const ExponentTable& table, ProfileQuantity q, double lp_exponent) {
  switch (q) {
    case ProfileQuantity::Lp: return table.profile_lp(lp_exponent);
    case ProfileQuantity::GradLp: return table.profile_grad_lp(lp_exponent);
    case ProfileQuantity::LapL2: return table.profile_lap_l2();
    case ProfileQuantity::GradLapL2: return table.profile_gradlap_l2();
    case ProfileQuantity::WeightedLapL2: return table.profile_lap_l2();
  }
  return 0.0;
}

Grid profile_grid(const PhysParams& p, std::span<const double> t_list, double lp_exponent,
                  double tail_tol) {
  if (t_list.empty()) throw std::invalid_argument("profile_grid: empty time list");
  const Profile prof(p);
  double t_min_abs = std::numeric_limits<double>::infinity();
  double t_max_abs = 0.0;
  for (double t : t_list) {
    if (!(t < 0.0)) throw std::domain_error("profile_grid: times must be negative");
    t_min_abs = std::min(t_min_abs, -t);
    t_max_abs = std::max(t_max_abs, -t);
  }
  const double n = p.dim;
  const double g = p.alpha * p.lambda.imag();
  double radius = 8.0 * std::pow(t_max_abs, 1.0 / p.k);

  // |U|^q <= g^{-q/α} r^{-qk/α}; the tail beyond R is then at most
  // S g^{-q/α} R^{N - qk/α} / (qk/α - N). Compare with the mass of the
  // core ball |x| <= (-t)^{1/k}, where |U|^q >= (2g(-t))^{-q/α}.
  const double q = std::isinf(lp_exponent) ? 2.0 : lp_exponent;
  const double decay = q * p.k / p.alpha;
  if (decay > n) {
    const double s = unit_sphere_area(p.dim);
    for (double t : t_list) {
      const double core = std::pow(2.0 * g * (-t), -q / p.alpha) * s / n *
                          std::pow(-t, n / p.k);
      const double target = tail_tol * core * (decay - n) / (s * std::pow(g, -q / p.alpha));
      radius = std::max(radius, std::pow(target, 1.0 / (n - decay)));
    }
  }
  const double spacing = std::pow(t_min_abs, 1.0 / p.k) / 400.0;
  const auto half = static_cast<std::size_t>(std::ceil(radius / spacing));
  const std::size_t capped = std::min<std::size_t>(half, 200000);
  if (p.dim == 1) return Grid::cartesian(2 * capped + 1, capped * spacing);
  return Grid::radial(p.dim, capped + 1, capped * spacing);
}

ScalingFit verify_scaling(const PhysParams& p, ProfileQuantity q, std::span<const double> t_list,
                          double lp_exponent) {
  if (t_list.size() < 2) throw std::invalid_argument("verify_scaling needs at least two times");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double t : t_list) {
    if (!(t < 0.0)) throw std::domain_error("verify_scaling: times must be negative");
    lo = std::min(lo, -t);
    hi = std::max(hi, -t);
  }
  if (hi < 10.0 * lo * (1.0 - 1e-12)) {
    throw std::invalid_argument("verify_scaling: times must span at least one decade of -t");
  }
  const Grid grid = profile_grid(p, t_list, lp_exponent);
  ScalingFit fit;
  fit.quantity = q;
  fit.p = lp_exponent;
  fit.predicted_slope = predicted_profile_slope(exponent_table(p), q, lp_exponent);
  std::vector<double> abscissa;
  for (double t : t_list) {
    const double v = profile_quantity_norm(p, q, lp_exponent, t, grid);
    if (!std::isfinite(v)) throw std::runtime_error("verify_scaling: non-finite norm");
    fit.times.push_back(t);
    fit.norms.push_back(v);
    abscissa.push_back(-t);
  }
  const PowerLawFit pl = fit_power_law(abscissa, fit.norms);
  fit.fitted_slope = pl.slope;
  fit.log_prefactor = pl.log_prefactor;
  fit.residual = pl.residual;
  return fit;
}

std::string scaling_fit_csv(const ScalingFit& fit) {
  std::ostringstream os;
  os << std::setprecision(12) << "t,norm,predicted,fitted\n";
  if (fit.times.empty()) return os.str();
  const double t0 = -fit.times.front();
  const double n0 = fit.norms.front();
  for (std::size_t i = 0; i < fit.times.size(); ++i) {
    const double mt = -fit.times[i];
    const double predicted = n0 * std::pow(mt / t0, fit.predicted_slope);
    const double fitted = std::exp(fit.log_prefactor) * std::pow(mt, fit.fitted_slope);
    os << fit.times[i] << ',' << fit.norms[i] << ',' << predicted << ',' << fitted << '\n';
  }
  return os.str();
}

}  // namespace blowup
