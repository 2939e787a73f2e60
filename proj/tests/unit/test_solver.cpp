#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "blowup/fit.hpp"
#include "blowup/profile.hpp"
#include "blowup/solver.hpp"

using namespace blowup;

namespace {

constexpr double kPi = std::numbers::pi;

Field gaussian(const Grid& g, double amp = 1.0) {
  return Field::sample(g, [amp](double x) { return cplx{amp * std::exp(-x * x), 0.0}; });
}

// Free Schrödinger evolution of e^{-|x|²} in N dimensions:
// (1 + 4it)^{-N/2} exp(-|x|²/(1 + 4it)).
cplx free_gaussian(int dim, double t, double r) {
  const cplx d{1.0, 4.0 * t};
  return std::pow(d, -0.5 * dim) * std::exp(-r * r / d);
}

double max_diff(const Field& a, const Field& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("nonlinear substep: closed-form modulus") {
  const Grid g = Grid::cartesian(16, 1.0);
  const Field one = Field::sample(g, [](double) { return cplx{1.0, 0.0}; });
  const PhysParams p{1, 2.0, {0, 1}, INFINITY};
  const Field out = nonlinear_substep(one, p, -1.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(std::abs(out[i] - cplx{1.0 / std::sqrt(3.0), 0.0}) < 1e-15);
  }
  // forward past the pointwise blow-up time ρ^{-α}/(α Im λ) = 1/2
  CHECK_THROWS_AS(nonlinear_substep(one, p, 0.5), std::domain_error);
  CHECK_NOTHROW(nonlinear_substep(one, p, 0.49));
}

TEST_CASE("nonlinear substep: RK4 oracle for the pointwise ODE") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const PhysParams p{1, 1.5 + u(rng), {u(rng), 1.0 + 0.5 * u(rng)}, INFINITY};
    const cplx z0{u(rng), u(rng)};
    const double dt = -0.3;
    // u' = -iλ|u|^α u integrated with many small RK4 steps
    auto rhs = [&](cplx z) { return cplx{0, -1} * p.lambda * std::pow(std::abs(z), p.alpha) * z; };
    cplx z = z0;
    const int steps = 4000;
    const double h = dt / steps;
    for (int j = 0; j < steps; ++j) {
      const cplx k1 = rhs(z), k2 = rhs(z + 0.5 * h * k1), k3 = rhs(z + 0.5 * h * k2), k4 = rhs(z + h * k3);
      z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const Field f(Grid::cartesian(16, 1.0), std::vector<cplx>(16, z0));
    CHECK(std::abs(nonlinear_substep(f, p, dt)[3] - z) < 1e-11);
  }
}

TEST_CASE("nonlinear substep carries the profile forward exactly") {
  // The profile solves the pointwise ODE, so the nonlinear flow alone maps
  // U(t) to U(t + dt) at every point.
  const PhysParams p{1, 2.0, {0.7, 1.0}, 6.0};
  const Grid g = Grid::cartesian(128, 3.0);
  const Profile prof(p);
  const Field a = prof.sample(g, -0.8);
  const Field b = prof.sample(g, -0.5);
  CHECK(max_diff(nonlinear_substep(a, p, 0.3), b) < 1e-13);
  CHECK(max_diff(nonlinear_substep(b, p, -0.3), a) < 1e-13);
}

TEST_CASE("real lambda: nonlinear substep preserves the modulus") {
  const PhysParams p{1, 3.0, {-2.0, 0.0}, INFINITY};
  const Grid g = Grid::cartesian(64, 3.0);
  const Field f = gaussian(g, 1.3);
  const Field out = nonlinear_substep(f, p, 0.7);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(out[i]) == doctest::Approx(std::abs(f[i])));
}

TEST_CASE("linear substep: single Fourier mode") {
  const Grid g = Grid::cartesian(64, 5.0);
  const double period = g.period();
  for (int m : {1, 3, 10}) {
    const double q = 2 * kPi * m / period;
    const Field f = Field::sample(g, [q](double x) { return std::polar(1.0, q * x); });
    const double dt = -0.37;
    const Field out = linear_substep(f, dt);
    const cplx factor = std::polar(1.0, -q * q * dt);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(out[i] - factor * f[i]) < 1e-12);
  }
}

TEST_CASE("linear substep matches the free gaussian") {
  const Grid g = Grid::cartesian(2048, 60.0);
  const Field f0 = gaussian(g);
  for (double t : {-0.5, 0.25, 1.0}) {
    const Field exact = Field::sample(g, [t](double x) { return free_gaussian(1, t, x); });
    CHECK(max_diff(linear_substep(f0, t), exact) < 1e-8);
  }
}

TEST_CASE("radial Crank-Nicolson: second-order convergence to the free gaussian, N = 3") {
  std::vector<double> dts, errs;
  for (int m : {1, 2, 4}) {
    const Grid g = Grid::radial(3, 4001, 40.0);
    const double dt = 0.04 / m;
    Field f = gaussian(g);
    for (int j = 0; j < 10 * m; ++j) f = linear_substep(f, -dt);
    const Field exact = Field::sample(g, [](double r) { return free_gaussian(3, -0.4, r); });
    dts.push_back(dt);
    errs.push_back(max_diff(f, exact));
  }
  const PowerLawFit fit = fit_power_law(dts, errs);
  CHECK(fit.slope > 1.8);
  CHECK(errs.back() < 1e-3);
}

TEST_CASE("property: linear flow is an L2 isometry and a group") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> nd;
  for (const Grid& g : {Grid::cartesian(64, 4.0), Grid::radial(3, 80, 6.0), Grid::radial(5, 60, 5.0)}) {
    std::vector<cplx> v(g.num_points);
    for (auto& z : v) z = {nd(rng), nd(rng)};
    const Field f(g, v);
    const double dt1 = 0.1 * nd(rng), dt2 = 0.1 * nd(rng);
    const Field once = linear_substep(f, dt1);
    CHECK(lp_norm(once, 2.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-12));
    if (g.mode == GridMode::Cartesian1D) {
      // the spectral flow is exact, so composition is additive in time
      CHECK(max_diff(linear_substep(once, dt2), linear_substep(f, dt1 + dt2)) < 1e-11);
    }
    // Crank–Nicolson steps are inverse to each other in both cases
    CHECK(max_diff(linear_substep(once, -dt1), f) < 1e-10);
  }
}

TEST_CASE("viscosity is refused for forward steps and damps backward") {
  const Grid g = Grid::cartesian(64, 4.0);
  const Field f = gaussian(g);
  CHECK_THROWS_AS(linear_substep(f, 0.1, 0.01), std::invalid_argument);
  const Field damped = linear_substep(f, -0.1, 0.01);
  CHECK(lp_norm(damped, 2.0) < lp_norm(f, 2.0));
}

TEST_CASE("evolve: argument validation") {
  const Grid g = Grid::cartesian(256, 20.0);
  const Field f = gaussian(g, 0.2);
  const PhysParams p{1, 2.0, {0, 1}, INFINITY};
  SolveConfig c;
  c.dt = 1e-3;
  c.t_start = 0.0;
  c.t_end = 0.1;
  CHECK_THROWS_AS(evolve(f, p, c), std::invalid_argument);  // forward without validation mode
  c.validation_mode = true;
  CHECK_NOTHROW(evolve(f, p, c));
  c.t_end = 0.10005;
  CHECK_THROWS_AS(evolve(f, p, c), std::invalid_argument);  // not a multiple of dt
  c.t_end = -0.1;
  c.dt = 10 * max_stable_dt(g);
  CHECK_THROWS_AS(evolve(f, p, c), std::invalid_argument);
  c.dt = 1e-3;
  c.diag_every = 0;
  CHECK_THROWS_AS(evolve(f, p, c), std::invalid_argument);
}

TEST_CASE("evolve: records and Strang second order") {
  const Grid g = Grid::cartesian(256, 20.0);
  const Field f0 = gaussian(g, 0.8);
  const PhysParams p{1, 2.0, {0.5, 1.0}, INFINITY};
  std::vector<Field> finals;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    SolveConfig c;
    c.dt = dt;
    c.t_start = 0.0;
    c.t_end = -0.4;
    c.diag_every = static_cast<int>(std::lround(0.02 / dt));
    const TrajectoryRecord r = evolve(f0, p, c);
    CHECK(r.times.front() == 0.0);
    CHECK(r.times.back() == -0.4);
    CHECK(r.times.size() == 21);
    finals.push_back(r.final_field);
  }
  const double ratio = lp_norm(finals[0] - finals[1], 2.0) / lp_norm(finals[1] - finals[2], 2.0);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("evolve: charge identity and gradient monotonicity in backward time") {
  const Grid g = Grid::cartesian(512, 20.0);
  const Field f0 = gaussian(g, 0.6);
  const PhysParams p{1, 2.0, {0, 1}, INFINITY};
  SolveConfig c;
  c.dt = 1e-3;
  c.t_start = 0.0;
  c.t_end = -0.5;
  c.diag_every = 5;
  const TrajectoryRecord r = evolve(f0, p, c);
  REQUIRE(r.charge_identity_residual.size() == r.times.size());
  for (double e : r.charge_identity_residual) CHECK(e < 1e-4);
  for (bool ok : r.gradient_monotone_ok) CHECK(ok);
  // backward in time the mass decreases: d/dt ½‖u‖² = Im λ ‖u‖⁴₄ > 0
  for (std::size_t j = 1; j < r.norms.size(); ++j) CHECK(r.norms[j].l2 < r.norms[j - 1].l2);
}

TEST_CASE("evolve: real lambda conserves mass and energy") {
  const Grid g = Grid::cartesian(512, 30.0);
  const Field f0 = gaussian(g, 0.7);
  const PhysParams p{1, 2.0, {1.0, 0.0}, INFINITY};
  SolveConfig c;
  c.dt = 1e-3;
  c.t_start = 0.0;
  c.t_end = 0.5;
  c.validation_mode = true;
  const TrajectoryRecord r = evolve(f0, p, c);
  CHECK(r.norms.back().l2 == doctest::Approx(r.norms.front().l2).epsilon(1e-12));
  CHECK(energy(r.final_field, p) == doctest::Approx(energy(f0, p)).epsilon(1e-5));
}

TEST_CASE("critical space-time bound") {
  const PhysParams crit{4, 2.0, {0, 1}, INFINITY};
  SolveConfig c;
  c.dt = 5e-4;
  c.t_start = 0.0;
  c.t_end = -0.1;

  const Grid g = Grid::radial(4, 151, 6.0);
  const TrajectoryRecord zero = evolve(Field::zeros(g), crit, c);
  SpacetimeBound b = critical_spacetime_bound(zero);
  CHECK(b.integral == 0.0);
  CHECK(b.bound == 0.0);
  CHECK(b.holds);
  CHECK(b.lebesgue_exponent == doctest::Approx(8.0));

  const TrajectoryRecord run = evolve(gaussian(g, 0.5), crit, c);
  b = critical_spacetime_bound(run);
  CHECK(b.integral > 0.0);
  CHECK(b.holds);

  const PhysParams sub{3, 2.0, {0, 1}, INFINITY};
  const TrajectoryRecord r3 = evolve(gaussian(Grid::radial(3, 151, 6.0), 0.5), sub, c);
  CHECK_THROWS_AS(critical_spacetime_bound(r3), InapplicableParameters);
}

TEST_CASE("stability bound") {
  const Grid g = Grid::cartesian(1024, 40.0);
  CHECK(max_stable_dt(g) == doctest::Approx(g.spacing * g.spacing / kPi));
}
