#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include <unistd.h>

#include "doctest.h"

#include "blowup/field.hpp"
#include "blowup/fit.hpp"

using namespace blowup;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

Field gaussian(const Grid& g, double a = 1.0) {
  return Field::sample(g, [a](double x) { return cplx{std::exp(-a * x * x), 0.0}; });
}

// ∫_0^∞ r^m e^{-b r²} dr = Γ((m+1)/2) / (2 b^{(m+1)/2})
double gauss_moment(int m, double b) {
  return std::tgamma(0.5 * (m + 1)) / (2.0 * std::pow(b, 0.5 * (m + 1)));
}

double max_error(const Field& f, const Field& g, double r_max) {
  double err = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.grid().coordinate(i) > r_max) continue;
    err = std::max(err, std::abs(f[i] - g[i]));
  }
  return err;
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("blowup_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("grid geometry") {
  const Grid c = Grid::cartesian(101, 5.0);
  CHECK(c.spacing == doctest::Approx(0.1));
  CHECK(c.coordinate(0) == doctest::Approx(-5.0));
  CHECK(c.coordinate(100) == doctest::Approx(5.0));
  CHECK(c.period() == doctest::Approx(10.1));

  const Grid r = Grid::radial(3, 21, 1.0);
  CHECK(r.coordinate(0) == 0.0);
  double vol = 0;
  for (double w : r.weights()) vol += w;
  // control volumes tile the ball exactly
  CHECK(vol == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-13));
  CHECK(unit_sphere_area(1) == doctest::Approx(2.0));
  CHECK(unit_sphere_area(2) == doctest::Approx(2 * kPi));
  CHECK(unit_sphere_area(3) == doctest::Approx(4 * kPi));
}

TEST_CASE("gaussian norms against closed forms, 1-D") {
  const Field f = gaussian(Grid::cartesian(513, 10.0));
  CHECK(lp_norm(f, 2.0) == doctest::Approx(std::pow(kPi / 2, 0.25)).epsilon(1e-12));
  CHECK(lp_norm(f, INFINITY) == doctest::Approx(1.0));
  // ‖e^{-x²}‖_4^4 = sqrt(π/4)
  CHECK(std::pow(lp_norm(f, 4.0), 4) == doctest::Approx(std::sqrt(kPi / 4)).epsilon(1e-12));
  // ‖∇e^{-x²}‖² = sqrt(π/2)
  CHECK(h1_seminorm(f) == doctest::Approx(std::pow(kPi / 2, 0.25)).epsilon(1e-12));
  // ‖x e^{-x²}‖² = sqrt(π/2)/4
  CHECK(weighted_l2_norm(f) == doctest::Approx(std::sqrt(std::sqrt(kPi / 2) / 4)).epsilon(1e-12));
}

TEST_CASE("gaussian norms against closed forms, radial N = 3") {
  const Field f = gaussian(Grid::radial(3, 2001, 8.0));
  const double area = 4 * kPi;
  CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(area * gauss_moment(2, 2.0))).epsilon(1e-5));
  CHECK(h1_seminorm(f) == doctest::Approx(std::sqrt(area * 4 * gauss_moment(4, 2.0))).epsilon(1e-5));
  CHECK(weighted_l2_norm(f) == doctest::Approx(std::sqrt(area * gauss_moment(4, 2.0))).epsilon(1e-5));
}

TEST_CASE("spectral laplacian and gradient are exact to round-off on a gaussian") {
  const Grid g = Grid::cartesian(256, 12.0);
  const Field f = gaussian(g);
  const Field lap_exact =
      Field::sample(g, [](double x) { return cplx{(4 * x * x - 2) * std::exp(-x * x), 0.0}; });
  const Field grad_exact = Field::sample(g, [](double x) { return cplx{-2 * x * std::exp(-x * x), 0.0}; });
  CHECK(max_error(laplacian(f), lap_exact, 1e9) < 1e-11);
  CHECK(max_error(gradient(f), grad_exact, 1e9) < 1e-11);
}

TEST_CASE("radial laplacian converges at second order for N = 2, 3, 5") {
  for (int dim : {2, 3, 5}) {
    std::vector<double> hs, errs;
    for (std::size_t m : {201u, 401u, 801u, 1601u}) {
      const Grid g = Grid::radial(dim, m, 8.0);
      // Δ e^{-r²} = (4r² - 2N) e^{-r²}
      const Field exact = Field::sample(g, [dim](double r) {
        return cplx{(4 * r * r - 2.0 * dim) * std::exp(-r * r), 0.0};
      });
      hs.push_back(g.spacing);
      errs.push_back(max_error(laplacian(gaussian(g)), exact, 6.0));
    }
    const PowerLawFit fit = fit_power_law(hs, errs);
    CAPTURE(dim);
    CHECK(fit.slope > 1.9);
  }
}

TEST_CASE("integration by parts holds exactly for the discrete operators") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (const Grid& g : {Grid::cartesian(128, 6.0), Grid::radial(3, 150, 6.0)}) {
    // smooth random data: gaussian times a random low-order polynomial
    const double a = nd(rng), b = nd(rng), c = nd(rng);
    const Field f = Field::sample(g, [&](double x) {
      return cplx{a + b * x, c * x * x} * std::exp(-x * x);
    });
    const double dirichlet = -inner_real(f, laplacian(f));
    CHECK(dirichlet == doctest::Approx(h1_seminorm(f) * h1_seminorm(f)).epsilon(1e-10));
  }
}

TEST_CASE("property: homogeneity and triangle inequality of the norms") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  const Grid g = Grid::cartesian(64, 4.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> v(g.num_points), w(g.num_points);
    for (auto& z : v) z = {nd(rng), nd(rng)};
    for (auto& z : w) z = {nd(rng), nd(rng)};
    const Field f(g, v), h(g, w);
    const cplx s{nd(rng), nd(rng)};
    for (double p : {1.0, 2.0, 3.5, double(INFINITY)}) {
      CHECK(lp_norm(s * f, p) == doctest::Approx(std::abs(s) * lp_norm(f, p)).epsilon(1e-12));
      CHECK(lp_norm(f + h, p) <= lp_norm(f, p) + lp_norm(h, p) + 1e-12);
    }
    CHECK(h1_seminorm(s * f) == doctest::Approx(std::abs(s) * h1_seminorm(f)).epsilon(1e-12));
    const NormReport r = norm_report(f, 2.0);
    CHECK(r.h1 == doctest::Approx(std::sqrt(r.l2 * r.l2 + r.h1_dot * r.h1_dot)));
    CHECK(r.sigma == doctest::Approx(std::sqrt(r.h1 * r.h1 + r.weighted_l2 * r.weighted_l2)));
    CHECK(r.l_alpha_plus_2 == doctest::Approx(lp_norm(f, 4.0)));
  }
}

TEST_CASE("field arithmetic rejects mismatched grids") {
  const Field a = Field::zeros(Grid::cartesian(16, 1.0));
  const Field b = Field::zeros(Grid::cartesian(16, 2.0));
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(Field(Grid::cartesian(4, 1.0), std::vector<cplx>(5)), std::invalid_argument);
}

TEST_CASE("power difference bound: worked example") {
  const PowerDiffBound b = power_diff_bound_check({2, 0}, {1, 0}, 2.0, 0);
  CHECK(b.lhs == doctest::Approx(3.0));
  REQUIRE(b.lipschitz);
  CHECK(*b.lipschitz == doctest::Approx(3.0));
  CHECK_FALSE(b.holder);
  const PowerDiffBound h = power_diff_bound_check({0, 0}, {0.25, 0}, 0.5, 1);
  CHECK(h.lhs == doctest::Approx(0.5));
  REQUIRE(h.holder);
  CHECK(*h.holder == doctest::Approx(0.5));
}

TEST_CASE("power difference bound: lhs oracle for integer n") {
  // |z|^{p-n} z^n written directly with complex arithmetic
  std::mt19937_64 rng(23);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 500; ++i) {
    const cplx z{nd(rng), nd(rng)}, w{nd(rng), nd(rng)};
    const int n = i % 3;
    const double p = 0.5 + 0.01 * (i % 300);
    const cplx gz = std::pow(std::abs(z), p - n) * std::pow(z, n);
    const cplx gw = std::pow(std::abs(w), p - n) * std::pow(w, n);
    CHECK(power_diff_bound_check(z, w, p, n).lhs == doctest::Approx(std::abs(gz - gw)).epsilon(1e-10));
  }
}

TEST_CASE("snapshots round-trip through csv and binary") {
  const Grid g = Grid::radial(3, 33, 2.0);
  const Field f = Field::sample(g, [](double r) { return cplx{std::cos(r), std::sin(3 * r)}; }, -0.25);
  const fs::path csv = temp_path("f.csv"), bin = temp_path("f.bin");
  write_field_csv(f, csv.string());
  write_field_binary(f, bin.string());
  const Field fc = read_field_csv(csv.string(), g, -0.25);
  const Field fb = read_field_binary(bin.string());
  CHECK(fb.grid() == g);
  CHECK(fb.time_tag() == -0.25);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(fb[i] == f[i]);
    CHECK(std::abs(fc[i] - f[i]) <= 1e-11 * std::max(1.0, std::abs(f[i])));
  }
  fs::remove(csv);
  fs::remove(bin);
  CHECK_THROWS(read_field_binary(csv.string()));
}
