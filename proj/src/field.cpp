#include "blowup/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spectral.hpp"

namespace blowup {

namespace {

constexpr std::size_t kMinPoints = 16;

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

// Face areas r_{i+1/2}^{N-1} (without the sphere factor) for i = 0..M-2.
std::vector<double> face_areas(const Grid& g) {
  std::vector<double> a(g.num_points - 1);
  for (std::size_t i = 0; i + 1 < g.num_points; ++i) {
    a[i] = std::pow((static_cast<double>(i) + 0.5) * g.spacing, g.dim - 1);
  }
  return a;
}

// Control volumes ∫ r^{N-1} dr (without the sphere factor).
std::vector<double> control_volumes(const Grid& g) {
  const std::size_t m = g.num_points;
  const double h = g.spacing;
  const int n = g.dim;
  std::vector<double> v(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = static_cast<double>(i) * h;
    const double lo = std::max(0.0, r - 0.5 * h);
    const double hi = (i + 1 == m) ? r : r + 0.5 * h;
    v[i] = (std::pow(hi, n) - std::pow(lo, n)) / n;
  }
  return v;
}

Field spectral_multiply(const Field& f, const std::vector<cplx>& symbol) {
  std::vector<cplx> data(f.values().begin(), f.values().end());
  detail::Fft fft(data.size());
  fft.forward(data);
  for (std::size_t j = 0; j < data.size(); ++j) data[j] *= symbol[j];
  fft.inverse(data);
  return Field(f.grid(), std::move(data), f.time_tag());
}

}  // namespace

Grid Grid::cartesian(std::size_t num_points, double half_width) {
  if (num_points < kMinPoints) throw std::invalid_argument("grid needs at least 16 points");
  if (!(half_width > 0.0)) throw std::invalid_argument("grid half-width must be positive");
  return Grid{GridMode::Cartesian1D, 1, num_points, 2.0 * half_width / (num_points - 1.0),
              half_width};
}

Grid Grid::radial(int dim, std::size_t num_points, double radius) {
  if (num_points < kMinPoints) throw std::invalid_argument("grid needs at least 16 points");
  if (!(radius > 0.0)) throw std::invalid_argument("grid radius must be positive");
  if (dim < 1 || dim > 5) throw std::invalid_argument("radial grid dimension must be in 1..5");
  return Grid{GridMode::RadialND, dim, num_points, radius / (num_points - 1.0), radius};
}

double Grid::coordinate(std::size_t i) const {
  const double s = static_cast<double>(i) * spacing;
  return mode == GridMode::Cartesian1D ? s - radius : s;
}

std::vector<double> Grid::coordinates() const {
  std::vector<double> x(num_points);
  for (std::size_t i = 0; i < num_points; ++i) x[i] = coordinate(i);
  return x;
}

std::vector<double> Grid::weights() const {
  if (mode == GridMode::Cartesian1D) return std::vector<double>(num_points, spacing);
  auto v = control_volumes(*this);
  const double s = unit_sphere_area(dim);
  for (auto& w : v) w *= s;
  return v;
}

double unit_sphere_area(int dim) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

Field::Field(Grid grid, std::vector<cplx> values, double time_tag)
    : grid_(grid), values_(std::move(values)), time_tag_(time_tag) {
  if (values_.size() != grid_.num_points) {
    throw std::invalid_argument("field size does not match grid");
  }
}

Field Field::zeros(const Grid& grid, double time_tag) {
  return Field(grid, std::vector<cplx>(grid.num_points), time_tag);
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(cplx c) {
  for (auto& v : values_) v *= c;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx c, Field a) { return a *= c; }

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm needs p >= 1");
  const auto v = f.values();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
  }
  const auto w = f.grid().weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sum += w[i] * std::pow(std::abs(v[i]), p);
  return std::pow(sum, 1.0 / p);
}

double weighted_l2_norm(const Field& f) {
  const auto v = f.values();
  const auto w = f.grid().weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = f.grid().coordinate(i);
    sum += w[i] * x * x * std::norm(v[i]);
  }
  return std::sqrt(sum);
}

double inner_real(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid());
  const auto w = f.grid().weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += w[i] * (f[i] * std::conj(g[i])).real();
  return sum;
}

double h1_seminorm(const Field& f) {
  const Grid& g = f.grid();
  if (g.mode == GridMode::Cartesian1D) {
    // Parseval: ‖f'‖² = (L/M) Σ ξ² |f̂|² / M with L = M h.
    std::vector<cplx> data(f.values().begin(), f.values().end());
    detail::Fft(data.size()).forward(data);
    const auto xi = detail::wavenumbers(data.size(), g.period());
    const std::size_t m = data.size();
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const bool nyquist = (m % 2 == 0) && (j == m / 2);
      if (!nyquist) sum += xi[j] * xi[j] * std::norm(data[j]);
    }
    return std::sqrt(sum * g.spacing / static_cast<double>(m));
  }
  const auto a = face_areas(g);
  const auto v = f.values();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) sum += a[i] * std::norm(v[i + 1] - v[i]);
  return std::sqrt(unit_sphere_area(g.dim) * sum / g.spacing);
}

Field gradient(const Field& f) {
  const Grid& g = f.grid();
  const std::size_t m = g.num_points;
  if (g.mode == GridMode::Cartesian1D) {
    const auto xi = detail::wavenumbers(m, g.period());
    std::vector<cplx> symbol(m);
    for (std::size_t j = 0; j < m; ++j) {
      const bool nyquist = (m % 2 == 0) && (j == m / 2);
      symbol[j] = nyquist ? cplx{} : cplx{0.0, xi[j]};
    }
    return spectral_multiply(f, symbol);
  }
  const auto v = f.values();
  const double h = g.spacing;
  std::vector<cplx> d(m);
  d[0] = 0.0;
  for (std::size_t i = 1; i + 1 < m; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  d[m - 1] = (3.0 * v[m - 1] - 4.0 * v[m - 2] + v[m - 3]) / (2.0 * h);
  return Field(g, std::move(d), f.time_tag());
}

Field laplacian(const Field& f) {
  const Grid& g = f.grid();
  const std::size_t m = g.num_points;
  if (g.mode == GridMode::Cartesian1D) {
    const auto xi = detail::wavenumbers(m, g.period());
    std::vector<cplx> symbol(m);
    for (std::size_t j = 0; j < m; ++j) symbol[j] = -xi[j] * xi[j];
    return spectral_multiply(f, symbol);
  }
  const auto a = face_areas(g);
  const auto vol = control_volumes(g);
  const auto v = f.values();
  const double h = g.spacing;
  std::vector<cplx> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    cplx flux{};
    if (i + 1 < m) flux += a[i] * (v[i + 1] - v[i]);
    if (i > 0) flux -= a[i - 1] * (v[i] - v[i - 1]);
    out[i] = flux / (h * vol[i]);
  }
  return Field(g, std::move(out), f.time_tag());
}

NormReport norm_report(const Field& f, double alpha) {
  NormReport r;
  r.time_tag = f.time_tag();
  r.l2 = lp_norm(f, 2.0);
  r.h1_dot = h1_seminorm(f);
  r.h1 = std::hypot(r.l2, r.h1_dot);
  r.l_alpha_plus_2 = lp_norm(f, alpha + 2.0);
  r.weighted_l2 = weighted_l2_norm(f);
  r.sigma = std::hypot(r.h1, r.weighted_l2);
  return r;
}

PowerDiffBound power_diff_bound_check(cplx z, cplx w, double p, int n) {
  if (!(p > 0.0)) throw std::invalid_argument("power_diff_bound_check needs p > 0");
  if (n < 0) throw std::invalid_argument("power_diff_bound_check needs n >= 0");
  // |z|^{p-n} z^n = |z|^p e^{i n arg z}, extended by 0 at z = 0.
  auto power = [&](cplx z0) -> cplx {
    const double r = std::abs(z0);
    if (r == 0.0) return {};
    return std::polar(std::pow(r, p), n * std::arg(z0));
  };
  PowerDiffBound out;
  out.lhs = std::abs(power(z) - power(w));
  const double dist = std::abs(z - w);
  if (p >= 1.0) {
    out.lipschitz = (std::pow(std::abs(z), p - 1.0) + std::pow(std::abs(w), p - 1.0)) * dist;
  }
  if (p <= 1.0) out.holder = std::pow(dist, p);
  return out;
}

void write_field_csv(const Field& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << "coordinate,re,im\n" << std::setprecision(12);
  for (std::size_t i = 0; i < f.size(); ++i) {
    os << f.grid().coordinate(i) << ',' << f[i].real() << ',' << f[i].imag() << '\n';
  }
}

Field read_field_csv(const std::string& path, const Grid& grid, double time_tag) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(is, line);
  std::vector<cplx> values;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double x = 0, re = 0, im = 0;
    char c1 = 0, c2 = 0;
    if (!(ls >> x >> c1 >> re >> c2 >> im)) throw std::runtime_error("malformed field row: " + line);
    values.emplace_back(re, im);
  }
  return Field(grid, std::move(values), time_tag);
}

namespace {
constexpr char kMagic[4] = {'B', 'L', 'F', 'D'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw std::runtime_error("truncated field snapshot");
  }
  return v;
}
}  // namespace

void write_field_binary(const Field& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  const Grid& g = f.grid();
  os.write(kMagic, 4);
  put(os, kVersion);
  put(os, static_cast<std::uint32_t>(g.mode == GridMode::Cartesian1D ? 0 : 1));
  put(os, static_cast<std::int32_t>(g.dim));
  put(os, static_cast<std::uint64_t>(g.num_points));
  put(os, g.spacing);
  put(os, g.radius);
  put(os, f.time_tag());
  for (const auto& z : f.values()) {
    put(os, z.real());
    put(os, z.imag());
  }
}

Field read_field_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error(path + " is not a field snapshot");
  }
  if (get<std::uint32_t>(is) != kVersion) throw std::runtime_error("unsupported snapshot version");
  Grid g;
  g.mode = get<std::uint32_t>(is) == 0 ? GridMode::Cartesian1D : GridMode::RadialND;
  g.dim = get<std::int32_t>(is);
  g.num_points = static_cast<std::size_t>(get<std::uint64_t>(is));
  g.spacing = get<double>(is);
  g.radius = get<double>(is);
  const double t = get<double>(is);
  std::vector<cplx> v(g.num_points);
  for (auto& z : v) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    z = {re, im};
  }
  return Field(g, std::move(v), t);
}

}  // namespace blowup
