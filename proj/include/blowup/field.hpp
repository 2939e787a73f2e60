#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blowup {

using cplx = std::complex<double>;

enum class GridMode { Cartesian1D, RadialND };

/// Uniform 1-D grid. Cartesian nodes are x_j = -R + j h with h (M-1) = 2R and
/// are treated as one period of length M h. Radial nodes are r_j = j h with
/// h (M-1) = R; the origin is a node.
struct Grid {
  GridMode mode = GridMode::Cartesian1D;
  int dim = 1;
  std::size_t num_points = 0;
  double spacing = 0.0;
  double radius = 0.0;

  static Grid cartesian(std::size_t num_points, double half_width);
  static Grid radial(int dim, std::size_t num_points, double radius);

  double coordinate(std::size_t i) const;
  std::vector<double> coordinates() const;
  /// Quadrature weights: h for Cartesian (periodic rectangle rule), control
  /// volumes S_{N-1} ∫ r^{N-1} dr over [r_i - h/2, r_i + h/2] ∩ [0, R] for radial.
  std::vector<double> weights() const;
  /// Period M h of a Cartesian grid.
  double period() const { return spacing * static_cast<double>(num_points); }

  bool operator==(const Grid&) const = default;
};

/// Surface area of the unit sphere S^{N-1} (2 for N = 1).
double unit_sphere_area(int dim);

/// Complex samples on a grid. Values are kept finite by every public operation.
class Field {
 public:
  Field() = default;
  Field(Grid grid, std::vector<cplx> values, double time_tag = 0.0);
  static Field zeros(const Grid& grid, double time_tag = 0.0);

  template <class F>
  static Field sample(const Grid& grid, F&& f, double time_tag = 0.0) {
    std::vector<cplx> v(grid.num_points);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.coordinate(i));
    return Field(grid, std::move(v), time_tag);
  }

  const Grid& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  std::size_t size() const { return values_.size(); }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  double time_tag() const { return time_tag_; }
  void set_time_tag(double t) { time_tag_ = t; }

  bool all_finite() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(cplx c);

 private:
  Grid grid_;
  std::vector<cplx> values_;
  double time_tag_ = 0.0;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx c, Field a);

struct NormReport {
  double l2 = 0;
  double h1_dot = 0;
  double h1 = 0;
  double l_alpha_plus_2 = 0;
  double sigma = 0;
  double weighted_l2 = 0;
  double time_tag = 0;
};

/// p in [1, inf]; p = inf gives the max modulus.
double lp_norm(const Field& f, double p);
/// ‖|x| f‖_{L²}.
double weighted_l2_norm(const Field& f);
/// ‖∇f‖_{L²}: spectral on Cartesian grids, face differences on radial grids
/// (the form for which −⟨f, Δ_h f⟩ = ‖∇_h f‖² holds exactly).
double h1_seminorm(const Field& f);
/// Real part of ∫ f ḡ over the grid.
double inner_real(const Field& f, const Field& g);

/// Cartesian: spectral derivative. Radial: ∂_r f with ∂_r f(0) = 0.
Field gradient(const Field& f);
/// Cartesian: spectral. Radial: conservative finite volumes for
/// r^{1-N} ∂_r (r^{N-1} ∂_r f) with zero flux at r = 0 and r = R.
Field laplacian(const Field& f);

NormReport norm_report(const Field& f, double alpha);

struct PowerDiffBound {
  double lhs = 0;
  /// (|z|^{p-1}+|w|^{p-1})|z-w|, present for p >= 1.
  std::optional<double> lipschitz;
  /// |z-w|^p, present for 0 < p <= 1.
  std::optional<double> holder;
};

/// lhs = ||z|^{p-n} z^n - |w|^{p-n} w^n| with both majorants.
PowerDiffBound power_diff_bound_check(cplx z, cplx w, double p, int n);

/// Flat snapshot I/O: CSV with columns coordinate,re,im and a small binary form.
void write_field_csv(const Field& f, const std::string& path);
Field read_field_csv(const std::string& path, const Grid& grid, double time_tag = 0.0);
void write_field_binary(const Field& f, const std::string& path);
Field read_field_binary(const std::string& path);

}  // namespace blowup
