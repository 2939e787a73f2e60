#pragma once

#include <cstddef>
#include <span>

namespace blowup {

/// y ≈ exp(log_prefactor) · x^slope by least squares in log-log coordinates.
/// residual is the largest relative deviation of the data from the fit.
struct PowerLawFit {
  double slope = 0;
  double log_prefactor = 0;
  double residual = 0;
  std::size_t count = 0;
};

/// Throws std::invalid_argument on fewer than two points or on any
/// non-positive / non-finite entry.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

}  // namespace blowup
