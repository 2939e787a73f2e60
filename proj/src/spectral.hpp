#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace blowup::detail {

using cplx = std::complex<double>;

/// In-place complex FFT of a fixed length backed by FFTW. Plans are shared
/// per length; execution is reentrant.
class Fft {
 public:
  explicit Fft(std::size_t n);

  void forward(std::span<cplx> data) const;
  /// Includes the 1/n normalisation.
  void inverse(std::span<cplx> data) const;
  std::size_t size() const { return n_; }

 private:
  struct Plans;
  std::size_t n_;
  std::shared_ptr<const Plans> plans_;
};

/// Angular wavenumbers 2π j / period in FFT order. The Nyquist entry is
/// positive; callers zero it for odd-order derivatives.
std::vector<double> wavenumbers(std::size_t n, double period);

}  // namespace blowup::detail
