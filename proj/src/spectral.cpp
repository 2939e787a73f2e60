#include "spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace blowup::detail {

namespace {
// FFTW planning is not thread-safe; execution with new-array execute is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Plans(std::size_t n) {
    std::lock_guard lock(planner_mutex());
    auto* buf = fftw_alloc_complex(n);
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fwd = fftw_plan_dft_1d(len, buf, buf, FFTW_FORWARD, flags);
    bwd = fftw_plan_dft_1d(len, buf, buf, FFTW_BACKWARD, flags);
    fftw_free(buf);
    if (!fwd || !bwd) throw std::runtime_error("FFTW planning failed");
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

Fft::Fft(std::size_t n) : n_(n) {
  // Construct the planner mutex before the cache so it outlives cached plans.
  planner_mutex();
  static std::mutex cache_mutex;
  static std::map<std::size_t, std::shared_ptr<const Plans>> cache;
  std::lock_guard lock(cache_mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const Plans>(n);
  plans_ = slot;
}

void Fft::forward(std::span<cplx> data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->fwd, p, p);
}

void Fft::inverse(std::span<cplx> data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->bwd, p, p);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : data) v *= scale;
}

std::vector<double> wavenumbers(std::size_t n, double period) {
  std::vector<double> xi(n);
  const double base = 2.0 * std::numbers::pi / period;
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<long long>(j);
    const auto nn = static_cast<long long>(n);
    xi[j] = base * static_cast<double>(2 * jj <= nn ? jj : jj - nn);
  }
  return xi;
}

}  // namespace blowup::detail
