#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>

namespace molent::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  std::scoped_lock lock(planner_mutex());
  buffer_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (buffer_ == nullptr) throw std::bad_alloc();
  auto* raw = reinterpret_cast<fftw_complex*>(buffer_);
  const int size = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_1d(size, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_1d(size, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  for (std::size_t j = 0; j < n; ++j) buffer_[j] = 0.0;
}

FftPlan::~FftPlan() {
  std::scoped_lock lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  fftw_free(buffer_);
}

void FftPlan::forward() { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }

void FftPlan::backward() { fftw_execute(static_cast<fftw_plan>(backward_plan_)); }

}  // namespace molent::detail
