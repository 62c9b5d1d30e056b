#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace molent::detail {

/// Owns an FFTW buffer plus forward/backward plans for one transform size.
/// Planning goes through a process-wide mutex; executing distinct plans from
/// different threads is safe.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::span<std::complex<double>> data() { return {buffer_, n_}; }

  /// Unnormalized, in place on data(): sum_j f_j exp(-+2 pi i jk / n).
  void forward();
  void backward();

 private:
  std::size_t n_;
  std::complex<double>* buffer_;
  void* forward_plan_;
  void* backward_plan_;
};

}  // namespace molent::detail
