#pragma once

#include <fftw3.h>

#include <complex>
#include <cstring>
#include <mutex>
#include <span>

namespace brickwall {

namespace detail {
// FFTW's planner is not re-entrant; execution on distinct plans is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

/// Owns a pair of unnormalized FFTW plans (forward e^{-i..}, backward e^{+i..})
/// together with their aligned work buffers.
class Fft {
public:
  explicit Fft(std::size_t n) : n_(n) {
    in_ = fftw_alloc_complex(n_);
    out_ = fftw_alloc_complex(n_);
    std::lock_guard lock(detail::fftw_planner_mutex());
    const int len = static_cast<int>(n_);
    forward_ = fftw_plan_dft_1d(len, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(len, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  ~Fft() {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(in_);
    fftw_free(out_);
  }

  std::size_t size() const { return n_; }

  void forward(std::span<const std::complex<double>> x, std::span<std::complex<double>> y) {
    run(forward_, x, y);
  }
  void backward(std::span<const std::complex<double>> x, std::span<std::complex<double>> y) {
    run(backward_, x, y);
  }

private:
  void run(fftw_plan plan, std::span<const std::complex<double>> x,
           std::span<std::complex<double>> y) {
    std::memcpy(in_, x.data(), n_ * sizeof(fftw_complex));
    fftw_execute(plan);
    std::memcpy(static_cast<void*>(y.data()), out_, n_ * sizeof(fftw_complex));
  }

  std::size_t n_;
  fftw_complex* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace brickwall
