#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <sstream>
#include <vector>

#include "brickwall/errors.hpp"
#include "brickwall/fft.hpp"

namespace brickwall {

using cplx = std::complex<double>;

/// Uniform time grid t_m = t0 + m*dt, m = 0..n-1, with n a power of two.
///
/// The matching frequency grid is w_k = (k - n/2)*dw, k = 0..n-1, with
/// dw = 2*pi/(n*dt); it covers [-pi/dt, pi/dt) in increasing order.
struct TimeGrid {
  double dt = 0.0;
  std::size_t n = 0;
  double t0 = 0.0;

  static TimeGrid make(double dt, std::size_t n, double t0) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidGrid("dt must be positive");
    if (n < 2 || !std::has_single_bit(n)) {
      std::ostringstream os;
      os << "sample count " << n << " is not a power of two >= 2";
      throw InvalidGrid(os.str());
    }
    if (!std::isfinite(t0)) throw InvalidGrid("t0 must be finite");
    return TimeGrid{dt, n, t0};
  }

  /// Grid whose window is centered on t = 0.
  static TimeGrid centered(double dt, std::size_t n) {
    return make(dt, n, -0.5 * static_cast<double>(n) * dt);
  }

  double time(std::size_t m) const { return t0 + static_cast<double>(m) * dt; }
  double duration() const { return static_cast<double>(n) * dt; }
  double domega() const { return 2.0 * std::numbers::pi / duration(); }
  double omega(std::size_t k) const {
    return (static_cast<double>(k) - 0.5 * static_cast<double>(n)) * domega();
  }
  /// Upper edge pi/dt of the represented band [-pi/dt, pi/dt).
  double nyquist() const { return std::numbers::pi / dt; }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/// Complex baseband envelope q(t_m) in sqrt(W).
class SampledField {
public:
  SampledField(TimeGrid grid, std::vector<cplx> samples) : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.n) throw InvalidGrid("sample count does not match grid");
  }

  static SampledField zeros(TimeGrid grid) { return SampledField(grid, std::vector<cplx>(grid.n)); }

  const TimeGrid& grid() const { return grid_; }
  std::span<const cplx> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const cplx& operator[](std::size_t i) const { return samples_[i]; }

  /// sum |q|^2 dt, in J.
  double energy() const {
    double e = 0.0;
    for (const auto& q : samples_) e += std::norm(q);
    return e * grid_.dt;
  }

private:
  TimeGrid grid_;
  std::vector<cplx> samples_;
};

/// Samples Q(w_k) of the continuous-time Fourier transform, increasing w.
class Spectrum {
public:
  Spectrum(TimeGrid grid, std::vector<cplx> coefficients)
      : grid_(grid), coefficients_(std::move(coefficients)) {
    if (coefficients_.size() != grid_.n) throw InvalidGrid("coefficient count does not match grid");
  }

  const TimeGrid& grid() const { return grid_; }
  std::span<const cplx> coefficients() const { return coefficients_; }
  std::size_t size() const { return coefficients_.size(); }
  const cplx& operator[](std::size_t k) const { return coefficients_[k]; }
  double domega() const { return grid_.domega(); }
  double omega(std::size_t k) const { return grid_.omega(k); }

  /// (1/2pi) sum |Q|^2 dw, in J.
  double energy() const {
    double e = 0.0;
    for (const auto& c : coefficients_) e += std::norm(c);
    return e * domega() / (2.0 * std::numbers::pi);
  }

private:
  TimeGrid grid_;
  std::vector<cplx> coefficients_;
};

/// Grid-bound transform pair Q(w) = int q(t) e^{-jwt} dt and
/// q(t) = (1/2pi) int Q(w) e^{jwt} dw, discretized with the t0 phase included.
class SpectralTransformer {
public:
  explicit SpectralTransformer(const TimeGrid& grid) : grid_(grid), fft_(grid.n), phase_(grid.n) {
    for (std::size_t k = 0; k < grid_.n; ++k) phase_[k] = std::polar(1.0, -grid_.omega(k) * grid_.t0);
    work_.resize(grid_.n);
  }

  const TimeGrid& grid() const { return grid_; }

  /// time samples -> spectral coefficients (both length n)
  void forward(std::span<const cplx> q, std::span<cplx> spectrum) {
    const std::size_t n = grid_.n;
    const std::size_t half = n / 2;
    fft_.forward(q, work_);
    for (std::size_t k = 0; k < n; ++k) spectrum[k] = grid_.dt * phase_[k] * work_[(k + half) % n];
  }

  /// spectral coefficients -> time samples
  void backward(std::span<const cplx> spectrum, std::span<cplx> q) {
    const std::size_t n = grid_.n;
    const std::size_t half = n / 2;
    for (std::size_t k = 0; k < n; ++k) work_[(k + half) % n] = spectrum[k] * std::conj(phase_[k]);
    fft_.backward(work_, q);
    const double scale = 1.0 / (static_cast<double>(n) * grid_.dt);
    for (auto& v : q) v *= scale;
  }

private:
  TimeGrid grid_;
  Fft fft_;
  std::vector<cplx> phase_;
  std::vector<cplx> work_;
};

inline Spectrum transform(const SampledField& f) {
  SpectralTransformer tr(f.grid());
  std::vector<cplx> out(f.size());
  tr.forward(f.samples(), out);
  return Spectrum(f.grid(), std::move(out));
}

inline SampledField inverse(const Spectrum& s) {
  SpectralTransformer tr(s.grid());
  std::vector<cplx> out(s.size());
  tr.backward(s.coefficients(), out);
  return SampledField(s.grid(), std::move(out));
}

}  // namespace brickwall
