#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "brickwall/errors.hpp"
#include "brickwall/propagator.hpp"

namespace brickwall {

/// Classic fixed-step fourth-order Runge-Kutta step for y' = f(y).
template <typename State, typename Rhs>
State rk4_step(const State& y, double h, Rhs&& f) {
  auto axpy = [](const State& a, double s, const State& b) {
    State r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += s * b[i];
    return r;
  };
  const State k1 = f(y);
  const State k2 = f(axpy(y, 0.5 * h, k1));
  const State k3 = f(axpy(y, 0.5 * h, k2));
  const State k4 = f(axpy(y, h, k3));
  State out = y;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

using ToneAmplitudes = std::array<std::complex<double>, 3>;

/// Three tones at -domega, 0, +domega; amplitudes in sqrt(W).
struct ToneState {
  ToneAmplitudes q{};
  double domega = 0.0;
  double z = 0.0;

  std::array<double, 3> powers() const { return {std::norm(q[0]), std::norm(q[1]), std::norm(q[2])}; }
  double total_power() const { return std::norm(q[0]) + std::norm(q[1]) + std::norm(q[2]); }
};

inline std::array<double, 3> tone_frequencies(double domega) { return {-domega, 0.0, domega}; }

/// Coupled-mode right-hand side: dispersion phase j(beta2/2) w_n^2, SPM, XPM,
/// and the degenerate FWM terms Q2^2 Q3^*, 2 Q1 Q2^* Q3, Q2^2 Q1^*.
inline ToneAmplitudes tone_rhs(const ToneAmplitudes& q, double domega, const FiberParams& p) {
  using namespace std::complex_literals;
  const auto w = tone_frequencies(domega);
  const double p1 = std::norm(q[0]), p2 = std::norm(q[1]), p3 = std::norm(q[2]);
  const auto disp = [&](int n) { return 1i * (0.5 * p.beta2 * w[n] * w[n]) * q[n]; };
  const auto loss = [&](int n) { return -0.5 * p.alpha0 * q[n]; };
  ToneAmplitudes d;
  d[0] = disp(0) + loss(0) +
         1i * p.gamma * ((p1 + 2.0 * p2 + 2.0 * p3) * q[0] + q[1] * q[1] * std::conj(q[2]));
  d[1] = disp(1) + loss(1) +
         1i * p.gamma * ((p2 + 2.0 * p1 + 2.0 * p3) * q[1] + 2.0 * q[0] * std::conj(q[1]) * q[2]);
  d[2] = disp(2) + loss(2) +
         1i * p.gamma * ((p3 + 2.0 * p1 + 2.0 * p2) * q[2] + q[1] * q[1] * std::conj(q[0]));
  return d;
}

inline ToneAmplitudes tone_rhs(const ToneState& s, const FiberParams& p) { return tone_rhs(s.q, s.domega, p); }

/// Power derivatives of the lossless system; only the FWM product moves power.
inline std::array<double, 3> power_rhs(const ToneState& s, double gamma) {
  const auto& q = s.q;
  const double fwm = (std::conj(q[0]) * q[1] * q[1] * std::conj(q[2])).imag();
  return {-2.0 * gamma * fwm, 4.0 * gamma * fwm, -2.0 * gamma * fwm};
}

/// Largest step allowed by the "period / 50" rule for the fastest phase rotation.
inline double max_tone_step(const ToneState& s, const FiberParams& p) {
  const double w = s.domega;
  const double rate = std::abs(0.5 * p.beta2 * w * w) + 5.0 * std::abs(p.gamma) * s.total_power() + 0.5 * p.alpha0;
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::numbers::pi / rate / 50.0;
}

/// RK4 trajectory sampled every dz, starting with s0 itself.
inline std::vector<ToneState> integrate_tones(const ToneState& s0, double z_total, double dz,
                                              const FiberParams& p) {
  if (!(dz > 0.0)) throw InvalidArgument("dz must be positive");
  const std::size_t n = detail::steps_in(z_total, dz, "z_total");
  if (dz > max_tone_step(s0, p)) {
    std::ostringstream os;
    os << "dz = " << dz << " m exceeds the RK4 accuracy limit " << max_tone_step(s0, p) << " m";
    throw InvalidArgument(os.str());
  }
  std::vector<ToneState> traj;
  traj.reserve(n + 1);
  traj.push_back(s0);
  ToneState s = s0;
  for (std::size_t i = 1; i <= n; ++i) {
    s.q = rk4_step(s.q, dz, [&](const ToneAmplitudes& q) { return tone_rhs(q, s.domega, p); });
    s.z = s0.z + static_cast<double>(i) * dz;
    traj.push_back(s);
  }
  return traj;
}

}  // namespace brickwall
