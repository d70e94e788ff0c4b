#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <vector>

#include "brickwall/band_set.hpp"
#include "brickwall/field.hpp"
#include "brickwall/spectral.hpp"
#include "brickwall/units.hpp"

namespace brickwall {

/// Fiber coefficients in SI units: alpha0 in 1/m (energy attenuation),
/// beta2 in s^2/m, gamma in 1/(W m).
struct FiberParams {
  double alpha0 = 0.0;
  double beta2 = 0.0;
  double gamma = 0.0;

  static FiberParams make(double alpha0, double beta2, double gamma) {
    if (!(alpha0 >= 0.0) || !std::isfinite(alpha0)) throw InvalidArgument("alpha0 must be >= 0");
    if (!std::isfinite(beta2) || !std::isfinite(gamma))
      throw InvalidArgument("beta2 and gamma must be finite");
    return FiberParams{alpha0, beta2, gamma};
  }

  /// alpha in dB/km, beta2 in ps^2/km, gamma in 1/(W km).
  static FiberParams from_engineering(double alpha_db_per_km, double beta2_ps2_per_km,
                                      double gamma_per_w_per_km) {
    return make(units::db_per_km_to_per_m(alpha_db_per_km),
                units::ps2_per_km_to_s2_per_m(beta2_ps2_per_km),
                units::per_w_per_km_to_per_w_per_m(gamma_per_w_per_km));
  }
};

enum class FilterKind { Distributed, Lumped, None };

/// Where along the fiber the brick-wall mask of `band` is applied.
struct FilterMode {
  FilterKind kind = FilterKind::None;
  double spacing = 0.0;  ///< m, Lumped only
  std::optional<BandSet> band;

  static FilterMode distributed(BandSet band) { return {FilterKind::Distributed, 0.0, std::move(band)}; }
  static FilterMode lumped(BandSet band, double spacing) {
    if (!(spacing > 0.0)) throw InvalidStepPartition("lumped filter spacing must be positive");
    return {FilterKind::Lumped, spacing, std::move(band)};
  }
  static FilterMode none() { return {}; }
};

enum class Splitting {
  /// nonlinear phase, then attenuation/filter, then dispersion (first order)
  NonlinearFirst,
  /// half linear step, nonlinear step, half linear step (second order)
  Strang,
};

/// Energy bookkeeping along z. per_channel[i][c] is channel c at z[i].
struct EnergyTrace {
  std::vector<double> z;
  std::vector<double> total;
  std::vector<std::vector<double>> per_channel;
  std::vector<double> discarded_cumulative;

  std::size_t size() const { return z.size(); }
};

/// Reusable split-step integrator bound to one grid and fiber.
class SplitStepper {
public:
  SplitStepper(const TimeGrid& grid, const FiberParams& fiber, const std::optional<BandSet>& band,
               Splitting splitting = Splitting::NonlinearFirst)
      : grid_(grid), fiber_(fiber), splitting_(splitting), transformer_(grid), spec_(grid.n) {
    if (band) mask_ = band_mask(grid, *band);
  }

  const TimeGrid& grid() const { return grid_; }
  bool has_band() const { return !mask_.empty(); }

  /// Advances q (time samples) by dz in place. Returns the energy removed by
  /// the mask when `apply_filter` is set; attenuation is never counted.
  double step(std::vector<cplx>& q, double dz, bool apply_filter) {
    if (!(dz > 0.0)) throw InvalidArgument("dz must be positive");
    if (apply_filter && mask_.empty()) throw InvalidArgument("filtering requested without a band");
    prepare(dz);
    double discarded = 0.0;
    if (splitting_ == Splitting::NonlinearFirst) {
      nonlinear(q, dz);
      transformer_.forward(q, spec_);
      discarded = linear(dispersion_full_, decay_full_, apply_filter);
      transformer_.backward(spec_, q);
    } else {
      transformer_.forward(q, spec_);
      linear(dispersion_half_, decay_half_, false);
      transformer_.backward(spec_, q);
      nonlinear(q, dz);
      transformer_.forward(q, spec_);
      discarded = linear(dispersion_half_, decay_half_, apply_filter);
      transformer_.backward(spec_, q);
    }
    return discarded;
  }

private:
  void prepare(double dz) {
    if (dz == prepared_dz_) return;
    prepared_dz_ = dz;
    dispersion_full_.resize(grid_.n);
    dispersion_half_.resize(grid_.n);
    for (std::size_t k = 0; k < grid_.n; ++k) {
      const double w = grid_.omega(k);
      const double phase = 0.5 * fiber_.beta2 * w * w * dz;
      dispersion_full_[k] = std::polar(1.0, phase);
      dispersion_half_[k] = std::polar(1.0, 0.5 * phase);
    }
    decay_full_ = std::exp(-0.5 * fiber_.alpha0 * dz);
    decay_half_ = std::exp(-0.25 * fiber_.alpha0 * dz);
  }

  void nonlinear(std::vector<cplx>& q, double dz) const {
    if (fiber_.gamma == 0.0) return;
    const double g = fiber_.gamma * dz;
    for (auto& v : q) v *= std::polar(1.0, g * std::norm(v));
  }

  double linear(const std::vector<cplx>& dispersion, double decay, bool apply_filter) {
    double discarded = 0.0;
    if (apply_filter) {
      discarded = apply_mask(spec_, mask_, decay, grid_.domega());
    } else if (decay != 1.0) {
      for (auto& c : spec_) c *= decay;
    }
    for (std::size_t k = 0; k < grid_.n; ++k) spec_[k] *= dispersion[k];
    return discarded;
  }

  TimeGrid grid_;
  FiberParams fiber_;
  Splitting splitting_;
  SpectralTransformer transformer_;
  std::vector<unsigned char> mask_;
  std::vector<cplx> spec_;
  std::vector<cplx> dispersion_full_;
  std::vector<cplx> dispersion_half_;
  double decay_full_ = 1.0;
  double decay_half_ = 1.0;
  double prepared_dz_ = -1.0;
};

struct StepResult {
  SampledField field;
  double discarded = 0.0;
};

/// One split step: q e^{j gamma dz |q|^2}, then e^{-alpha0 dz/2} and (when
/// apply_filter) the brick-wall mask of mode.band, then e^{j beta2 w^2 dz / 2}.
inline StepResult split_step(const SampledField& f, double dz, const FiberParams& p,
                             const FilterMode& mode, bool apply_filter,
                             Splitting splitting = Splitting::NonlinearFirst) {
  SplitStepper stepper(f.grid(), p, mode.band, splitting);
  std::vector<cplx> q(f.samples().begin(), f.samples().end());
  const double discarded = stepper.step(q, dz, apply_filter);
  return {SampledField(f.grid(), std::move(q)), discarded};
}

namespace detail {

/// Number of dz steps in `length`; throws unless length is an integer multiple.
inline std::size_t steps_in(double length, double dz, const char* what) {
  const double ratio = length / dz;
  const double r = std::round(ratio);
  if (r < 1.0 || std::abs(ratio - r) > 1e-9 * std::max(1.0, r)) {
    std::ostringstream os;
    os << what << " (" << length << " m) is not a positive integer multiple of dz (" << dz << " m)";
    throw InvalidStepPartition(os.str());
  }
  return static_cast<std::size_t>(r);
}

}  // namespace detail

struct PropagateOptions {
  Splitting splitting = Splitting::NonlinearFirst;
  /// Called with (z, field) at every recorded distance.
  std::function<void(double, const SampledField&)> observer;
};

struct PropagationResult {
  SampledField field;
  EnergyTrace trace;
  std::size_t steps = 0;
};

/// Integrates the filtered NLSE over z_total in steps of dz and records
/// total, per-channel and cumulative discarded energy every record_every
/// (always including z = 0 and z = z_total).
inline PropagationResult propagate(const SampledField& f0, double z_total, double dz,
                                   const FiberParams& p, const FilterMode& mode,
                                   const std::vector<BandSet>& channels, double record_every,
                                   const PropagateOptions& options = {}) {
  if (!(z_total > 0.0) || !(dz > 0.0) || !(record_every > 0.0))
    throw InvalidStepPartition("z_total, dz and record_every must be positive");
  const std::size_t n_steps = detail::steps_in(z_total, dz, "z_total");
  const std::size_t record_stride = detail::steps_in(record_every, dz, "record_every");
  std::size_t filter_stride = 0;
  if (mode.kind != FilterKind::None && !mode.band)
    throw InvalidArgument("filter mode requires a band");
  if (mode.kind == FilterKind::Lumped) filter_stride = detail::steps_in(mode.spacing, dz, "filter spacing");
  if (mode.kind == FilterKind::Distributed) filter_stride = 1;

  const TimeGrid& grid = f0.grid();
  std::vector<std::vector<unsigned char>> channel_masks;
  channel_masks.reserve(channels.size());
  for (const auto& c : channels) channel_masks.push_back(band_mask(grid, c));

  SplitStepper stepper(grid, p, mode.band, options.splitting);
  SpectralTransformer probe(grid);
  std::vector<cplx> q(f0.samples().begin(), f0.samples().end());
  std::vector<cplx> spec(grid.n);

  EnergyTrace trace;
  double discarded_total = 0.0;
  auto record = [&](double z) {
    probe.forward(q, spec);
    trace.z.push_back(z);
    trace.total.push_back(Spectrum(grid, spec).energy());
    std::vector<double> per;
    per.reserve(channel_masks.size());
    for (const auto& m : channel_masks) per.push_back(masked_energy(spec, m, grid.domega()));
    trace.per_channel.push_back(std::move(per));
    trace.discarded_cumulative.push_back(discarded_total);
    if (options.observer) options.observer(z, SampledField(grid, q));
  };

  record(0.0);
  for (std::size_t i = 1; i <= n_steps; ++i) {
    const bool filter_now = filter_stride != 0 && i % filter_stride == 0;
    discarded_total += stepper.step(q, dz, filter_now);
    if (i % record_stride == 0 || i == n_steps) record(static_cast<double>(i) * dz);
  }
  return {SampledField(grid, std::move(q)), std::move(trace), n_steps};
}

/// dE_n/dz = -alpha0 E_n - (gamma / 4 pi^3) Im{ int [Q*Q](w3) [Q_n*Q](w3)^* dw3 },
/// with both frequency-domain convolutions evaluated as exact discrete linear
/// convolutions via zero-padded FFTs of length 2n.
inline double channel_energy_rhs(const SampledField& f, std::size_t n,
                                 const std::vector<BandSet>& channels, const FiberParams& p) {
  if (n >= channels.size()) throw InvalidArgument("channel index out of range");
  const Spectrum spec = transform(f);
  const TimeGrid& grid = f.grid();
  const auto mask = band_mask(grid, channels[n]);
  const std::size_t len = 2 * grid.n;

  std::vector<cplx> full(len, 0.0), chan(len, 0.0);
  for (std::size_t k = 0; k < grid.n; ++k) {
    full[k] = spec[k];
    if (mask[k]) chan[k] = spec[k];
  }
  Fft fft(len);
  std::vector<cplx> a(len), b(len);
  fft.forward(full, a);
  fft.forward(chan, b);
  for (std::size_t i = 0; i < len; ++i) {
    b[i] *= a[i];  // F(Q_n) F(Q)
    a[i] *= a[i];  // F(Q)^2
  }
  std::vector<cplx> qq(len), qnq(len);
  fft.backward(a, qq);
  fft.backward(b, qnq);

  const double dw = grid.domega();
  // continuous convolution ~ dw * discrete convolution; backward FFT is unnormalized
  const double conv_scale = dw / static_cast<double>(len);
  cplx integral = 0.0;
  for (std::size_t i = 0; i < len; ++i) integral += qq[i] * std::conj(qnq[i]);
  integral *= conv_scale * conv_scale * dw;

  const double energy_n = masked_energy(spec.coefficients(), mask, dw);
  constexpr double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
  return -p.alpha0 * energy_n - p.gamma / (4.0 * pi3) * integral.imag();
}

}  // namespace brickwall
