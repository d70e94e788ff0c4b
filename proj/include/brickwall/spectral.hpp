#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "brickwall/band_set.hpp"
#include "brickwall/field.hpp"

namespace brickwall {

/// Discarded or out-of-band energies below this fraction of the field energy
/// are FFT round-off and are reported as exactly zero.
inline constexpr double kRoundoffEnergyFloor = 1e-14;

inline void require_band_in_range(const TimeGrid& grid, const BandSet& band) {
  const double ny = grid.nyquist();
  if (!(band.min() > -ny && band.max() < ny)) {
    std::ostringstream os;
    os << "band [" << band.min() << ", " << band.max() << "] rad/s is not inside (" << -ny << ", "
       << ny << ")";
    throw BandOutOfRange(os.str());
  }
}

/// mask[k] = 1 iff the bin-center frequency w_k lies in a closed interval of the band.
inline std::vector<unsigned char> band_mask(const TimeGrid& grid, const BandSet& band) {
  require_band_in_range(grid, band);
  // bin centers that coincide with an interval edge up to rounding count as inside
  const double slack = 1e-9 * grid.domega();
  std::vector<unsigned char> mask(grid.n, 0);
  for (const auto& iv : band.intervals()) {
    for (std::size_t k = 0; k < grid.n; ++k) {
      const double w = grid.omega(k);
      if (w >= iv.lo - slack && w <= iv.hi + slack) mask[k] = 1;
    }
  }
  return mask;
}

inline double masked_energy(std::span<const cplx> spectrum, std::span<const unsigned char> mask,
                            double domega) {
  double e = 0.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k)
    if (mask[k]) e += std::norm(spectrum[k]);
  return e * domega / (2.0 * std::numbers::pi);
}

inline double band_energy(const Spectrum& s, const BandSet& band) {
  const auto mask = band_mask(s.grid(), band);
  return masked_energy(s.coefficients(), mask, s.domega());
}

/// (1/2pi) * integral over the band of |Q|^2, evaluated on the bins inside it.
inline double band_energy(const SampledField& f, const BandSet& band) {
  return band_energy(transform(f), band);
}

/// Multiplies in-band bins by `decay` and zeroes the rest, in place.
/// Returns the energy held by the zeroed bins (before decay).
inline double apply_mask(std::span<cplx> spectrum, std::span<const unsigned char> mask, double decay,
                         double domega) {
  double total = 0.0;
  double removed = 0.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double e = std::norm(spectrum[k]);
    total += e;
    if (mask[k]) {
      spectrum[k] *= decay;
    } else {
      removed += e;
      spectrum[k] = 0.0;
    }
  }
  if (removed <= kRoundoffEnergyFloor * total) return 0.0;
  return removed * domega / (2.0 * std::numbers::pi);
}

struct FilterResult {
  SampledField field;
  double discarded = 0.0;  ///< J removed by the mask, before attenuation
};

/// Brick-wall step: exp(-alpha0*dz/2) inside the band, zero outside.
inline FilterResult apply_brickwall(const SampledField& f, const BandSet& band, double alpha0,
                                    double dz) {
  const auto mask = band_mask(f.grid(), band);
  SpectralTransformer tr(f.grid());
  std::vector<cplx> spec(f.size());
  tr.forward(f.samples(), spec);
  const double discarded = apply_mask(spec, mask, std::exp(-0.5 * alpha0 * dz), f.grid().domega());
  std::vector<cplx> q(f.size());
  tr.backward(spec, q);
  return {SampledField(f.grid(), std::move(q)), discarded};
}

/// sinc(x) = sin(pi x) / (pi x)
inline double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - (std::numbers::pi * x) * (std::numbers::pi * x) / 6.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

/// Impulse response of the brick-wall filter with alpha0 = 0:
/// sum_n (W_n/2pi) e^{j wbar_n t} sinc(W_n t / 2pi).
inline cplx impulse_response(const BandSet& band, double t) {
  cplx h = 0.0;
  for (const auto& iv : band.intervals()) {
    const double w = iv.width() / (2.0 * std::numbers::pi);
    h += w * std::polar(1.0, iv.center() * t) * sinc(w * t);
  }
  return h;
}

/// Raised-cosine spectral amplitude response with unit passband, two-sided
/// width `width` (rad/s) and roll-off `rolloff`, evaluated at offset nu from
/// the center. Returns sqrt of the raised cosine (root raised cosine).
inline double rrc_amplitude(double nu, double width, double rolloff) {
  const double half = 0.5 * width;
  const double a = std::abs(nu);
  if (a > half) return 0.0;
  const double symbol = width / (1.0 + rolloff);  // angular symbol rate
  const double flat = 0.5 * (1.0 - rolloff) * symbol;
  if (a <= flat) return 1.0;
  const double rc = 0.5 * (1.0 + std::cos(std::numbers::pi / (rolloff * symbol) * (a - flat)));
  return std::sqrt(rc);
}

/// Minimum number of frequency bins a channel must span to hold a pulse.
inline constexpr std::size_t kMinBinsPerChannel = 8;

/// Root-raised-cosine pulse centered at t = 0, occupying exactly `channel`
/// (two-sided bandwidth = channel width), scaled to `energy` J with the
/// complex phase `phase`. Synthesized on the spectral grid, so every bin
/// outside the channel is exactly zero.
inline SampledField rrc_pulse(const Interval& channel, double rolloff, double energy, double phase,
                              const TimeGrid& grid) {
  if (!(rolloff >= 0.0 && rolloff <= 1.0)) throw InvalidArgument("rolloff must lie in [0, 1]");
  if (!(energy >= 0.0) || !std::isfinite(energy)) throw InvalidArgument("energy must be >= 0");
  if (!(channel.lo < channel.hi)) throw InvalidInterval("channel must have lo < hi");
  const double ny = grid.nyquist();
  if (!(channel.lo > -ny && channel.hi < ny)) {
    std::ostringstream os;
    os << "channel [" << channel.lo << ", " << channel.hi << "] needs a sample rate above "
       << 2.0 * std::max(std::abs(channel.lo), std::abs(channel.hi)) / (2.0 * std::numbers::pi)
       << " Hz";
    throw GridTooCoarse(os.str());
  }
  if (channel.width() < static_cast<double>(kMinBinsPerChannel) * grid.domega()) {
    std::ostringstream os;
    os << "channel width spans fewer than " << kMinBinsPerChannel
       << " frequency bins; lengthen the time window";
    throw ChannelTooNarrow(os.str());
  }
  std::vector<cplx> spec(grid.n, 0.0);
  if (energy > 0.0) {
    const double center = channel.center();
    const double width = channel.width();
    for (std::size_t k = 0; k < grid.n; ++k) {
      const double w = grid.omega(k);
      if (channel.contains(w)) spec[k] = rrc_amplitude(w - center, width, rolloff);
    }
    const double raw = Spectrum(grid, spec).energy();
    if (raw <= 0.0) throw ChannelTooNarrow("no spectral bin carries the pulse");
    const cplx scale = std::polar(std::sqrt(energy / raw), phase);
    for (auto& c : spec) c *= scale;
  }
  return inverse(Spectrum(grid, std::move(spec)));
}

}  // namespace brickwall
