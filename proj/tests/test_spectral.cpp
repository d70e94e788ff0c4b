#include <random>

#include "brickwall/spectral.hpp"
#include "catch_amalgamated.hpp"

using namespace brickwall;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SampledField random_field(const TimeGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<cplx> q(g.n);
  for (auto& v : q) v = {d(rng), d(rng)};
  return SampledField(g, std::move(q));
}

/// Field whose spectrum is `value` on every bin inside `band` and zero elsewhere.
SampledField band_field(const TimeGrid& g, const BandSet& band, cplx value) {
  const auto mask = band_mask(g, band);
  std::vector<cplx> spec(g.n, 0.0);
  for (std::size_t k = 0; k < g.n; ++k)
    if (mask[k]) spec[k] = value;
  return inverse(Spectrum(g, std::move(spec)));
}

}  // namespace

TEST_CASE("grid validation", "[spectral]") {
  CHECK_THROWS_AS(TimeGrid::make(1.0, 1000, 0.0), InvalidGrid);
  CHECK_THROWS_AS(TimeGrid::make(0.0, 1024, 0.0), InvalidGrid);
  CHECK_THROWS_AS(TimeGrid::make(1.0, 1, 0.0), InvalidGrid);
  const auto g = TimeGrid::centered(0.5, 16);
  CHECK(g.t0 == -4.0);
  CHECK(g.omega(8) == 0.0);
  CHECK_THAT(g.omega(0), WithinRel(-g.nyquist(), 1e-15));
}

TEST_CASE("transform satisfies Parseval and round-trips", "[spectral]") {
  for (std::size_t n : {16u, 1024u, 4096u}) {
    const auto g = TimeGrid::make(1e-11, n, -3.7e-9);
    const auto f = random_field(g, n);
    const auto s = transform(f);
    CHECK_THAT(s.energy(), WithinRel(f.energy(), 1e-12));
    const auto back = inverse(s);
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      err = std::max(err, std::abs(back[i] - f[i]));
      ref = std::max(ref, std::abs(f[i]));
    }
    CHECK(err <= 1e-12 * ref);
  }
}

TEST_CASE("rectangular pulse transforms to a sinc", "[spectral]") {
  // 256 unit samples on t = -128..127 with dt = 1
  const auto g = TimeGrid::centered(1.0, 4096);
  std::vector<cplx> q(g.n, 0.0);
  for (std::size_t m = 0; m < g.n; ++m)
    if (g.time(m) >= -128.0 && g.time(m) <= 127.0) q[m] = 1.0;
  const auto s = transform(SampledField(g, q));
  const double T = 256.0;
  for (std::size_t k = 0; k < g.n; ++k) {
    const double w = g.omega(k);
    // exact discrete sum (Dirichlet kernel), carrying the half-sample offset
    const cplx shift = std::polar(1.0, 0.5 * w);
    const cplx exact = std::abs(w) < 1e-12 ? cplx(T) : shift * std::sin(128.0 * w) / std::sin(0.5 * w);
    REQUIRE(std::abs(s[k] - exact) <= 1e-9 * T);
    // continuous-time sinc, accurate while w*dt is small
    if (std::abs(w) < 2.0 * std::numbers::pi * 8.0 / T)
      CHECK(std::abs(s[k] - shift * T * sinc(w * T / (2.0 * std::numbers::pi))) <= 2e-3 * T);
  }
}

TEST_CASE("band energy and brick-wall filtering", "[spectral]") {
  const auto g = TimeGrid::centered(0.01, 2048);
  const auto left = make_bandset({{-200.0, -100.0}});
  const auto right = make_bandset({{100.0, 200.0}});
  const auto both = make_bandset({{-200.0, -100.0}, {100.0, 200.0}});
  const auto f = band_field(g, both, cplx(1.0, 2.0));

  SECTION("band energies partition the field") {
    CHECK_THAT(band_energy(f, both), WithinRel(f.energy(), 1e-12));
    CHECK_THAT(band_energy(f, left) + band_energy(f, right), WithinRel(f.energy(), 1e-12));
  }
  SECTION("filtering one of two equal bands halves the energy") {
    const auto r = apply_brickwall(f, right, 0.0, 1.0);
    CHECK_THAT(r.discarded, WithinRel(0.5 * f.energy(), 1e-12));
    CHECK_THAT(r.field.energy(), WithinRel(0.5 * f.energy(), 1e-12));
  }
  SECTION("a band-limited field passes unchanged") {
    const auto r = apply_brickwall(f, both, 0.0, 1.0);
    CHECK(r.discarded == 0.0);
    double err = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) err = std::max(err, std::abs(r.field[i] - f[i]));
    CHECK(err < 1e-12);
  }
  SECTION("in-band energy decays as exp(-alpha0 dz)") {
    const double alpha0 = 0.3, dz = 2.0;
    const auto r = apply_brickwall(f, both, alpha0, dz);
    CHECK_THAT(r.field.energy(), WithinRel(std::exp(-alpha0 * dz) * f.energy(), 1e-12));
  }
  SECTION("bands outside the Nyquist range are rejected") {
    CHECK_THROWS_AS(band_energy(f, make_bandset({{0.0, 1.1 * g.nyquist()}})), BandOutOfRange);
  }
}

TEST_CASE("impulse response transforms to the band indicator", "[spectral]") {
  const double two_pi = 2.0 * std::numbers::pi;
  const auto band = make_bandset({{-two_pi * 3.0, -two_pi * 2.0}, {two_pi * 1.0, two_pi * 2.5}});
  const auto g = TimeGrid::centered(0.05, 1 << 14);
  std::vector<cplx> h(g.n);
  for (std::size_t m = 0; m < g.n; ++m) h[m] = impulse_response(band, g.time(m));
  const auto H = transform(SampledField(g, h));
  // away from the jump discontinuities the truncated sinc train is within 2 %
  const double guard = 0.05 * two_pi;
  double worst = 0.0;
  for (std::size_t k = 0; k < g.n; ++k) {
    const double w = g.omega(k);
    bool near_edge = false;
    for (const auto& iv : band.intervals())
      near_edge = near_edge || std::abs(w - iv.lo) < guard || std::abs(w - iv.hi) < guard;
    if (near_edge) continue;
    worst = std::max(worst, std::abs(H[k] - (band.contains(w) ? 1.0 : 0.0)));
  }
  CHECK(worst < 0.02);
}

TEST_CASE("root-raised-cosine pulses", "[spectral]") {
  const auto g = TimeGrid::centered(1.0 / 128e9, 8192);
  const double W = 2.0 * std::numbers::pi * 1e9;
  const Interval ch{4 * W, 5 * W};
  const double energy = 1.2e-12, phase = 0.7;
  const auto f = rrc_pulse(ch, 0.15, energy, phase, g);

  CHECK_THAT(f.energy(), WithinRel(energy, 1e-12));
  const auto s = transform(f);
  CHECK_THAT(band_energy(s, make_bandset({ch})), WithinRel(energy, 1e-12));
  CHECK(s.energy() - band_energy(s, make_bandset({ch})) <= 1e-14 * energy);
  // spectrum is real and positive times e^{j phase}
  for (std::size_t k = 0; k < g.n; ++k)
    if (std::abs(s[k]) > 1e-3 * std::abs(s[g.n / 2 + 4 * 64 + 32]))
      REQUIRE(std::abs(std::remainder(std::arg(s[k]) - phase, 2.0 * std::numbers::pi)) < 1e-9);
  // peak at t = 0
  std::size_t peak = 0;
  for (std::size_t m = 0; m < g.n; ++m)
    if (std::abs(f[m]) > std::abs(f[peak])) peak = m;
  CHECK(g.time(peak) == 0.0);

  CHECK(rrc_amplitude(0.0, 1.0, 0.15) == 1.0);
  CHECK(rrc_amplitude(0.6, 1.0, 0.15) == 0.0);
  CHECK_THAT(rrc_amplitude(0.5 / 1.15, 1.0, 0.15), WithinAbs(std::sqrt(0.5), 1e-12));

  CHECK(rrc_pulse(ch, 0.15, 0.0, 0.0, g).energy() == 0.0);
  CHECK_THROWS_AS(rrc_pulse({60 * W, 65 * W}, 0.15, energy, 0.0, g), GridTooCoarse);
  CHECK_THROWS_AS(rrc_pulse({0.0, 4 * g.domega()}, 0.15, energy, 0.0, g), ChannelTooNarrow);
}
