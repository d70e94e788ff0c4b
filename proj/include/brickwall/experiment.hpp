#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "brickwall/config.hpp"
#include "brickwall/planner.hpp"
#include "brickwall/propagator.hpp"
#include "brickwall/spectral.hpp"
#include "brickwall/units.hpp"

namespace brickwall {

inline FiberParams fiber_params(const ExperimentConfig& c) {
  return FiberParams::from_engineering(c.fiber.alpha_db_per_km, c.fiber.beta2_ps2_per_km, c.fiber.gamma_per_w_per_km);
}

inline TimeGrid time_grid(const ExperimentConfig& c) {
  const double dt = units::ps(c.grid.dt_ps);
  const auto n = static_cast<std::size_t>(c.grid.samples);
  if (c.grid.t0_ns) return TimeGrid::make(dt, n, units::ns(*c.grid.t0_ns));
  return TimeGrid::centered(dt, n);
}

/// Shortest prefix length k whose densest Sidon sequence in {1..k} has n elements.
inline std::vector<std::int64_t> densest_sidon(std::size_t n) {
  SidonSearch search;
  for (int k = 1;; ++k) {
    const auto& best = search.max_for(k);
    if (best.length >= static_cast<int>(n)) return best.witness;
  }
}

struct ChannelLayout {
  std::vector<std::int64_t> sequence;  ///< empty for uniform / explicit intervals
  BandSet bands;
};

inline ChannelLayout channel_layout(const ExperimentConfig& c) {
  const double w = units::ghz_to_rad(c.channels.width_ghz);
  const auto n = static_cast<std::size_t>(c.channels.count);
  switch (c.channels.placement) {
    case Placement::Sidon: {
      auto seq = densest_sidon(n);
      auto plan = plan_channels(seq, w);
      return {std::move(seq), std::move(plan.bands)};
    }
    case Placement::Bose: {
      auto seq = sidon_for_channels(n);
      auto plan = plan_channels(seq, w);
      return {std::move(seq), std::move(plan.bands)};
    }
    case Placement::Custom: {
      auto plan = plan_channels(c.channels.sequence, w);
      return {c.channels.sequence, std::move(plan.bands)};
    }
    case Placement::Uniform:
      return {{}, uniform_bands(n, w, c.channels.spacing_w)};
    case Placement::Intervals: {
      std::vector<Interval> iv;
      const auto& x = c.channels.intervals_ghz;
      for (std::size_t i = 0; i + 1 < x.size(); i += 2) iv.push_back({units::ghz_to_rad(x[i]), units::ghz_to_rad(x[i + 1])});
      return {{}, make_bandset(std::move(iv))};
    }
  }
  throw ConfigError("channels.placement: unsupported");
}

struct PulseSet {
  std::vector<double> energies;  ///< J
  std::vector<double> phases;    ///< rad
};

/// Pinned values where given; otherwise energies uniform in [0, max] and
/// phases uniform in [-pi, pi) from a mt19937_64 seeded with run.seed.
inline PulseSet pulse_parameters(const ExperimentConfig& c, std::size_t channels) {
  std::mt19937_64 rng(c.run.seed);
  std::uniform_real_distribution<double> energy(0.0, c.pulses.random_energy_max_pj);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  PulseSet out;
  for (std::size_t i = 0; i < channels; ++i) {
    const double e = energy(rng);
    const double p = phase(rng);
    out.energies.push_back(units::pj(c.pulses.energies_pj.empty() ? e : c.pulses.energies_pj[i]));
    out.phases.push_back(c.pulses.phases_rad.empty() ? p : c.pulses.phases_rad[i]);
  }
  return out;
}

/// Sum of one root-raised-cosine pulse per channel.
inline SampledField launch_field(const TimeGrid& grid, const BandSet& bands, const PulseSet& pulses, double rolloff) {
  require_band_in_range(grid, bands);
  std::vector<cplx> q(grid.n, 0.0);
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const auto f = rrc_pulse(bands[i], rolloff, pulses.energies[i], pulses.phases[i], grid);
    for (std::size_t k = 0; k < grid.n; ++k) q[k] += f[k];
  }
  return SampledField(grid, std::move(q));
}

inline FilterMode filter_mode(const ExperimentConfig& c, const BandSet& bands) {
  switch (c.run.filter) {
    case FilterSetting::Lumped: return FilterMode::lumped(bands, units::km(c.run.filter_spacing_km));
    case FilterSetting::Distributed: return FilterMode::distributed(bands);
    case FilterSetting::None: return FilterMode::none();
  }
  return FilterMode::none();
}

struct Summary {
  double total_loss_pct = 0.0;      ///< 100 (1 - E(L)/E(0))
  double filter_loss_pct = 0.0;     ///< discarded energy as a share of E(0)
  std::vector<double> per_channel_max_dev_pct;
  double parseval_residual = 0.0;   ///< relative time/frequency energy mismatch of the final field
  std::size_t steps = 0;
  std::uint64_t seed = 0;
};

struct ExperimentResult {
  ChannelLayout layout;
  PulseSet pulses;
  PropagationResult run;
  Summary summary;
};

inline double relative_change(double now, double then) { return then == 0.0 ? 0.0 : now / then - 1.0; }

inline Summary summarize(const EnergyTrace& trace, const SampledField& final_field, std::size_t steps,
                         std::uint64_t seed) {
  Summary s;
  s.steps = steps;
  s.seed = seed;
  const double e0 = trace.total.front();
  if (e0 > 0.0) {
    s.total_loss_pct = 100.0 * (1.0 - trace.total.back() / e0);
    s.filter_loss_pct = 100.0 * trace.discarded_cumulative.back() / e0;
  }
  const std::size_t nch = trace.per_channel.front().size();
  s.per_channel_max_dev_pct.assign(nch, 0.0);
  for (const auto& row : trace.per_channel)
    for (std::size_t c = 0; c < nch; ++c)
      s.per_channel_max_dev_pct[c] =
          std::max(s.per_channel_max_dev_pct[c], 100.0 * std::abs(relative_change(row[c], trace.per_channel.front()[c])));
  const double et = final_field.energy();
  const double ef = transform(final_field).energy();
  s.parseval_residual = et == 0.0 ? 0.0 : std::abs(et - ef) / et;
  return s;
}

inline ExperimentResult run_experiment(const ExperimentConfig& c) {
  validate(c);
  const TimeGrid grid = time_grid(c);
  ChannelLayout layout = channel_layout(c);
  PulseSet pulses = pulse_parameters(c, layout.bands.size());
  const SampledField f0 = launch_field(grid, layout.bands, pulses, c.pulses.rolloff);
  PropagateOptions opts;
  opts.splitting = c.run.strang ? Splitting::Strang : Splitting::NonlinearFirst;
  PropagationResult run = propagate(f0, units::km(c.run.length_km), units::km(c.run.dz_km), fiber_params(c),
                                    filter_mode(c, layout.bands), layout.bands.channels(),
                                    units::km(c.run.record_every_km), opts);
  Summary summary = summarize(run.trace, run.field, run.steps, c.run.seed);
  return {std::move(layout), std::move(pulses), std::move(run), std::move(summary)};
}

inline void write_trace_csv(std::ostream& os, const EnergyTrace& trace) {
  const std::size_t nch = trace.per_channel.empty() ? 0 : trace.per_channel.front().size();
  os << "z_km,E_total_J";
  for (std::size_t c = 0; c < nch; ++c) os << ",E_ch" << c + 1 << "_J";
  os << ",E_discarded_cum_J\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << detail::fmt_double(units::to_km(trace.z[i])) << ',' << detail::fmt_double(trace.total[i]);
    for (double e : trace.per_channel[i]) os << ',' << detail::fmt_double(e);
    os << ',' << detail::fmt_double(trace.discarded_cumulative[i]) << '\n';
  }
}

inline nlohmann::ordered_json trace_json(const EnergyTrace& trace) {
  nlohmann::ordered_json j;
  std::vector<double> z_km;
  for (double z : trace.z) z_km.push_back(units::to_km(z));
  j["z_km"] = z_km;
  j["E_total_J"] = trace.total;
  j["E_channels_J"] = trace.per_channel;
  j["E_discarded_cum_J"] = trace.discarded_cumulative;
  return j;
}

inline nlohmann::ordered_json summary_json(const Summary& s) {
  nlohmann::ordered_json j;
  j["total_loss_pct"] = s.total_loss_pct;
  j["filter_loss_pct"] = s.filter_loss_pct;
  j["per_channel_max_dev_pct"] = s.per_channel_max_dev_pct;
  j["parseval_residual"] = s.parseval_residual;
  j["steps"] = s.steps;
  j["seed"] = s.seed;
  return j;
}

}  // namespace brickwall
