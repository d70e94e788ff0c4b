// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only
//
// Exit status is non-zero when any selected criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "brickwall/brickwall.hpp"

using namespace brickwall;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string config_path(const char* name) { return std::string(BRICKWALL_SOURCE_DIR) + "/configs/" + name; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_total_deviation(const EnergyTrace& t) {
  double d = 0.0;
  for (double e : t.total) d = std::max(d, std::abs(e / t.total.front() - 1.0));
  return d;
}

Outcome parseval_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double worst_energy = 0.0, worst_roundtrip = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = std::size_t{1} << (10 + i % 5);
    const double dt = std::pow(10.0, -12.0 + 2.0 * uni(rng));
    const auto g = TimeGrid::make(dt, n, uni(rng) * static_cast<double>(n) * dt);
    std::vector<cplx> q(n);
    for (auto& v : q) v = {normal(rng), normal(rng)};
    const SampledField f(g, q);
    const Spectrum s = transform(f);
    worst_energy = std::max(worst_energy, std::abs(s.energy() - f.energy()) / f.energy());
    const SampledField back = inverse(s);
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      num += std::norm(back[m] - f[m]);
      den += std::norm(f[m]);
    }
    worst_roundtrip = std::max(worst_roundtrip, std::sqrt(num / den));
  }
  const double secs = seconds_since(t0);
  const bool pass = worst_energy < 1e-12 && worst_roundtrip < 1e-12 && secs < 10.0;
  return {pass, fmt("energy mismatch %.2e, round-trip error %.2e (both < 1e-12), %.2f s (< 10 s)", worst_energy,
                    worst_roundtrip, secs)};
}

ExperimentResult distributed_sidon(double dz_km, double alpha_db_per_km) {
  auto c = load_config(config_path("sidon5.cfg"));
  c.fiber.alpha_db_per_km = alpha_db_per_km;
  c.run.filter = FilterSetting::Distributed;
  c.run.dz_km = dz_km;
  return run_experiment(c);
}

Outcome conservation() {
  const auto t0 = std::chrono::steady_clock::now();
  const double d1 = max_total_deviation(distributed_sidon(0.1, 0.0).run.trace);
  const double d2 = max_total_deviation(distributed_sidon(0.05, 0.0).run.trace);
  const double secs = seconds_since(t0);
  const bool pass = d1 < 1e-6 && d1 / d2 >= 2.0 && secs < 120.0;
  return {pass, fmt("max |E(z)/E(0)-1| = %.3e at dz 0.1 km (< 1e-6), %.3e at 0.05 km, ratio %.5f (>= 2), %.1f s",
                    d1, d2, d1 / d2, secs)};
}

Outcome attenuation_law() {
  const double alpha_db = 0.2;
  const auto r = distributed_sidon(0.1, alpha_db);
  const double alpha0 = units::db_per_km_to_per_m(alpha_db);
  const auto& t = r.run.trace;
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    worst = std::max(worst, std::abs((t.total[i] / t.total[0]) / std::exp(-alpha0 * t.z[i]) - 1.0));
  return {worst < 1e-6, fmt("max relative deviation from exp(-alpha0 z) = %.3e (< 1e-6)", worst)};
}

Outcome sidon_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_experiment(load_config(config_path("sidon5.cfg")));
  const double secs = seconds_since(t0);
  const auto& s = r.summary;
  const double worst = *std::max_element(s.per_channel_max_dev_pct.begin(), s.per_channel_max_dev_pct.end());
  const bool loss_ok = std::abs(s.total_loss_pct - 2.2) <= 0.3;
  const bool channels_ok = worst < 3.0;
  std::string devs;
  for (double d : s.per_channel_max_dev_pct) devs += fmt(" %.2f", d);
  return {loss_ok && channels_ok && secs < 300.0,
          fmt("loss %.3f%% (2.2 +/- 0.3) %s; per-channel max deviation [%%]:%s (all < 3) %s; %.1f s",
              s.total_loss_pct, loss_ok ? "ok" : "out of range", devs.c_str(), channels_ok ? "ok" : "violated", secs)};
}

Outcome uniform_reproduction() {
  const auto r = run_experiment(load_config(config_path("uniform5.cfg")));
  const auto& s = r.summary;
  const double worst = *std::max_element(s.per_channel_max_dev_pct.begin(), s.per_channel_max_dev_pct.end());
  const bool loss_ok = std::abs(s.total_loss_pct - 0.98) <= 0.3;
  const bool fluct_ok = worst > 30.0;
  std::string devs;
  for (double d : s.per_channel_max_dev_pct) devs += fmt(" %.2f", d);
  return {loss_ok && fluct_ok, fmt("loss %.3f%% (0.98 +/- 0.3) %s; per-channel max deviation [%%]:%s (one > 30) %s",
                                   s.total_loss_pct, loss_ok ? "ok" : "out of range", devs.c_str(),
                                   fluct_ok ? "ok" : "violated")};
}

Outcome lumped_scaling() {
  const std::vector<double> spacing{2.5, 5.0, 10.0, 20.0};
  std::vector<double> lost;
  for (double s : spacing) {
    auto c = load_config(config_path("uniform5.cfg"));
    c.run.filter_spacing_km = s;
    c.run.record_every_km = 20.0;
    const auto r = run_experiment(c);
    lost.push_back(r.run.trace.discarded_cumulative.back());
  }
  bool up = true, down = true;
  for (std::size_t i = 1; i < lost.size(); ++i) {
    up = up && lost[i] > lost[i - 1];
    down = down && lost[i] < lost[i - 1];
  }
  // least-squares line through (spacing, lost)
  const double n = static_cast<double>(spacing.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < spacing.size(); ++i) {
    sx += spacing[i];
    sy += lost[i];
    sxx += spacing[i] * spacing[i];
    sxy += spacing[i] * lost[i];
    syy += lost[i] * lost[i];
  }
  const double cov = sxy - sx * sy / n, vx = sxx - sx * sx / n, vy = syy - sy * sy / n;
  const double r2 = cov * cov / (vx * vy);
  return {(up || down) && r2 > 0.95,
          fmt("discarded at 2.5/5/10/20 km = %.4e %.4e %.4e %.4e J, %s, linear R^2 = %.4f (> 0.95)", lost[0], lost[1],
              lost[2], lost[3], up ? "increasing" : (down ? "decreasing" : "not monotone"), r2)};
}

Outcome three_tone() {
  const auto p = FiberParams::from_engineering(0.0, -21.667, 1.2578);
  ToneState s0;
  s0.domega = units::ghz_to_rad(10.0);
  s0.q = {std::polar(0.1, 0.0), std::polar(0.1, 0.9), std::polar(0.1, -0.4)};
  const double dz = 10.0;
  const auto traj = integrate_tones(s0, 100e3, dz, p);
  double drift = 0.0;
  for (const auto& s : traj) drift = std::max(drift, std::abs(s.total_power() / s0.total_power() - 1.0));

  ToneState two = s0;
  two.q = {std::polar(0.12, 0.5), 0.0, std::polar(0.08, -2.0)};
  double two_dev = 0.0;
  for (const auto& s : integrate_tones(two, 100e3, dz, p))
    for (int n : {0, 2}) two_dev = std::max(two_dev, std::abs(s.powers()[n] / two.powers()[n] - 1.0));

  double fd_err = 0.0;
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    const auto rhs = power_rhs(traj[i], p.gamma);
    const double scale = std::abs(rhs[1]) + 1e-30;
    for (int n = 0; n < 3; ++n) {
      const double fd = (traj[i + 1].powers()[n] - traj[i - 1].powers()[n]) / (2.0 * dz);
      fd_err = std::max(fd_err, std::abs(fd - rhs[n]) / scale);
    }
  }
  return {drift < 1e-10 && two_dev < 1e-10 && fd_err < 1e-6,
          fmt("total drift %.2e (< 1e-10), two-tone deviation %.2e (< 1e-10), power_rhs vs finite differences %.2e "
              "(< 1e-6)",
              drift, two_dev, fd_err)};
}

Outcome channel_rhs() {
  // Sidon grid: the rate stays negligible along the propagation.
  const auto cs = load_config(config_path("sidon5.cfg"));
  const auto fiber = fiber_params(cs);
  const auto layout = channel_layout(cs);
  const auto channels = layout.bands.channels();
  const double L = units::km(cs.run.length_km);
  double worst = 0.0;
  PropagateOptions opts;
  opts.observer = [&](double, const SampledField& f) {
    const Spectrum s = transform(f);
    for (std::size_t n = 0; n < channels.size(); ++n) {
      const double en = band_energy(s, channels[n]);
      worst = std::max(worst, std::abs(channel_energy_rhs(f, n, channels, fiber)) / (en / L));
    }
  };
  const auto grid = time_grid(cs);
  const auto launch = launch_field(grid, layout.bands, pulse_parameters(cs, channels.size()), cs.pulses.rolloff);
  propagate(launch, L, units::km(cs.run.dz_km), fiber, filter_mode(cs, layout.bands), channels,
            units::km(cs.run.record_every_km), opts);

  // Uniform grid: the sign of the rate at z = 0 predicts the initial trend.
  const auto cu = load_config(config_path("uniform5.cfg"));
  const auto ul = channel_layout(cu);
  const auto uch = ul.bands.channels();
  const auto u0 = launch_field(grid, ul.bands, pulse_parameters(cu, uch.size()), cu.pulses.rolloff);
  const auto short_run = propagate(u0, 500.0, 10.0, fiber_params(cu), FilterMode::none(), uch, 500.0);
  int agree = 0;
  std::string signs;
  for (std::size_t n = 0; n < uch.size(); ++n) {
    const double rate = channel_energy_rhs(u0, n, uch, fiber_params(cu));
    const double trend = short_run.trace.per_channel.back()[n] - short_run.trace.per_channel.front()[n];
    agree += (rate > 0) == (trend > 0) && rate != 0.0;
    signs += fmt(" %c/%c", rate > 0 ? '+' : '-', trend > 0 ? '+' : '-');
  }
  const bool pass = worst < 1e-4 && agree == static_cast<int>(uch.size());
  return {pass, fmt("Sidon max |dE_n/dz| / (E_n/L) = %.2e (< 1e-4); uniform rate/trend signs:%s (%d/%zu agree)", worst,
                    signs.c_str(), agree, uch.size())};
}

Outcome bose() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::int64_t> expected{1, 6, 22, 62, 68, 69, 71, 88, 99, 103, 113};
  const bool exact = bose_sequence(11) == expected;
  int checked = 0, bad = 0;
  for (std::uint64_t n = 2; n <= 64; ++n) {
    if (!gf::as_prime_power(n)) continue;
    ++checked;
    const auto s = bose_sequence(n);
    if (s.size() != n || !is_sidon(s) || s.back() > static_cast<std::int64_t>(n * n - 1)) ++bad;
  }
  const double secs = seconds_since(t0);
  return {exact && bad == 0 && secs < 10.0,
          fmt("Bose(11) %s; %d prime powers <= 64 checked, %d bad; %.2f s (< 10 s)", exact ? "exact" : "MISMATCH",
              checked, bad, secs)};
}

Outcome bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  SidonSearch search;
  int violations = 0;
  for (int k = 1; k <= 60; ++k) violations += !check_erdos_bound(k, search);
  const auto& n12 = search.max_for(12);
  std::vector<std::int64_t> mirror;
  for (auto it = n12.witness.rbegin(); it != n12.witness.rend(); ++it) mirror.push_back(13 - *it);
  const std::vector<std::int64_t> ref{1, 2, 5, 10, 12};
  const bool n12_ok = n12.length == 5 && (n12.witness == ref || mirror == ref);

  std::string etas;
  bool in_band = true, decreasing = true;
  double prev = 1e9;
  for (std::uint64_t n : {11, 13, 16, 25, 49}) {
    const double en = spectral_filling_efficiency(plan_channels(bose_sequence(n), 1.0)) * static_cast<double>(n);
    etas += fmt(" %.4f", en);
    in_band = in_band && en > 0.5 && en < 0.65;
    decreasing = decreasing && en < prev;
    prev = en;
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && n12_ok && in_band && decreasing && secs < 60.0,
          fmt("bound violations for k <= 60: %d; N(12) = %d %s; eta*N for N = 11,13,16,25,49:%s, in (0.5, 0.65) %s, "
              "decreasing %s; %.2f s",
              violations, n12.length, n12_ok ? "ok" : "wrong", etas.c_str(), in_band ? "yes" : "no",
              decreasing ? "yes" : "no", secs)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"transform Parseval and round-trip", parseval_suite},
      {"distributed filtering conserves energy", conservation},
      {"attenuation law", attenuation_law},
      {"Sidon 5-channel reproduction", sidon_reproduction},
      {"uniform 5-channel reproduction", uniform_reproduction},
      {"lumped filter loss scaling", lumped_scaling},
      {"three-tone oracle", three_tone},
      {"channel energy rate cross-check", channel_rhs},
      {"Bose construction", bose},
      {"Sidon bounds and filling efficiency", bounds},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(all.size()); ++i) selected.push_back(i);

  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(all.size())) {
      std::fprintf(stderr, "no criterion %d\n", id);
      return 2;
    }
    const auto& c = all[static_cast<std::size_t>(id - 1)];
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
