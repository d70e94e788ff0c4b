#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "brickwall/brickwall.hpp"

namespace fs = std::filesystem;
using namespace brickwall;
using json = nlohmann::ordered_json;

namespace {

std::string num(double x) { return detail::fmt_double(x); }

/// rad/s -> GHz rounded to 12 significant digits, hiding unit-conversion rounding.
double ghz(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", units::rad_to_ghz(w));
  return std::stod(buf);
}

void emit_rows(std::ostream& os, const std::string& format, const std::vector<std::string>& header,
               const std::vector<std::vector<json>>& rows) {
  if (format == "json") {
    json out = json::array();
    for (const auto& r : rows) {
      json obj;
      for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = r[i];
      out.push_back(obj);
    }
    os << out.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << ",";
      if (r[i].is_number_float())
        os << num(r[i].get<double>());
      else if (r[i].is_string())
        os << r[i].get<std::string>();
      else
        os << r[i].dump();
    }
    os << "\n";
  }
}

struct SimulateArgs {
  std::string config;
  std::string out = ".";
  std::optional<double> dz_km, filter_spacing_km, record_every_km;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
};

int simulate(const SimulateArgs& a) {
  ExperimentConfig c = load_config(a.config);
  if (a.dz_km) c.run.dz_km = *a.dz_km;
  if (a.filter_spacing_km) c.run.filter_spacing_km = *a.filter_spacing_km;
  if (a.record_every_km) c.run.record_every_km = *a.record_every_km;
  if (a.seed) c.run.seed = *a.seed;
  validate(c);

  const ExperimentResult r = run_experiment(c);
  fs::create_directories(a.out);
  const fs::path trace_path = fs::path(a.out) / (a.format == "json" ? "trace.json" : "trace.csv");
  {
    std::ofstream os(trace_path);
    if (a.format == "json")
      os << trace_json(r.run.trace).dump(2) << "\n";
    else
      write_trace_csv(os, r.run.trace);
    if (!os) throw Error("cannot write " + trace_path.string());
  }
  const json summary = summary_json(r.summary);
  {
    const fs::path p = fs::path(a.out) / "summary.json";
    std::ofstream os(p);
    os << summary.dump(2) << "\n";
    if (!os) throw Error("cannot write " + p.string());
  }
  std::cout << summary.dump(2) << "\n";
  return 0;
}

struct PlanArgs {
  std::uint64_t channels = 5;
  double width_ghz = 1.0;
  std::string placement = "sidon";
  std::vector<std::int64_t> sequence;
  double spacing_w = 5.625;
  std::string format = "csv";
};

int plan(const PlanArgs& a) {
  ExperimentConfig c;
  c.channels.placement = parse_placement(a.placement);
  if (c.channels.placement == Placement::Intervals) throw InvalidArgument("use `check` for explicit intervals");
  c.channels.count = a.channels;
  c.channels.width_ghz = a.width_ghz;
  c.channels.sequence = a.sequence;
  c.channels.spacing_w = a.spacing_w;
  if (!(a.width_ghz > 0.0)) throw InvalidArgument("--width-ghz must be positive");
  if (c.channels.placement == Placement::Custom && a.sequence.empty())
    throw InvalidArgument("--sequence is required for placement custom");
  const ChannelLayout layout = channel_layout(c);
  const auto verdict = is_energy_decoupled(layout.bands);
  const double eta = spectral_filling_efficiency(layout.bands);
  const auto n = static_cast<double>(layout.bands.size());

  if (a.format == "json") {
    json j;
    j["placement"] = a.placement;
    j["sequence"] = layout.sequence;
    json ch = json::array();
    for (const auto& iv : layout.bands.intervals())
      ch.push_back({{"lo_ghz", ghz(iv.lo)}, {"hi_ghz", ghz(iv.hi)}, {"center_ghz", ghz(iv.center())}});
    j["channels"] = ch;
    j["decoupled"] = verdict.decoupled;
    if (verdict.witness)
      j["witness"] = {{"first", verdict.witness->first}, {"second", verdict.witness->second}};
    j["eta"] = eta;
    j["eta_times_n"] = eta * n;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "# placement " << a.placement;
  if (!layout.sequence.empty()) {
    std::cout << ", sequence";
    for (auto m : layout.sequence) std::cout << " " << m;
  }
  std::cout << "\n# decoupled " << (verdict.decoupled ? "yes" : "no");
  if (verdict.witness)
    std::cout << " (W" << verdict.witness->first[0] << "+W" << verdict.witness->first[1] << " overlaps W"
              << verdict.witness->second[0] << "+W" << verdict.witness->second[1] << ")";
  std::cout << "\n# eta " << num(eta) << ", eta*N " << num(eta * n) << "\n";
  std::vector<std::vector<json>> rows;
  for (std::size_t i = 0; i < layout.bands.size(); ++i) {
    const auto& iv = layout.bands[i];
    rows.push_back({i + 1, ghz(iv.lo), ghz(iv.hi), ghz(iv.center())});
  }
  emit_rows(std::cout, "csv", {"channel", "lo_ghz", "hi_ghz", "center_ghz"}, rows);
  return 0;
}

/// Whitespace- or comma-separated "lo hi" pairs, one channel per line; '#' starts a comment.
std::vector<Interval> read_intervals(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open intervals file '" + path + "'");
  std::vector<Interval> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    double lo = 0.0, hi = 0.0;
    if (!(ls >> lo)) continue;
    std::string rest;
    if (!(ls >> hi) || (ls >> rest))
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected two numbers 'lo hi'");
    out.push_back({lo, hi});
  }
  return out;
}

int check(const std::string& path, const std::string& format) {
  const BandSet bands = make_bandset(read_intervals(path));
  const auto verdict = is_energy_decoupled(bands);
  if (format == "json") {
    json j;
    j["decoupled"] = verdict.decoupled;
    if (verdict.witness)
      j["witness"] = {{"first", verdict.witness->first}, {"second", verdict.witness->second}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "decoupled," << (verdict.decoupled ? "true" : "false") << "\n";
  if (verdict.witness)
    std::cout << "witness," << verdict.witness->first[0] << "," << verdict.witness->first[1] << ","
              << verdict.witness->second[0] << "," << verdict.witness->second[1] << "\n";
  return 0;
}

struct ToneArgs {
  std::optional<std::string> config;
  std::vector<double> powers_mw{1.0, 1.0, 1.0};
  std::vector<double> phases_rad{0.0, 0.0, 0.0};
  double spacing_ghz = 10.0;
  double length_km = 100.0;
  double dz_km = 0.1;
  double record_every_km = 1.0;
  std::optional<double> alpha_db_per_km, beta2_ps2_per_km, gamma_per_w_per_km;
  std::string out;
  std::string format = "csv";
};

int three_tone(const ToneArgs& a) {
  FiberConfig fc;
  if (a.config) fc = load_config(*a.config).fiber;
  if (a.alpha_db_per_km) fc.alpha_db_per_km = *a.alpha_db_per_km;
  if (a.beta2_ps2_per_km) fc.beta2_ps2_per_km = *a.beta2_ps2_per_km;
  if (a.gamma_per_w_per_km) fc.gamma_per_w_per_km = *a.gamma_per_w_per_km;
  const FiberParams p = FiberParams::from_engineering(fc.alpha_db_per_km, fc.beta2_ps2_per_km, fc.gamma_per_w_per_km);
  if (a.powers_mw.size() != 3 || a.phases_rad.size() != 3) throw InvalidArgument("need three powers and three phases");

  ToneState s0;
  s0.domega = units::ghz_to_rad(a.spacing_ghz);
  for (int i = 0; i < 3; ++i) {
    if (a.powers_mw[i] < 0.0) throw InvalidArgument("powers must be >= 0");
    s0.q[i] = std::polar(std::sqrt(units::mw(a.powers_mw[i])), a.phases_rad[i]);
  }
  const auto traj = integrate_tones(s0, units::km(a.length_km), units::km(a.dz_km), p);
  const std::size_t stride = detail::steps_in(a.record_every_km, a.dz_km, "record_every");

  std::vector<std::vector<json>> rows;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (i % stride != 0 && i + 1 != traj.size()) continue;
    const auto pw = traj[i].powers();
    rows.push_back({units::to_km(traj[i].z), pw[0], pw[1], pw[2], traj[i].total_power()});
  }
  const std::vector<std::string> header{"z_km", "P1_W", "P2_W", "P3_W", "P_total_W"};
  if (a.out.empty()) {
    emit_rows(std::cout, a.format, header, rows);
  } else {
    std::ofstream os(a.out);
    emit_rows(os, a.format, header, rows);
    if (!os) throw Error("cannot write " + a.out);
  }
  return 0;
}

int bounds(int k_max, const std::string& format) {
  if (k_max < 1) throw InvalidArgument("--k-max must be >= 1");
  SidonSearch search;
  // Longest Bose sequence that fits inside {1..k}, per prime power.
  std::map<std::int64_t, std::uint64_t> bose_fit;  // max element -> N
  for (std::uint64_t q = 2; q <= static_cast<std::uint64_t>(k_max); ++q)
    if (gf::as_prime_power(q)) bose_fit[bose_sequence(q).back()] = q;
  std::vector<std::vector<json>> rows;
  std::uint64_t bose_best = 1;
  for (int k = 1; k <= k_max; ++k) {
    if (auto it = bose_fit.find(k); it != bose_fit.end()) bose_best = std::max(bose_best, it->second);
    const auto& best = search.max_for(k);
    rows.push_back({k, best.length, erdos_bound(k), bose_best, best.length <= erdos_bound(k)});
  }
  emit_rows(std::cout, format, {"k", "N_k", "erdos_bound", "bose_length", "bound_holds"}, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brick-wall filtered fiber propagation and FWM-free channel planning"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"csv", "json"});

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Propagate a configured launch and write the energy trace");
  s->add_option("--config", sim.config, "Experiment config file")->required()->check(CLI::ExistingFile);
  s->add_option("--out", sim.out, "Output directory")->capture_default_str();
  s->add_option("--dz-km", sim.dz_km, "Override run.dz_km");
  s->add_option("--filter-spacing-km", sim.filter_spacing_km, "Override run.filter_spacing_km");
  s->add_option("--record-every-km", sim.record_every_km, "Override run.record_every_km");
  s->add_option("--seed", sim.seed, "Override run.seed");
  s->add_option("--format", sim.format, "Trace file format")->check(formats)->capture_default_str();

  PlanArgs pl;
  auto* p = app.add_subcommand("plan", "Lay out N channels and report decoupling and filling efficiency");
  p->add_option("-n,--channels", pl.channels, "Number of channels")->capture_default_str();
  p->add_option("--width-ghz", pl.width_ghz, "Channel width W")->capture_default_str();
  p->add_option("--placement", pl.placement, "sidon|bose|uniform|custom")
      ->check(CLI::IsMember({"sidon", "bose", "uniform", "custom"}))
      ->capture_default_str();
  p->add_option("--sequence", pl.sequence, "Integer sequence for placement custom")->delimiter(',');
  p->add_option("--spacing-w", pl.spacing_w, "Uniform center spacing in channel widths")->capture_default_str();
  p->add_option("--format", pl.format, "Output format")->check(formats)->capture_default_str();

  std::string intervals_path, check_format = "csv";
  auto* c = app.add_subcommand("check", "Energy-decoupling verdict for explicit channel intervals");
  c->add_option("intervals", intervals_path, "File with one 'lo hi' pair per line")->required()->check(CLI::ExistingFile);
  c->add_option("--format", check_format, "Output format")->check(formats)->capture_default_str();

  ToneArgs tn;
  auto* t = app.add_subcommand("three-tone", "Integrate the three-tone FWM equations");
  t->add_option("--config", tn.config, "Take fiber parameters from a config file");
  t->add_option("--powers-mw", tn.powers_mw, "Launch powers of the three tones")->delimiter(',')->expected(3);
  t->add_option("--phases-rad", tn.phases_rad, "Launch phases of the three tones")->delimiter(',')->expected(3);
  t->add_option("--spacing-ghz", tn.spacing_ghz, "Tone spacing")->capture_default_str();
  t->add_option("--length-km", tn.length_km, "Fiber length")->capture_default_str();
  t->add_option("--dz-km", tn.dz_km, "RK4 step")->capture_default_str();
  t->add_option("--record-every-km", tn.record_every_km, "Output spacing")->capture_default_str();
  t->add_option("--alpha-db-per-km", tn.alpha_db_per_km, "Attenuation");
  t->add_option("--beta2-ps2-per-km", tn.beta2_ps2_per_km, "Group-velocity dispersion");
  t->add_option("--gamma-per-w-per-km", tn.gamma_per_w_per_km, "Nonlinear coefficient");
  t->add_option("--out", tn.out, "Output file (stdout if omitted)");
  t->add_option("--format", tn.format, "Output format")->check(formats)->capture_default_str();

  int k_max = 30;
  std::string bounds_format = "csv";
  auto* b = app.add_subcommand("bounds", "Brute-force N(k) against the finite-k upper bound");
  b->add_option("--k-max", k_max, "Largest k")->check(CLI::Range(1, SidonSearch::kMaxK))->capture_default_str();
  b->add_option("--format", bounds_format, "Output format")->check(formats)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (s->parsed()) return simulate(sim);
    if (p->parsed()) return plan(pl);
    if (c->parsed()) return check(intervals_path, check_format);
    if (t->parsed()) return three_tone(tn);
    if (b->parsed()) return bounds(k_max, bounds_format);
  } catch (const brickwall::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
