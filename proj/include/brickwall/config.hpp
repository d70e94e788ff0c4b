#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "brickwall/errors.hpp"

// Experiment configuration: an INI file with [fiber], [grid], [channels],
// [pulses] and [run] sections. Every physical key names its unit.
namespace brickwall {

enum class Placement { Sidon, Bose, Uniform, Custom, Intervals };
enum class FilterSetting { Lumped, Distributed, None };

inline const char* to_string(Placement p) {
  switch (p) {
    case Placement::Sidon: return "sidon";
    case Placement::Bose: return "bose";
    case Placement::Uniform: return "uniform";
    case Placement::Custom: return "custom";
    case Placement::Intervals: return "intervals";
  }
  return "?";
}

inline const char* to_string(FilterSetting f) {
  switch (f) {
    case FilterSetting::Lumped: return "lumped";
    case FilterSetting::Distributed: return "distributed";
    case FilterSetting::None: return "none";
  }
  return "?";
}

struct FiberConfig {
  double alpha_db_per_km = 0.0;
  double beta2_ps2_per_km = -21.667;
  double gamma_per_w_per_km = 1.2578;
  friend bool operator==(const FiberConfig&, const FiberConfig&) = default;
};

struct GridConfig {
  double dt_ps = 1000.0 / 128.0;
  std::uint64_t samples = 8192;
  std::optional<double> t0_ns;  ///< window start; centered on t = 0 when unset
  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct ChannelConfig {
  Placement placement = Placement::Sidon;
  std::uint64_t count = 5;
  double width_ghz = 1.0;
  double spacing_w = 5.625;                        ///< uniform: center spacing in channel widths
  std::vector<std::int64_t> sequence;              ///< custom
  std::vector<double> intervals_ghz;               ///< intervals: lo0, hi0, lo1, hi1, ...
  friend bool operator==(const ChannelConfig&, const ChannelConfig&) = default;
};

struct PulseConfig {
  std::vector<double> energies_pj;  ///< empty: drawn from the seeded generator
  std::vector<double> phases_rad;   ///< empty: drawn from the seeded generator
  double rolloff = 0.15;
  double random_energy_max_pj = 1.5;
  friend bool operator==(const PulseConfig&, const PulseConfig&) = default;
};

struct RunConfig {
  double length_km = 160.0;
  double dz_km = 0.1;
  FilterSetting filter = FilterSetting::Lumped;
  double filter_spacing_km = 10.0;
  double record_every_km = 10.0;
  bool strang = false;
  std::uint64_t seed = 1;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct ExperimentConfig {
  FiberConfig fiber;
  GridConfig grid;
  ChannelConfig channels;
  PulseConfig pulses;
  RunConfig run;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

namespace detail {

inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    if constexpr (std::is_floating_point_v<T>)
      s += fmt_double(v[i]);
    else
      s += std::to_string(v[i]);
  }
  return s;
}

[[noreturn]] inline void config_fail(const std::string& key, const std::string& what) {
  throw ConfigError(key + ": " + what);
}

inline double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    config_fail(key, "expected a number, got '" + text + "'");
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used != text.size()) config_fail(key, "expected a number, got '" + text + "'");
  if (!std::isfinite(v)) config_fail(key, "must be finite");
  return v;
}

inline std::int64_t parse_int(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    config_fail(key, "expected an integer, got '" + text + "'");
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used != text.size()) config_fail(key, "expected an integer, got '" + text + "'");
  return v;
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

class Reader {
public:
  explicit Reader(const boost::property_tree::ptree& tree) : tree_(tree) {}

  std::optional<std::string> raw(const std::string& key) const {
    auto v = tree_.get_optional<std::string>(boost::property_tree::ptree::path_type(key, '.'));
    if (!v) return std::nullopt;
    return *v;
  }

  void number(const std::string& key, double& out) const {
    if (auto v = raw(key)) out = parse_double(key, *v);
  }
  void unsigned_int(const std::string& key, std::uint64_t& out) const {
    if (auto v = raw(key)) {
      const auto i = parse_int(key, *v);
      if (i < 0) config_fail(key, "must be non-negative");
      out = static_cast<std::uint64_t>(i);
    }
  }
  void numbers(const std::string& key, std::vector<double>& out) const {
    if (auto v = raw(key)) {
      out.clear();
      for (const auto& s : split_list(*v)) out.push_back(parse_double(key, s));
    }
  }
  void integers(const std::string& key, std::vector<std::int64_t>& out) const {
    if (auto v = raw(key)) {
      out.clear();
      for (const auto& s : split_list(*v)) out.push_back(parse_int(key, s));
    }
  }

private:
  const boost::property_tree::ptree& tree_;
};

}  // namespace detail

inline Placement parse_placement(const std::string& s) {
  if (s == "sidon") return Placement::Sidon;
  if (s == "bose") return Placement::Bose;
  if (s == "uniform") return Placement::Uniform;
  if (s == "custom") return Placement::Custom;
  if (s == "intervals") return Placement::Intervals;
  detail::config_fail("channels.placement", "unknown placement '" + s + "' (sidon|bose|uniform|custom|intervals)");
}

inline FilterSetting parse_filter(const std::string& s) {
  if (s == "lumped") return FilterSetting::Lumped;
  if (s == "distributed") return FilterSetting::Distributed;
  if (s == "none") return FilterSetting::None;
  detail::config_fail("run.filter_mode", "unknown mode '" + s + "' (lumped|distributed|none)");
}

/// Cross-field checks. Throws ConfigError naming the offending key.
inline void validate(const ExperimentConfig& c) {
  using detail::config_fail;
  if (c.fiber.alpha_db_per_km < 0.0) config_fail("fiber.alpha_db_per_km", "must be >= 0");
  if (!(c.grid.dt_ps > 0.0)) config_fail("grid.dt_ps", "must be positive");
  if (c.grid.samples < 2 || (c.grid.samples & (c.grid.samples - 1)) != 0)
    config_fail("grid.samples", "must be a power of two >= 2");
  if (!(c.channels.width_ghz > 0.0)) config_fail("channels.width_ghz", "must be positive");

  std::uint64_t n = c.channels.count;
  switch (c.channels.placement) {
    case Placement::Custom:
      if (c.channels.sequence.empty()) config_fail("channels.sequence", "required for placement = custom");
      n = c.channels.sequence.size();
      break;
    case Placement::Intervals:
      if (c.channels.intervals_ghz.empty() || c.channels.intervals_ghz.size() % 2 != 0)
        config_fail("channels.intervals_ghz", "needs lo, hi pairs");
      n = c.channels.intervals_ghz.size() / 2;
      break;
    case Placement::Uniform:
      if (!(c.channels.spacing_w >= 1.0)) config_fail("channels.spacing_w", "must be >= 1 (channels may not overlap)");
      [[fallthrough]];
    default:
      if (n < 1) config_fail("channels.count", "must be >= 1");
  }
  if (!c.pulses.energies_pj.empty() && c.pulses.energies_pj.size() != n)
    config_fail("pulses.energies_pj", "has " + std::to_string(c.pulses.energies_pj.size()) + " entries for " +
                                          std::to_string(n) + " channels");
  for (double e : c.pulses.energies_pj)
    if (e < 0.0) config_fail("pulses.energies_pj", "energies must be >= 0");
  if (!c.pulses.phases_rad.empty() && c.pulses.phases_rad.size() != n)
    config_fail("pulses.phases_rad", "has " + std::to_string(c.pulses.phases_rad.size()) + " entries for " +
                                         std::to_string(n) + " channels");
  if (c.pulses.rolloff < 0.0 || c.pulses.rolloff > 1.0) config_fail("pulses.rolloff", "must lie in [0, 1]");
  if (!(c.pulses.random_energy_max_pj >= 0.0)) config_fail("pulses.random_energy_max_pj", "must be >= 0");

  if (!(c.run.length_km > 0.0)) config_fail("run.length_km", "must be positive");
  if (!(c.run.dz_km > 0.0)) config_fail("run.dz_km", "must be positive");
  if (!(c.run.record_every_km > 0.0)) config_fail("run.record_every_km", "must be positive");
  if (c.run.filter == FilterSetting::Lumped && !(c.run.filter_spacing_km > 0.0))
    config_fail("run.filter_spacing_km", "must be positive for lumped filtering");
  auto multiple = [](double whole, double part) {
    const double r = whole / part;
    return std::abs(r - std::round(r)) <= 1e-9 * std::max(1.0, std::round(r)) && std::round(r) >= 1.0;
  };
  if (!multiple(c.run.length_km, c.run.dz_km)) config_fail("run.dz_km", "must divide run.length_km");
  if (!multiple(c.run.record_every_km, c.run.dz_km)) config_fail("run.record_every_km", "must be a multiple of run.dz_km");
  if (c.run.filter == FilterSetting::Lumped && !multiple(c.run.filter_spacing_km, c.run.dz_km))
    config_fail("run.filter_spacing_km", "must be a multiple of run.dz_km");
}

inline ExperimentConfig parse_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
  }
  static const char* const known[][2] = {
      {"fiber", "alpha_db_per_km"}, {"fiber", "beta2_ps2_per_km"}, {"fiber", "gamma_per_w_per_km"},
      {"grid", "dt_ps"}, {"grid", "samples"}, {"grid", "t0_ns"},
      {"channels", "placement"}, {"channels", "count"}, {"channels", "width_ghz"}, {"channels", "spacing_w"},
      {"channels", "sequence"}, {"channels", "intervals_ghz"},
      {"pulses", "energies_pj"}, {"pulses", "phases_rad"}, {"pulses", "rolloff"}, {"pulses", "random_energy_max_pj"},
      {"run", "length_km"}, {"run", "dz_km"}, {"run", "filter_mode"}, {"run", "filter_spacing_km"},
      {"run", "record_every_km"}, {"run", "splitting"}, {"run", "seed"}};
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) detail::config_fail(section, "key outside of a section");
    for (const auto& [key, value] : body) {
      bool ok = false;
      for (const auto& k : known) ok = ok || (section == k[0] && key == k[1]);
      if (!ok) detail::config_fail(section + "." + key, "unknown key");
    }
  }

  ExperimentConfig c;
  const detail::Reader r(tree);
  r.number("fiber.alpha_db_per_km", c.fiber.alpha_db_per_km);
  r.number("fiber.beta2_ps2_per_km", c.fiber.beta2_ps2_per_km);
  r.number("fiber.gamma_per_w_per_km", c.fiber.gamma_per_w_per_km);

  r.number("grid.dt_ps", c.grid.dt_ps);
  r.unsigned_int("grid.samples", c.grid.samples);
  if (r.raw("grid.t0_ns")) {
    double t0 = 0.0;
    r.number("grid.t0_ns", t0);
    c.grid.t0_ns = t0;
  }

  if (auto p = r.raw("channels.placement")) c.channels.placement = parse_placement(*p);
  r.unsigned_int("channels.count", c.channels.count);
  r.number("channels.width_ghz", c.channels.width_ghz);
  r.number("channels.spacing_w", c.channels.spacing_w);
  r.integers("channels.sequence", c.channels.sequence);
  r.numbers("channels.intervals_ghz", c.channels.intervals_ghz);

  r.numbers("pulses.energies_pj", c.pulses.energies_pj);
  r.numbers("pulses.phases_rad", c.pulses.phases_rad);
  r.number("pulses.rolloff", c.pulses.rolloff);
  r.number("pulses.random_energy_max_pj", c.pulses.random_energy_max_pj);

  r.number("run.length_km", c.run.length_km);
  r.number("run.dz_km", c.run.dz_km);
  if (auto f = r.raw("run.filter_mode")) c.run.filter = parse_filter(*f);
  r.number("run.filter_spacing_km", c.run.filter_spacing_km);
  r.number("run.record_every_km", c.run.record_every_km);
  if (auto s = r.raw("run.splitting")) {
    if (*s == "strang")
      c.run.strang = true;
    else if (*s == "nonlinear-first")
      c.run.strang = false;
    else
      detail::config_fail("run.splitting", "unknown splitting '" + *s + "' (nonlinear-first|strang)");
  }
  r.unsigned_int("run.seed", c.run.seed);

  validate(c);
  return c;
}

inline ExperimentConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

inline std::string emit_config(const ExperimentConfig& c) {
  using detail::fmt_double;
  std::ostringstream os;
  os << "[fiber]\n"
     << "alpha_db_per_km = " << fmt_double(c.fiber.alpha_db_per_km) << "\n"
     << "beta2_ps2_per_km = " << fmt_double(c.fiber.beta2_ps2_per_km) << "\n"
     << "gamma_per_w_per_km = " << fmt_double(c.fiber.gamma_per_w_per_km) << "\n\n";
  os << "[grid]\n"
     << "dt_ps = " << fmt_double(c.grid.dt_ps) << "\n"
     << "samples = " << c.grid.samples << "\n";
  if (c.grid.t0_ns) os << "t0_ns = " << fmt_double(*c.grid.t0_ns) << "\n";
  os << "\n[channels]\n"
     << "placement = " << to_string(c.channels.placement) << "\n"
     << "count = " << c.channels.count << "\n"
     << "width_ghz = " << fmt_double(c.channels.width_ghz) << "\n"
     << "spacing_w = " << fmt_double(c.channels.spacing_w) << "\n";
  if (!c.channels.sequence.empty()) os << "sequence = " << detail::join(c.channels.sequence) << "\n";
  if (!c.channels.intervals_ghz.empty()) os << "intervals_ghz = " << detail::join(c.channels.intervals_ghz) << "\n";
  os << "\n[pulses]\n";
  if (!c.pulses.energies_pj.empty()) os << "energies_pj = " << detail::join(c.pulses.energies_pj) << "\n";
  if (!c.pulses.phases_rad.empty()) os << "phases_rad = " << detail::join(c.pulses.phases_rad) << "\n";
  os << "rolloff = " << fmt_double(c.pulses.rolloff) << "\n"
     << "random_energy_max_pj = " << fmt_double(c.pulses.random_energy_max_pj) << "\n\n";
  os << "[run]\n"
     << "length_km = " << fmt_double(c.run.length_km) << "\n"
     << "dz_km = " << fmt_double(c.run.dz_km) << "\n"
     << "filter_mode = " << to_string(c.run.filter) << "\n"
     << "filter_spacing_km = " << fmt_double(c.run.filter_spacing_km) << "\n"
     << "record_every_km = " << fmt_double(c.run.record_every_km) << "\n"
     << "splitting = " << (c.run.strang ? "strang" : "nonlinear-first") << "\n"
     << "seed = " << c.run.seed << "\n";
  return os.str();
}

}  // namespace brickwall
