#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "brickwall/band_set.hpp"
#include "brickwall/galois.hpp"
#include "brickwall/sidon.hpp"

namespace brickwall {

/// Length-N Sidon sequence: Bose sequence of the smallest prime power >= N,
/// truncated to its first N elements.
inline std::vector<std::int64_t> sidon_for_channels(std::uint64_t n) {
  if (n < 1) throw InvalidArgument("need at least one channel");
  if (n == 1) return {1};
  auto seq = gf::bose_construction(gf::next_prime_power(n)).sequence;
  seq.resize(n);
  return seq;
}

inline std::vector<std::int64_t> bose_sequence(std::uint64_t n) { return gf::bose_construction(n).sequence; }

/// Channels n1, n2 (first pair) and n, n3 (second pair), 1-based.
struct FwmQuadruple {
  std::array<std::size_t, 2> first{};
  std::array<std::size_t, 2> second{};
};

struct DecouplingReport {
  bool decoupled = true;
  std::optional<FwmQuadruple> witness;
};

/// (W_n1 + W_n2) and (W_n + W_n3) must not overlap for any two different
/// unordered pairs {n1, n2} != {n, n3}. Overlap means positive measure;
/// sum-sets that only touch at an endpoint are allowed. Overlaps shorter than
/// 1e-9 of the largest endpoint are rounding in the unit conversion and count
/// as touching. Pairs are scanned in lexicographic order and the first
/// violation is reported.
inline DecouplingReport is_energy_decoupled(const BandSet& channels) {
  struct PairSum {
    std::size_t a, b;
    Interval sum;
  };
  std::vector<PairSum> sums;
  const std::size_t n = channels.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Interval s{channels[i].lo + channels[j].lo, channels[i].hi + channels[j].hi};
      scale = std::max({scale, std::abs(s.lo), std::abs(s.hi)});
      sums.push_back({i + 1, j + 1, s});
    }
  const double slack = 1e-9 * scale;
  for (std::size_t u = 0; u < sums.size(); ++u)
    for (std::size_t v = u + 1; v < sums.size(); ++v) {
      const Interval& x = sums[u].sum;
      const Interval& y = sums[v].sum;
      if (std::min(x.hi, y.hi) - std::max(x.lo, y.lo) > slack)
        return {false, FwmQuadruple{{sums[u].a, sums[u].b}, {sums[v].a, sums[v].b}}};
    }
  return {};
}

/// Unvalidated list form; throws OverlappingIntervals if channels intersect.
inline DecouplingReport is_energy_decoupled(std::vector<Interval> channels) {
  return is_energy_decoupled(make_bandset(std::move(channels)));
}

/// Channel grid built from a Sidon sequence: W_n = [(2 m_n - 2) W, (2 m_n - 1) W].
struct ChannelPlan {
  std::vector<std::int64_t> sequence;
  double width = 0.0;  ///< W in rad/s
  BandSet bands;

  std::vector<double> centers() const {
    std::vector<double> c;
    for (const auto& iv : bands.intervals()) c.push_back(iv.center());
    return c;
  }
};

inline BandSet bands_from_positions(std::span<const double> m, double width) {
  if (!(width > 0.0)) throw InvalidArgument("channel width must be positive");
  std::vector<Interval> iv;
  iv.reserve(m.size());
  for (double x : m) iv.push_back({(2.0 * x - 2.0) * width, (2.0 * x - 1.0) * width});
  return make_bandset(std::move(iv));
}

inline ChannelPlan plan_channels(std::vector<std::int64_t> seq, double width) {
  if (seq.empty()) throw InvalidArgument("empty sequence");
  detail::require_increasing(std::span<const std::int64_t>(seq), true);
  std::vector<double> m(seq.begin(), seq.end());
  BandSet bands = bands_from_positions(m, width);
  return {std::move(seq), width, std::move(bands)};
}

/// Occupied bandwidth over spanned bandwidth: sum W_n / (max W - min W).
inline double spectral_filling_efficiency(const BandSet& bands) {
  return bands.measure() / (bands.max() - bands.min());
}

inline double spectral_filling_efficiency(const ChannelPlan& plan) {
  return spectral_filling_efficiency(plan.bands);
}

/// N equal-width channels with centers (0.5 + spacing*(n-1)) W.
inline BandSet uniform_bands(std::size_t n, double width, double spacing_in_widths) {
  if (n == 0) throw InvalidArgument("need at least one channel");
  std::vector<Interval> iv;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = (0.5 + spacing_in_widths * static_cast<double>(i)) * width;
    iv.push_back({c - 0.5 * width, c + 0.5 * width});
  }
  return make_bandset(std::move(iv));
}

}  // namespace brickwall
