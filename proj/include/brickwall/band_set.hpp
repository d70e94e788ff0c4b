#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <vector>

#include "brickwall/errors.hpp"

namespace brickwall {

/// Closed angular-frequency interval [lo, hi] in rad/s.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
  bool contains(double w) const { return lo <= w && w <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of pairwise-disjoint closed intervals, stored sorted.
///
/// Each interval is one WDM channel; the union is the pass band of the
/// brick-wall filter.
class BandSet {
public:
  /// Validates and sorts. Throws InvalidInterval, EmptyBandSet or
  /// OverlappingIntervals (closed intervals sharing even one point overlap).
  static BandSet make(std::vector<Interval> intervals) {
    if (intervals.empty()) throw EmptyBandSet("a band set needs at least one interval");
    for (const auto& iv : intervals) {
      if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi)) {
        std::ostringstream os;
        os << "interval [" << iv.lo << ", " << iv.hi << "] must satisfy lo < hi";
        throw InvalidInterval(os.str());
      }
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < intervals.size(); ++i) {
      if (intervals[i].lo <= intervals[i - 1].hi) {
        std::ostringstream os;
        os << "[" << intervals[i - 1].lo << ", " << intervals[i - 1].hi << "] and ["
           << intervals[i].lo << ", " << intervals[i].hi << "]";
        throw OverlappingIntervals(os.str());
      }
    }
    return BandSet(std::move(intervals));
  }

  std::span<const Interval> intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }

  double center(std::size_t i) const { return intervals_[i].center(); }
  double width(std::size_t i) const { return intervals_[i].width(); }

  double min() const { return intervals_.front().lo; }
  double max() const { return intervals_.back().hi; }

  /// Lebesgue measure of the set.
  double measure() const {
    double m = 0.0;
    for (const auto& iv : intervals_) m += iv.width();
    return m;
  }

  bool contains(double w) const {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), w,
                               [](double x, const Interval& iv) { return x < iv.lo; });
    if (it == intervals_.begin()) return false;
    return std::prev(it)->contains(w);
  }

  /// The i-th interval as a band set of its own.
  BandSet channel(std::size_t i) const { return BandSet({intervals_.at(i)}); }

  /// One single-interval band set per channel.
  std::vector<BandSet> channels() const {
    std::vector<BandSet> out;
    out.reserve(size());
    for (const auto& iv : intervals_) out.push_back(BandSet({iv}));
    return out;
  }

  friend bool operator==(const BandSet&, const BandSet&) = default;

private:
  explicit BandSet(std::vector<Interval> iv) : intervals_(std::move(iv)) {}

  friend BandSet minkowski_sum(const BandSet&, const BandSet&);

  std::vector<Interval> intervals_;
};

inline BandSet make_bandset(std::vector<Interval> intervals) {
  return BandSet::make(std::move(intervals));
}

/// {a + b : a in A, b in B}; touching or overlapping sum intervals are merged.
inline BandSet minkowski_sum(const BandSet& a, const BandSet& b) {
  std::vector<Interval> sums;
  sums.reserve(a.size() * b.size());
  for (const auto& x : a.intervals())
    for (const auto& y : b.intervals()) sums.push_back({x.lo + y.lo, x.hi + y.hi});
  std::sort(sums.begin(), sums.end(),
            [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  std::vector<Interval> merged;
  for (const auto& s : sums) {
    if (!merged.empty() && s.lo <= merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, s.hi);
    else
      merged.push_back(s);
  }
  return BandSet(std::move(merged));
}

/// Positive-measure overlap test; intervals that only touch do not overlap.
inline bool overlaps(const Interval& a, const Interval& b) {
  return std::max(a.lo, b.lo) < std::min(a.hi, b.hi);
}

}  // namespace brickwall
