#pragma once

#include <algorithm>
#include <bitset>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <sstream>
#include <vector>

#include "brickwall/errors.hpp"

namespace brickwall {

namespace detail {

template <typename T>
void require_increasing(std::span<const T> m, bool positive) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (positive && !(m[i] > T{0})) {
      std::ostringstream os;
      os << "element " << i << " (" << m[i] << ") is not positive";
      throw NotIncreasing(os.str());
    }
    if (i > 0 && !(m[i] > m[i - 1])) {
      std::ostringstream os;
      os << "elements " << i - 1 << " and " << i << " are not strictly increasing";
      throw NotIncreasing(os.str());
    }
  }
}

/// All sums m_i + m_j with i <= j (one per unordered pair, doubles included).
template <typename T>
std::vector<T> pair_sums(std::span<const T> m) {
  std::vector<T> sums;
  sums.reserve(m.size() * (m.size() + 1) / 2);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j) sums.push_back(m[i] + m[j]);
  std::sort(sums.begin(), sums.end());
  return sums;
}

}  // namespace detail

/// True iff all sums over unordered pairs {i, j} (i = j allowed) are distinct.
inline bool is_sidon(std::span<const std::int64_t> m) {
  detail::require_increasing(m, true);
  const auto sums = detail::pair_sums(m);
  return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
}

inline bool is_sidon(const std::vector<std::int64_t>& m) { return is_sidon(std::span<const std::int64_t>(m)); }

/// True iff sums over distinct unordered pairs differ by at least min_gap.
template <std::floating_point T>
bool is_r_sidon(std::span<const T> m, T min_gap = T{1}) {
  detail::require_increasing(m, false);
  const auto sums = detail::pair_sums(m);
  for (std::size_t i = 1; i < sums.size(); ++i)
    if (sums[i] - sums[i - 1] < min_gap) return false;
  return true;
}

inline bool is_r_sidon(const std::vector<double>& m, double min_gap = 1.0) {
  return is_r_sidon(std::span<const double>(m), min_gap);
}

struct MaxSidon {
  int k = 0;
  int length = 0;                    ///< N(k)
  std::vector<std::int64_t> witness;  ///< a longest Sidon sequence in {1..k}
};

/// Exhaustive longest-Sidon-sequence search over {1..k} for k = 1, 2, ...
///
/// Works incrementally: a set of size N(k-1)+1 inside {1..k} must contain
/// both 1 and k, so each k is one fixed-endpoint backtracking search over
/// marks 0..k-1 with a difference bitmask. The minimal span of every
/// shorter ruler found so far prunes both ends of the partial ruler.
class SidonSearch {
public:
  static constexpr int kMaxK = 150;

  explicit SidonSearch(std::uint64_t node_budget = 4'000'000'000ULL) : budget_(node_budget) {
    best_.push_back({0, 0, {}});
  }

  /// Extends the table to k and returns its entry.
  const MaxSidon& max_for(int k) {
    if (k < 1) throw InvalidArgument("k must be >= 1");
    if (k > kMaxK) {
      std::ostringstream os;
      os << "k = " << k << " is beyond the exhaustive search budget (k <= " << kMaxK << ")";
      throw BudgetExceeded(os.str());
    }
    while (static_cast<int>(best_.size()) <= k) extend();
    return best_[static_cast<std::size_t>(k)];
  }

  std::uint64_t nodes_visited() const { return nodes_; }

private:
  using Diffs = std::bitset<kMaxK + 1>;

  void extend() {
    const int k = static_cast<int>(best_.size());
    const MaxSidon& prev = best_.back();
    const int target = prev.length + 1;
    std::vector<int> marks;
    if (target == 1) {
      marks = {0};
    } else if (!search(k - 1, target, marks)) {
      best_.push_back({k, prev.length, prev.witness});
      return;
    }
    MaxSidon entry{k, target, {}};
    for (int x : marks) entry.witness.push_back(x + 1);
    best_.push_back(std::move(entry));
    min_span_.push_back(k - 1);  // min_span_[target] is the shortest ruler with `target` marks
  }

  // Minimal span of a Golomb ruler with j marks; valid for j below the current target.
  int min_span(int j) const { return j <= 1 ? 0 : min_span_[static_cast<std::size_t>(j)]; }

  bool search(int span, int target, std::vector<int>& marks) {
    marks.assign({0});
    Diffs diffs;
    diffs.set(static_cast<std::size_t>(span));
    if (!dfs(span, target, marks, diffs)) return false;
    marks.push_back(span);
    return true;
  }

  // marks holds the prefix 0 < x2 < ... < xd; `span` is the implied last mark.
  bool dfs(int span, int target, std::vector<int>& marks, Diffs& diffs) {
    if (++nodes_ > budget_) throw BudgetExceeded("node budget exhausted");
    const int placed = static_cast<int>(marks.size());
    if (placed + 1 == target) return true;  // only the fixed last mark remains
    const int d = placed + 1;               // 1-based index of the mark being placed
    const int lo = std::max(marks.back() + 1, min_span(d));
    // marks x_d .. x_target span at least min_span(target - d + 1)
    const int hi = span - min_span(target - d + 1);
    for (int x = lo; x <= hi; ++x) {
      bool ok = !diffs.test(static_cast<std::size_t>(span - x));
      for (int i = 0; ok && i < placed; ++i) ok = !diffs.test(static_cast<std::size_t>(x - marks[static_cast<std::size_t>(i)]));
      if (!ok) continue;
      // distinctness among the new differences themselves
      Diffs added;
      added.set(static_cast<std::size_t>(span - x));
      for (int i = 0; ok && i < placed; ++i) {
        const auto dd = static_cast<std::size_t>(x - marks[static_cast<std::size_t>(i)]);
        if (added.test(dd)) ok = false;
        added.set(dd);
      }
      if (!ok) continue;
      diffs |= added;
      marks.push_back(x);
      if (dfs(span, target, marks, diffs)) return true;
      marks.pop_back();
      diffs &= ~added;
    }
    return false;
  }

  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<MaxSidon> best_;
  std::vector<int> min_span_{0};
};

/// Longest integer Sidon sequence in {1..k} and its length N(k).
inline MaxSidon brute_force_max_sidon(int k) {
  SidonSearch search;
  return search.max_for(k);
}

/// Smallest integer a with a^4 >= k^3, i.e. ceil(k^{3/4}) without rounding error.
inline std::int64_t ceil_k_three_quarters(std::int64_t k) {
  const auto k3 = static_cast<unsigned __int128>(k) * k * k;
  auto a = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(k), 0.75)));
  if (a < 1) a = 1;
  while (a > 1 && static_cast<unsigned __int128>(a - 1) * (a - 1) * (a - 1) * (a - 1) >= k3) --a;
  while (static_cast<unsigned __int128>(a) * a * a * a < k3) ++a;
  return a;
}

/// Finite-k upper bound on N(k) from the interval-counting argument:
/// N <= (1 + k/a)/2 + sqrt((1 + k/a)^2 / 4 + (a + 2)(a - 1)(k + a) / a^2).
inline double erdos_bound(std::int64_t k, std::int64_t a) {
  const double kd = static_cast<double>(k), ad = static_cast<double>(a);
  const double h = 0.5 * (1.0 + kd / ad);
  return h + std::sqrt(h * h + (ad + 2.0) * (ad - 1.0) * (kd + ad) / (ad * ad));
}

inline double erdos_bound(std::int64_t k) { return erdos_bound(k, ceil_k_three_quarters(k)); }

/// True iff the exhaustive N(k) respects the finite-k bound at a = ceil(k^{3/4}).
inline bool check_erdos_bound(int k, SidonSearch& search) {
  return static_cast<double>(search.max_for(k).length) <= erdos_bound(k);
}

inline bool check_erdos_bound(int k) {
  SidonSearch search;
  return check_erdos_bound(k, search);
}

}  // namespace brickwall
