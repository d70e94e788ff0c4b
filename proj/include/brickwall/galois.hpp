#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <vector>

#include "brickwall/errors.hpp"

// Arithmetic in GF(N) and GF(N^2) for the Bose construction of Sidon
// sequences. GF(N) elements are encoded as integers 0..N-1 whose base-p digits
// are polynomial coefficients (lowest digit = constant term); 0 and 1 are the
// additive and multiplicative identities.
namespace brickwall::gf {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct PrimePower {
  std::uint64_t p = 0;
  unsigned k = 0;
};

inline std::optional<PrimePower> as_prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return PrimePower{n, 1};
  unsigned k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) return std::nullopt;
  return PrimePower{p, k};
}

inline std::uint64_t next_prime_power(std::uint64_t n) {
  if (n < 2) n = 2;
  while (!as_prime_power(n)) ++n;
  return n;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace detail {

using Poly = std::vector<std::uint32_t>;  // coefficients over GF(p), low -> high

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Remainder of a modulo monic m over GF(p).
inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * static_cast<std::uint64_t>(m[i])) % p);
    trim(a);
  }
  return a;
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p digits of idx.
inline Poly monic_from_index(std::uint64_t idx, unsigned deg, std::uint32_t p) {
  Poly f(deg + 1, 0);
  for (unsigned i = 0; i < deg; ++i) {
    f[i] = static_cast<std::uint32_t>(idx % p);
    idx /= p;
  }
  f[deg] = 1;
  return f;
}

inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx)
      if (poly_mod(f, monic_from_index(idx, d, p), p).empty()) return false;
  }
  return true;
}

}  // namespace detail

/// GF(p^k). Multiplication is tabulated for k > 1.
class BaseField {
public:
  static constexpr std::uint64_t kMaxTabulated = 1024;

  static BaseField make(std::uint64_t order) {
    const auto pp = as_prime_power(order);
    if (!pp) {
      std::ostringstream os;
      os << order << " is not a prime power";
      throw NotPrimePower(os.str());
    }
    if (pp->k > 1 && order > kMaxTabulated) {
      std::ostringstream os;
      os << "GF(" << order << ") with k > 1 exceeds the tabulation limit " << kMaxTabulated;
      throw InvalidArgument(os.str());
    }
    return BaseField(static_cast<std::uint32_t>(pp->p), pp->k);
  }

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint32_t size() const { return n_; }
  /// Coefficients (low -> high) of the monic irreducible defining GF(p^k); {0, 1} when k = 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) return (a + b) % p_;
    std::uint32_t r = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
      r += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return r;
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (k_ == 1) return (p_ - a) % p_;
    std::uint32_t r = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
      r += ((p_ - a % p_) % p_) * scale;
      a /= p_;
      scale *= p_;
    }
    return r;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    return table_[static_cast<std::size_t>(a) * n_ + b];
  }

private:
  BaseField(std::uint32_t p, unsigned k) : p_(p), k_(k) {
    n_ = 1;
    for (unsigned i = 0; i < k; ++i) n_ *= p;
    if (k == 1) {
      modulus_ = {0, 1};
      return;
    }
    for (std::uint64_t idx = 0;; ++idx) {
      auto f = detail::monic_from_index(idx, k, p);
      if (f[0] != 0 && detail::is_irreducible(f, p)) {
        modulus_ = f;
        break;
      }
    }
    table_.resize(static_cast<std::size_t>(n_) * n_);
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = 0; b < n_; ++b) table_[static_cast<std::size_t>(a) * n_ + b] = slow_mul(a, b);
  }

  detail::Poly digits(std::uint32_t a) const {
    detail::Poly d(k_);
    for (unsigned i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    const auto da = digits(a), db = digits(b);
    detail::Poly prod(2 * k_, 0);
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned j = 0; j < k_; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
    const auto r = detail::poly_mod(prod, modulus_, p_);
    std::uint32_t out = 0, scale = 1;
    for (std::size_t i = 0; i < r.size(); ++i) {
      out += r[i] * scale;
      scale *= p_;
    }
    return out;
  }

  std::uint32_t p_ = 0;
  unsigned k_ = 0;
  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> table_;
};

/// Element a0 + a1*x of GF(N^2).
struct Ext2 {
  std::uint32_t a0 = 0;
  std::uint32_t a1 = 0;
  friend bool operator==(const Ext2&, const Ext2&) = default;
};

/// GF(N^2) = GF(N)[x] / (x^2 + b x + c).
class QuadraticExtension {
public:
  QuadraticExtension(BaseField base, std::uint32_t b, std::uint32_t c)
      : base_(std::move(base)), b_(b), c_(c) {}

  const BaseField& base() const { return base_; }
  std::uint32_t b() const { return b_; }
  std::uint32_t c() const { return c_; }
  std::uint64_t order() const { return static_cast<std::uint64_t>(base_.size()) * base_.size(); }

  Ext2 one() const { return {1, 0}; }

  Ext2 mul(const Ext2& u, const Ext2& v) const {
    const auto& f = base_;
    // (u0 + u1 x)(v0 + v1 x) = u0v0 + (u0v1 + u1v0) x + u1v1 x^2, x^2 = -b x - c
    const std::uint32_t hi = f.mul(u.a1, v.a1);
    const std::uint32_t r0 = f.sub(f.mul(u.a0, v.a0), f.mul(hi, c_));
    const std::uint32_t r1 = f.sub(f.add(f.mul(u.a0, v.a1), f.mul(u.a1, v.a0)), f.mul(hi, b_));
    return {r0, r1};
  }

  Ext2 pow(Ext2 base, std::uint64_t e) const {
    Ext2 r = one();
    while (e > 0) {
      if (e & 1U) r = mul(r, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return r;
  }

  bool is_irreducible() const {
    const auto& f = base_;
    for (std::uint32_t r = 0; r < f.size(); ++r)
      if (f.add(f.add(f.mul(r, r), f.mul(b_, r)), c_) == 0) return false;
    return true;
  }

  /// True iff g generates the multiplicative group (order N^2 - 1).
  bool is_primitive(const Ext2& g) const {
    if (g == Ext2{}) return false;
    const std::uint64_t group = order() - 1;
    for (auto q : prime_factors(group))
      if (pow(g, group / q) == one()) return false;
    return true;
  }

private:
  BaseField base_;
  std::uint32_t b_;
  std::uint32_t c_;
};

/// Field data behind a Bose sequence: GF(N^2) = GF(N)[x]/(x^2 + b x + c), generator theta.
struct FieldGF {
  std::uint64_t p = 0;
  unsigned k = 0;
  std::uint64_t order = 0;  ///< N = p^k
  std::uint32_t modulus_b = 0;
  std::uint32_t modulus_c = 0;
  Ext2 theta;
};

/// Monic quadratics x^2 + b x + c are scanned in (b, c) order; the first one
/// for which x is a primitive element of GF(N^2) is taken, with theta = x.
inline QuadraticExtension primitive_extension(const BaseField& base) {
  const std::uint32_t n = base.size();
  for (std::uint32_t b = 0; b < n; ++b) {
    for (std::uint32_t c = 1; c < n; ++c) {
      QuadraticExtension ext(base, b, c);
      if (ext.is_irreducible() && ext.is_primitive({0, 1})) return ext;
    }
  }
  throw Error("no primitive quadratic found");  // unreachable: primitive polynomials always exist
}

struct BoseConstruction {
  FieldGF field;
  std::vector<std::int64_t> sequence;
};

/// {m in 1..N^2-1 : theta^m - theta in GF(N)}, in increasing order.
inline BoseConstruction bose_construction(std::uint64_t n) {
  const BaseField base = BaseField::make(n);
  const QuadraticExtension ext = primitive_extension(base);
  const Ext2 theta{0, 1};
  BoseConstruction out;
  out.field = FieldGF{base.characteristic(), base.degree(), base.size(), ext.b(), ext.c(), theta};
  const std::uint64_t top = ext.order() - 1;
  Ext2 power = theta;
  for (std::uint64_t m = 1; m <= top; ++m) {
    if (power.a1 == theta.a1) out.sequence.push_back(static_cast<std::int64_t>(m));
    power = ext.mul(power, theta);
  }
  return out;
}

}  // namespace brickwall::gf
