#pragma once

#include <cstdint>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace fplab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

// Thrown when preconditions on arguments are violated (mixed moduli,
// bad parameters, malformed configs).
struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when a count or product would not fit in the 64-bit counting range.
struct overflow_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an instance exceeds the documented desk-scale limit of an
// exhaustive routine.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }

inline u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this base set.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace detail

// Arithmetic context for F_p, p an odd prime. Residues are canonical in
// [0, p). Inverses are computed on demand; batch passes use BatchInverter.
class PrimeField {
 public:
  explicit PrimeField(u64 p) : p_(p) {
    if (p < 3 || !detail::is_prime_u64(p)) throw usage_error("modulus must be an odd prime >= 3");
  }

  u64 modulus() const noexcept { return p_; }

  u64 reduce(u64 v) const noexcept { return v % p_; }
  u64 reduce_signed(i64 v) const noexcept {
    i64 r = v % static_cast<i64>(p_);
    return r < 0 ? static_cast<u64>(r + static_cast<i64>(p_)) : static_cast<u64>(r);
  }

  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const noexcept { return detail::mulmod(a, b, p_); }
  u64 pow(u64 a, u64 e) const noexcept { return detail::powmod(a, e, p_); }

  u64 inv(u64 a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    return detail::powmod(a, p_ - 2, p_);
  }
  u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }

  // p^(num/den), used by the size constraints of the checks.
  double threshold(long num, long den) const {
    if (den <= 0) throw usage_error("threshold denominator must be positive");
    return std::pow(static_cast<double>(p_),
                    static_cast<double>(num) / static_cast<double>(den));
  }

  bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const noexcept { return p_ != o.p_; }

  static constexpr u64 kInvTableLimit = 1u << 20;

 private:
  u64 p_;
  std::shared_ptr<const std::vector<u64>> inv_;
};

// A residue tied to its field. Mixing moduli is a usage error.
class Elem {
 public:
  Elem(u64 v, const PrimeField& f) : v_(f.reduce(v)), f_(f) {}

  u64 value() const noexcept { return v_; }
  const PrimeField& field() const noexcept { return f_; }

  friend Elem operator+(Elem a, Elem b) { return Elem(a.f(b).add(a.v_, b.v_), a.f_); }
  friend Elem operator-(Elem a, Elem b) { return Elem(a.f(b).sub(a.v_, b.v_), a.f_); }
  friend Elem operator*(Elem a, Elem b) { return Elem(a.f(b).mul(a.v_, b.v_), a.f_); }
  friend Elem operator/(Elem a, Elem b) { return Elem(a.f(b).div(a.v_, b.v_), a.f_); }
  Elem operator-() const { return Elem(f_.neg(v_), f_); }
  Elem inv() const { return Elem(f_.inv(v_), f_); }
  Elem pow(u64 e) const { return Elem(f_.pow(v_, e), f_); }

  bool operator==(const Elem& o) const { return f(o), v_ == o.v_; }
  bool operator!=(const Elem& o) const { return !(*this == o); }

 private:
  const PrimeField& f(const Elem& o) const {
    if (f_ != o.f_) throw usage_error("elements from different prime fields");
    return f_;
  }
  u64 v_;
  PrimeField f_;
};

inline Elem fp_add(Elem a, Elem b) { return a + b; }
inline Elem fp_mul(Elem a, Elem b) { return a * b; }
inline Elem fp_inv(Elem a) { return a.inv(); }
inline Elem fp_pow(Elem a, u64 e) { return a.pow(e); }

// Affine point in F_p^3.
struct Point3 {
  u64 x = 0, y = 0, z = 0;
  friend bool operator==(const Point3& a, const Point3& b) = default;
  friend auto operator<=>(const Point3& a, const Point3& b) = default;
};

// Plane u*x + v*y + w*z = c with (u,v,w) != 0.
struct Plane3 {
  u64 u = 0, v = 0, w = 0, c = 0;
  friend bool operator==(const Plane3& a, const Plane3& b) = default;
  friend auto operator<=>(const Plane3& a, const Plane3& b) = default;
};

inline bool on_plane(const PrimeField& f, const Point3& q, const Plane3& pl) {
  u64 s = f.add(f.add(f.mul(pl.u, q.x), f.mul(pl.v, q.y)), f.mul(pl.w, q.z));
  return s == pl.c;
}

// Scale the covector so its first nonzero coordinate is 1; unique
// representative per plane.
inline Plane3 normalize_plane(const PrimeField& f, u64 u, u64 v, u64 w, u64 c) {
  if (u == 0 && v == 0 && w == 0) throw usage_error("plane covector must be nonzero");
  u64 lead = u != 0 ? u : (v != 0 ? v : w);
  u64 s = f.inv(lead);
  return Plane3{f.mul(u, s), f.mul(v, s), f.mul(w, s), f.mul(c, s)};
}

namespace detail {

// SplitMix64 output stream as counter-based generator: the i-th draw for a
// given seed is finalize(seed + (i+1)*GOLDEN). Pinned so catalogues are
// portable across platforms and thread counts.
inline u64 splitmix_finalize(u64 z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(u64 seed) : state_(seed) {}
  u64 next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return splitmix_finalize(state_);
  }
  // Unbiased uniform draw in [0, bound) by rejection.
  u64 below(u64 bound) {
    u64 lim = (UINT64_MAX / bound) * bound;
    u64 r;
    do { r = next(); } while (r >= lim);
    return r % bound;
  }

 private:
  u64 state_;
};

inline u64 mix_seeds(u64 a, u64 b) { return splitmix_finalize(a ^ (0x9E3779B97F4A7C15ull + (b << 1))); }

}  // namespace detail

}  // namespace fplab
