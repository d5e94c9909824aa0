#pragma once

#include <algorithm>
#include <cstring>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fplab/field.hpp"

namespace fplab {

namespace detail {

// p-bit bitmap helpers for the dense set representation.
inline std::size_t bitmap_words(u64 p) { return static_cast<std::size_t>((p + 63) / 64); }

inline void bitmap_set(std::vector<u64>& w, u64 i) { w[i >> 6] |= (u64{1} << (i & 63)); }
inline bool bitmap_test(const std::vector<u64>& w, u64 i) {
  return (w[i >> 6] >> (i & 63)) & 1;
}

// dst |= src rotated left by s within a p-bit ring.
inline void bitmap_or_rot(std::vector<u64>& dst, const std::vector<u64>& src, u64 s, u64 p) {
  const std::size_t W = bitmap_words(p);
  auto src_bit = [&](u64 i) { return bitmap_test(src, i); };
  // Word-level: out bit (i+s) mod p = src bit i. Split the source into the
  // head [0, p-s) mapping to [s, p) and the tail [p-s, p) wrapping to [0, s).
  const u64 ws = s >> 6, bs = s & 63;
  if (s == 0) {
    for (std::size_t j = 0; j < W; ++j) dst[j] |= src[j];
    return;
  }
  // Shifted head, then mask off bits >= p and fold them manually.
  for (std::size_t j = 0; j < W; ++j) {
    u64 lo = (j >= ws) ? src[j - ws] : 0;
    u64 hi = (j >= ws + 1) ? src[j - ws - 1] : 0;
    u64 word = bs == 0 ? lo : ((lo << bs) | (hi >> (64 - bs)));
    dst[j] |= word;
  }
  // Bits of src in [p-s, p) wrap to [0, s). Scan them directly; there are at
  // most s of them and s is typically small relative to p.
  (void)src_bit;
  for (u64 i = p - s; i < p; ++i)
    if (bitmap_test(src, i)) bitmap_set(dst, i + s - p);
  // Clear any garbage above bit p-1 introduced by the shift.
  if (p & 63) dst[W - 1] &= (u64{1} << (p & 63)) - 1;
}

}  // namespace detail

// Finite subset of F_p in canonical form: strictly sorted residues in [0,p).
// Sets denser than 1/64 additionally carry a p-bit bitmap (memory bounded by
// 512 bytes per element at that density).
class FSet {
 public:
  explicit FSet(PrimeField f) : field_(std::move(f)) {}

  static FSet of(const PrimeField& f, std::vector<u64> elems) {
    for (u64& v : elems) {
      if (v >= f.modulus()) throw usage_error("set element out of range [0,p)");
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return FSet(f, std::move(elems));
  }

  static FSet of(const PrimeField& f, std::initializer_list<u64> elems) {
    return of(f, std::vector<u64>(elems));
  }

  // elems must already be strictly sorted and in range.
  static FSet canonical(const PrimeField& f, std::vector<u64> elems) {
    return FSet(f, std::move(elems));
  }

  static FSet full(const PrimeField& f) {
    std::vector<u64> v(f.modulus());
    for (u64 i = 0; i < f.modulus(); ++i) v[i] = i;
    return FSet(f, std::move(v));
  }

  const PrimeField& field() const noexcept { return field_; }
  u64 modulus() const noexcept { return field_.modulus(); }
  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  const std::vector<u64>& elements() const noexcept { return elems_; }

  bool contains(u64 v) const {
    if (v >= modulus()) return false;
    if (!bits_.empty()) return detail::bitmap_test(bits_, v);
    return std::binary_search(elems_.begin(), elems_.end(), v);
  }

  bool dense() const noexcept { return !bits_.empty(); }
  const std::vector<u64>& bitmap() const noexcept { return bits_; }

  double density() const noexcept {
    return static_cast<double>(size()) / static_cast<double>(modulus());
  }

  friend bool operator==(const FSet& a, const FSet& b) {
    return a.modulus() == b.modulus() && a.elems_ == b.elems_;
  }

 private:
  FSet(PrimeField f, std::vector<u64> elems) : field_(std::move(f)), elems_(std::move(elems)) {
    if (64 * elems_.size() > field_.modulus()) {
      bits_.assign(detail::bitmap_words(field_.modulus()), 0);
      for (u64 v : elems_) detail::bitmap_set(bits_, v);
    }
  }

  PrimeField field_;
  std::vector<u64> elems_;
  std::vector<u64> bits_;  // present iff |A|/p > 1/64
};

namespace detail {

inline const PrimeField& common_field(const FSet& a, const FSet& b) {
  if (a.field() != b.field()) throw usage_error("sets from different prime fields");
  return a.field();
}

inline FSet from_bitmap(const PrimeField& f, const std::vector<u64>& bits) {
  std::vector<u64> out;
  const u64 p = f.modulus();
  for (u64 i = 0; i < p; ++i)
    if (bitmap_test(bits, i)) out.push_back(i);
  return FSet::canonical(f, std::move(out));
}

// Marking accumulator over [0,p); only used when p fits in memory.
constexpr u64 kDenseAccLimit = u64{1} << 22;

template <typename Gen>
FSet collect_pairwise(const PrimeField& f, std::size_t hint, Gen&& emit) {
  const u64 p = f.modulus();
  if (p <= kDenseAccLimit) {
    std::vector<u64> bits(bitmap_words(p), 0);
    emit([&](u64 v) { bitmap_set(bits, v); });
    return from_bitmap(f, bits);
  }
  std::vector<u64> vals;
  vals.reserve(hint);
  emit([&](u64 v) { vals.push_back(v); });
  return FSet::of(f, std::move(vals));
}

}  // namespace detail

inline FSet sumset(const FSet& a, const FSet& b) {
  const PrimeField& f = detail::common_field(a, b);
  const u64 p = f.modulus();
  if (a.empty() || b.empty()) return FSet(f);
  // Dense path: rotate the bigger operand's bitmap by each element of the
  // smaller one.
  const FSet& big = a.size() >= b.size() ? a : b;
  const FSet& small = a.size() >= b.size() ? b : a;
  if (big.dense()) {
    std::vector<u64> acc(detail::bitmap_words(p), 0);
    for (u64 s : small.elements()) detail::bitmap_or_rot(acc, big.bitmap(), s, p);
    return detail::from_bitmap(f, acc);
  }
  return detail::collect_pairwise(f, a.size() * b.size(), [&](auto&& put) {
    for (u64 x : a.elements())
      for (u64 y : b.elements()) put(f.add(x, y));
  });
}

inline FSet diffset(const FSet& a, const FSet& b) {
  const PrimeField& f = detail::common_field(a, b);
  const u64 p = f.modulus();
  if (a.empty() || b.empty()) return FSet(f);
  if (a.dense()) {
    std::vector<u64> acc(detail::bitmap_words(p), 0);
    for (u64 s : b.elements()) detail::bitmap_or_rot(acc, a.bitmap(), s == 0 ? 0 : p - s, p);
    return detail::from_bitmap(f, acc);
  }
  return detail::collect_pairwise(f, a.size() * b.size(), [&](auto&& put) {
    for (u64 x : a.elements())
      for (u64 y : b.elements()) put(f.sub(x, y));
  });
}

inline FSet productset(const FSet& a, const FSet& b) {
  const PrimeField& f = detail::common_field(a, b);
  return detail::collect_pairwise(f, a.size() * b.size(), [&](auto&& put) {
    for (u64 x : a.elements())
      for (u64 y : b.elements()) put(f.mul(x, y));
  });
}

// A/B with zero divisors dropped, per the ratio-set convention. dropped_pairs,
// when given, receives the number of (a,b) pairs skipped because b = 0.
inline FSet ratioset(const FSet& a, const FSet& b, u64* dropped_pairs = nullptr) {
  const PrimeField& f = detail::common_field(a, b);
  u64 dropped = b.contains(0) ? a.size() : 0;
  if (dropped_pairs) *dropped_pairs = dropped;
  std::vector<u64> invs;
  invs.reserve(b.size());
  for (u64 y : b.elements())
    if (y != 0) invs.push_back(f.inv(y));
  return detail::collect_pairwise(f, a.size() * invs.size(), [&](auto&& put) {
    for (u64 x : a.elements())
      for (u64 yi : invs) put(f.mul(x, yi));
  });
}

// {a^d}; the power map need not be injective, so the result may shrink.
inline FSet power_set(const FSet& a, u64 d) {
  if (d == 0) throw usage_error("power_set exponent must be >= 1");
  const PrimeField& f = a.field();
  std::vector<u64> vals;
  vals.reserve(a.size());
  for (u64 x : a.elements()) vals.push_back(f.pow(x, d));
  return FSet::of(f, std::move(vals));
}

// {a^{-1} : a != 0}; dropped, when given, receives 1 if 0 was present.
inline FSet reciprocal_set(const FSet& a, u64* dropped = nullptr) {
  const PrimeField& f = a.field();
  if (dropped) *dropped = a.contains(0) ? 1 : 0;
  std::vector<u64> vals;
  vals.reserve(a.size());
  for (u64 x : a.elements())
    if (x != 0) vals.push_back(f.inv(x));
  return FSet::of(f, std::move(vals));
}

inline FSet translate(const FSet& a, u64 alpha) {
  const PrimeField& f = a.field();
  alpha = f.reduce(alpha);
  std::vector<u64> vals;
  vals.reserve(a.size());
  for (u64 x : a.elements()) vals.push_back(f.add(x, alpha));
  return FSet::of(f, std::move(vals));
}

inline FSet dilate(const FSet& a, u64 lambda) {
  const PrimeField& f = a.field();
  lambda = f.reduce(lambda);
  if (lambda == 0) throw usage_error("dilation by zero");
  std::vector<u64> vals;
  vals.reserve(a.size());
  for (u64 x : a.elements()) vals.push_back(f.mul(x, lambda));
  return FSet::of(f, std::move(vals));
}

inline FSet intersect(const FSet& a, const FSet& b) {
  const PrimeField& f = detail::common_field(a, b);
  std::vector<u64> out;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                        b.elements().end(), std::back_inserter(out));
  return FSet::canonical(f, std::move(out));
}

inline FSet set_union(const FSet& a, const FSet& b) {
  const PrimeField& f = detail::common_field(a, b);
  std::vector<u64> out;
  std::set_union(a.elements().begin(), a.elements().end(), b.elements().begin(),
                 b.elements().end(), std::back_inserter(out));
  return FSet::canonical(f, std::move(out));
}

inline FSet without_zero(const FSet& a, u64* dropped = nullptr) {
  if (dropped) *dropped = a.contains(0) ? 1 : 0;
  if (!a.contains(0)) return a;
  std::vector<u64> v(a.elements().begin() + 1, a.elements().end());
  return FSet::canonical(a.field(), std::move(v));
}

struct RefineResult {
  FSet set;
  bool satisfied = false;
};

// Removes the largest residue one at a time until the predicate holds or the
// set is empty. Deterministic order keeps runs reproducible.
inline RefineResult refine_drop(FSet a, const std::function<bool(const FSet&)>& pred) {
  std::vector<u64> cur = a.elements();
  const PrimeField f = a.field();
  FSet s = std::move(a);
  while (!s.empty()) {
    if (pred(s)) return {std::move(s), true};
    cur.pop_back();
    s = FSet::canonical(f, cur);
  }
  if (pred(s)) return {std::move(s), true};
  return {std::move(s), false};
}

// ---- set file format ----
// line 1: "p <decimal prime>", then one residue per non-empty line.

inline void write_set(std::ostream& os, const FSet& a) {
  os << "p " << a.modulus() << "\n";
  for (u64 v : a.elements()) os << v << "\n";
}

inline FSet read_set(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(is, line)) throw usage_error("set file: empty input");
  ++lineno;
  if (line.rfind("p ", 0) != 0) throw usage_error("set file: line 1 must be 'p <prime>'");
  u64 p = 0;
  try {
    p = std::stoull(line.substr(2));
  } catch (const std::exception&) {
    throw usage_error("set file: line 1 has no valid modulus");
  }
  PrimeField f(p);
  std::vector<u64> vals;
  std::vector<std::pair<u64, std::size_t>> first_line;  // value -> first line seen
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    u64 v = 0;
    try {
      std::size_t pos = 0;
      v = std::stoull(line, &pos);
      if (pos != line.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw usage_error("set file: line " + std::to_string(lineno) + ": not a residue");
    }
    if (v >= p)
      throw usage_error("set file: line " + std::to_string(lineno) + ": residue out of range");
    first_line.emplace_back(v, lineno);
    vals.push_back(v);
  }
  std::sort(first_line.begin(), first_line.end());
  for (std::size_t i = 1; i < first_line.size(); ++i) {
    if (first_line[i].first == first_line[i - 1].first)
      throw usage_error("set file: line " + std::to_string(first_line[i].second) +
                        ": duplicate residue " + std::to_string(first_line[i].first));
  }
  return FSet::of(f, std::move(vals));
}

}  // namespace fplab
