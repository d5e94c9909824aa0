#pragma once

#include <cstddef>
#include <vector>

#include "fplab/field.hpp"

namespace fplab::detail {

// Open-addressed u64 key -> u64 count table with epoch-based reset, for the
// hot bucketing loops (direction hashing, line keys, value buckets). Exact:
// full keys are stored and compared.
class KeyCounter {
 public:
  void reset(std::size_t expected) {
    std::size_t want = 16;
    while (want < 2 * expected + 1) want <<= 1;
    if (want > keys_.size() || keys_.empty()) {
      keys_.assign(want, 0);
      cnt_.assign(want, 0);
      epoch_.assign(want, 0);
      cur_ = 1;
      mask_ = want - 1;
    } else {
      ++cur_;
      if (cur_ == 0) {
        std::fill(epoch_.begin(), epoch_.end(), 0);
        cur_ = 1;
      }
    }
    occupied_ = 0;
  }

  u64& add(u64 key, u64 delta = 1) {
    if (occupied_ * 4 >= keys_.size() * 3) grow();
    std::size_t i = static_cast<std::size_t>(splitmix_finalize(key)) & mask_;
    for (;;) {
      if (epoch_[i] != cur_) {
        epoch_[i] = cur_;
        keys_[i] = key;
        cnt_[i] = delta;
        ++occupied_;
        return cnt_[i];
      }
      if (keys_[i] == key) {
        cnt_[i] += delta;
        return cnt_[i];
      }
      i = (i + 1) & mask_;
    }
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (epoch_[i] == cur_) f(keys_[i], cnt_[i]);
  }

  u64 max_count() const {
    u64 m = 0;
    for_each([&](u64, u64 c) { m = std::max(m, c); });
    return m;
  }

 private:
  void grow() {
    std::vector<std::pair<u64, u64>> live;
    live.reserve(occupied_);
    for_each([&](u64 k, u64 c) { live.emplace_back(k, c); });
    std::size_t want = keys_.size() * 2;
    keys_.assign(want, 0);
    cnt_.assign(want, 0);
    epoch_.assign(want, 0);
    cur_ = 1;
    mask_ = want - 1;
    occupied_ = 0;
    for (auto& [k, c] : live) add(k, c);
  }

  std::vector<u64> keys_, cnt_;
  std::vector<unsigned> epoch_;
  unsigned cur_ = 0;
  std::size_t mask_ = 0;
  std::size_t occupied_ = 0;
};

// Residue-tuple packing; valid while p < 2^21 (desk scale). Callers must
// check packable() and fall back to exact wide keys otherwise.
constexpr u64 kPackLimit = u64{1} << 21;

inline bool packable(u64 p) { return p < kPackLimit; }
inline u64 pack2(u64 a, u64 b) { return (a << 21) | b; }
inline u64 pack3(u64 a, u64 b, u64 c) { return (((a << 21) | b) << 21) | c; }

inline u64 exact_isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Recover t from t*(t-1)/2 = pairs; throws if pairs is not triangular.
inline u64 points_from_pairs(u64 pairs) {
  u64 t = (1 + exact_isqrt(1 + 8 * pairs)) / 2;
  if (t * (t - 1) / 2 != pairs) throw overflow_error("pair count is not triangular");
  return t;
}

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("64-bit count overflow");
  return r;
}

inline u64 checked_add(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error("64-bit count overflow");
  return r;
}

}  // namespace fplab::detail
