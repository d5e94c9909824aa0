#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "fplab/counter.hpp"
#include "fplab/fset.hpp"

namespace fplab {

// Non-vertical line y = m*x + b. The extended form x = b (vertical) is
// admitted for plane-geometry counting only and never enters image sets.
struct Line {
  u64 m = 0;
  u64 b = 0;
  bool vertical = false;

  u64 eval(const PrimeField& f, u64 x) const {
    if (vertical) throw usage_error("evaluating a vertical line");
    return f.add(f.mul(m, x), b);
  }
  bool contains(const PrimeField& f, u64 x, u64 y) const {
    return vertical ? x == b : f.add(f.mul(m, x), b) == y;
  }

  friend bool operator==(const Line&, const Line&) = default;
  friend auto operator<=>(const Line& a, const Line& b) {
    return std::tie(a.vertical, a.m, a.b) <=> std::tie(b.vertical, b.m, b.b);
  }
};

// Duplicate-free family of lines keyed by (m,b) / (vertical,c).
class LineSet {
 public:
  explicit LineSet(PrimeField f, std::vector<Line> lines = {}, std::string provenance = "custom")
      : field_(std::move(f)), lines_(std::move(lines)), provenance_(std::move(provenance)) {
    std::sort(lines_.begin(), lines_.end());
    lines_.erase(std::unique(lines_.begin(), lines_.end()), lines_.end());
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return lines_.size(); }
  bool empty() const noexcept { return lines_.empty(); }
  const std::vector<Line>& lines() const noexcept { return lines_; }
  const std::string& provenance() const noexcept { return provenance_; }

  bool has_vertical() const {
    return !lines_.empty() && lines_.back().vertical;
  }

 private:
  PrimeField field_;
  std::vector<Line> lines_;
  std::string provenance_;
};

// P = B x C: lines y = b*x + c, image set B*A + C. Slopes must be nonzero;
// dropped, when given, receives the number of (b,c) pairs skipped for b = 0.
inline LineSet grid_lines_product(const FSet& b, const FSet& c, u64* dropped = nullptr) {
  const PrimeField& f = detail::common_field(b, c);
  if (dropped) *dropped = b.contains(0) ? c.size() : 0;
  std::vector<Line> lines;
  lines.reserve(b.size() * c.size());
  for (u64 m : b.elements()) {
    if (m == 0) continue;
    for (u64 k : c.elements()) lines.push_back(Line{m, k, false});
  }
  return LineSet(f, std::move(lines), "grid_product");
}

// P = {(b, b*c)}: lines y = b*x + b*c, image set B*(A + C).
inline LineSet grid_lines_sum(const FSet& b, const FSet& c, u64* dropped = nullptr) {
  const PrimeField& f = detail::common_field(b, c);
  if (dropped) *dropped = b.contains(0) ? c.size() : 0;
  std::vector<Line> lines;
  lines.reserve(b.size() * c.size());
  for (u64 m : b.elements()) {
    if (m == 0) continue;
    for (u64 k : c.elements()) lines.push_back(Line{m, f.mul(m, k), false});
  }
  return LineSet(f, std::move(lines), "grid_sum");
}

// L(A) = { l(a) : l in L, a in A }.
inline FSet image_set(const LineSet& l, const FSet& a) {
  if (l.field() != a.field()) throw usage_error("line set and set from different fields");
  if (l.has_vertical()) throw usage_error("image set of a vertical line");
  const PrimeField& f = l.field();
  return detail::collect_pairwise(f, l.size() * a.size(), [&](auto&& put) {
    for (const Line& ln : l.lines())
      for (u64 x : a.elements()) put(f.add(f.mul(ln.m, x), ln.b));
  });
}

// Maximum number of concurrent or parallel lines, computed by dualizing to
// covector points and looking for collinear covectors: parallel classes are
// counted directly, concurrency points by pair bucketing.
inline u64 pencil_stat(const LineSet& l) {
  if (l.empty()) return 0;
  if (l.size() == 1) return 1;
  const PrimeField& f = l.field();
  const u64 p = f.modulus();
  u64 best = 1;

  {  // parallel classes (verticals form one class)
    detail::KeyCounter slopes;
    slopes.reset(l.size());
    for (const Line& ln : l.lines())
      slopes.add(ln.vertical ? (u64{1} << 62) : ln.m);
    best = std::max(best, slopes.max_count());
  }

  const auto& lines = l.lines();
  auto pair_count_max = [&](auto&& key_of) {
    detail::KeyCounter pts;
    pts.reset(lines.size() * lines.size() / 2 + 1);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        const Line &li = lines[i], &lj = lines[j];
        u64 x, y;
        if (li.vertical && lj.vertical) continue;
        if (li.vertical || lj.vertical) {
          const Line& v = li.vertical ? li : lj;
          const Line& n = li.vertical ? lj : li;
          x = v.b;
          y = f.add(f.mul(n.m, x), n.b);
        } else {
          if (li.m == lj.m) continue;  // parallel
          x = f.div(f.sub(lj.b, li.b), f.sub(li.m, lj.m));
          y = f.add(f.mul(li.m, x), li.b);
        }
        pts.add(key_of(x, y));
      }
    }
    u64 m = 1;
    pts.for_each([&](u64, u64 c) { m = std::max(m, detail::points_from_pairs(c)); });
    return m;
  };

  if (detail::packable(p)) {
    best = std::max(best, pair_count_max([](u64 x, u64 y) { return detail::pack2(x, y); }));
  } else {
    // exact wide-key fallback for very large p
    std::map<std::pair<u64, u64>, u64> pts;
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        const Line &li = lines[i], &lj = lines[j];
        if (li.vertical && lj.vertical) continue;
        u64 x, y;
        if (li.vertical || lj.vertical) {
          const Line& v = li.vertical ? li : lj;
          const Line& n = li.vertical ? lj : li;
          x = v.b;
          y = f.add(f.mul(n.m, x), n.b);
        } else {
          if (li.m == lj.m) continue;
          x = f.div(f.sub(lj.b, li.b), f.sub(li.m, lj.m));
          y = f.add(f.mul(li.m, x), li.b);
        }
        ++pts[{x, y}];
      }
    for (auto& [pt, c] : pts) best = std::max(best, detail::points_from_pairs(c));
  }
  return best;
}

// Upper bound of Eq-(12) type: max(#slopes, largest slope fiber). Used as a
// cross-check against the exact pencil statistic.
inline u64 pencil_stat_slope_bound(const LineSet& l) {
  detail::KeyCounter slopes;
  slopes.reset(l.size());
  u64 max_fiber = 0;
  u64 n_slopes = 0;
  for (const Line& ln : l.lines())
    max_fiber = std::max(max_fiber, slopes.add(ln.vertical ? (u64{1} << 62) : ln.m));
  slopes.for_each([&](u64, u64) { ++n_slopes; });
  return std::max(n_slopes, max_fiber);
}

}  // namespace fplab
