#pragma once

#include <map>
#include <vector>

#include "fplab/counter.hpp"
#include "fplab/fset.hpp"
#include "fplab/lines.hpp"

namespace fplab {

struct Point2 {
  u64 x = 0, y = 0;
  friend bool operator==(const Point2&, const Point2&) = default;
  friend auto operator<=>(const Point2&, const Point2&) = default;
};

inline std::vector<Point2> grid_points(const FSet& a, const FSet& b) {
  detail::common_field(a, b);
  std::vector<Point2> pts;
  pts.reserve(a.size() * b.size());
  for (u64 x : a.elements())
    for (u64 y : b.elements()) pts.push_back(Point2{x, y});
  return pts;
}

namespace detail {

// Canonical key of the line through two distinct points: (1, x, 0) for the
// vertical x = const, (0, m, b) otherwise.
inline u64 line_key(const PrimeField& f, const Point2& p, const Point2& q) {
  if (p.x == q.x) return pack3(1, p.x, 0);
  u64 m = f.div(f.sub(q.y, p.y), f.sub(q.x, p.x));
  u64 b = f.sub(p.y, f.mul(m, p.x));
  return pack3(0, m, b);
}

inline void require_packable(const PrimeField& f) {
  if (!packable(f.modulus()))
    throw resource_error("plane statistics require p < 2^21 at desk scale");
}

// Bucket unordered point pairs by line key; n_l is recovered from the
// triangular pair count.
template <typename F>
void for_each_line_count(const PrimeField& f, const std::vector<Point2>& pts, F&& fn) {
  require_packable(f);
  KeyCounter lines;
  lines.reset(pts.size() * (pts.size() - 1) / 2 + 1);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) lines.add(line_key(f, pts[i], pts[j]));
  lines.for_each([&](u64 key, u64 pairs) { fn(key, points_from_pairs(pairs)); });
}

}  // namespace detail

// Ordered triples of pairwise-distinct collinear points of the given set.
inline u64 collinear_triples_points(const PrimeField& f, const std::vector<Point2>& pts) {
  if (pts.size() < 3) return 0;
  u64 total = 0;
  detail::for_each_line_count(f, pts, [&](u64, u64 t) {
    if (t >= 3)
      total = detail::checked_add(
          total, detail::checked_mul(detail::checked_mul(t, t - 1), t - 2));
  });
  return total;
}

// T(A): ordered collinear triples in A x A.
inline u64 collinear_triples(const FSet& a) {
  return collinear_triples_points(a.field(), grid_points(a, a));
}

inline u64 collinear_triples_grid(const FSet& a, const FSet& b) {
  return collinear_triples_points(detail::common_field(a, b), grid_points(a, b));
}

struct LineDirectionStats {
  u64 lines = 0;              // |L(P)|: distinct lines through >= 2 points
  u64 directions = 0;         // distinct slopes, vertical included
  std::vector<u64> pinned;    // per point: distinct lines through it
};

inline LineDirectionStats line_and_direction_sets(const FSet& a, const FSet& b) {
  const PrimeField& f = detail::common_field(a, b);
  detail::require_packable(f);
  auto pts = grid_points(a, b);
  if (pts.size() < 2) throw usage_error("line statistics need at least two points");
  LineDirectionStats out;

  detail::KeyCounter lines, dirs;
  lines.reset(pts.size() * (pts.size() - 1) / 2 + 1);
  dirs.reset(pts.size());
  constexpr u64 kVerticalDir = u64{1} << 62;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      u64 key = detail::line_key(f, pts[i], pts[j]);
      if (lines.add(key) == 1) ++out.lines;
      u64 dir = (pts[i].x == pts[j].x) ? kVerticalDir : (key >> 21);  // slope prefix
      if (dirs.add(dir) == 1) ++out.directions;
    }

  out.pinned.resize(pts.size(), 0);
  detail::KeyCounter through;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    through.reset(pts.size());
    u64 distinct = 0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      if (through.add(detail::line_key(f, pts[i], pts[j])) == 1) ++distinct;
    }
    out.pinned[i] = distinct;
  }
  return out;
}

// Exact |{(q,l) : q on l}| for an arbitrary planar point set and line family
// (verticals allowed). Hash-join per slope, brute force on small inputs.
inline u64 point_line_incidences(const PrimeField& f, const std::vector<Point2>& pts,
                                 const LineSet& ls) {
  if (f != ls.field()) throw usage_error("points and lines from different fields");
  u64 total = 0;
  if (pts.size() * ls.size() <= 10000) {
    for (const Line& ln : ls.lines())
      for (const Point2& q : pts)
        if (ln.contains(f, q.x, q.y)) ++total;
    return total;
  }
  const auto& lines = ls.lines();
  std::map<u64, u64> bucket;
  std::size_t j = 0;
  while (j < lines.size()) {
    std::size_t j2 = j;
    while (j2 < lines.size() && lines[j2].vertical == lines[j].vertical &&
           (lines[j].vertical || lines[j2].m == lines[j].m))
      ++j2;
    bucket.clear();
    if (lines[j].vertical) {
      for (const Point2& q : pts) ++bucket[q.x];
    } else {
      for (const Point2& q : pts) ++bucket[f.sub(q.y, f.mul(lines[j].m, q.x))];
    }
    for (; j < j2; ++j) {
      auto it = bucket.find(lines[j].b);
      if (it != bucket.end()) total = detail::checked_add(total, it->second);
    }
  }
  return total;
}

struct CrossRatioSets {
  FSet r;      // full cross-ratio set
  FSet r_inf;  // pinned at infinity: (a-b)/(c-b)
};

// Cross-ratios (a-b)(c-d)/((a-c)(b-d)) over quadruples of A and the pinned
// variant over triples. Pairwise-distinct entries by default; the flag keeps
// degenerate tuples (only division by zero is ever dropped).
inline CrossRatioSets cross_ratio_sets(const FSet& a, bool include_degenerate = false) {
  const PrimeField& f = a.field();
  const auto& e = a.elements();
  std::vector<u64> rvals, rinf;
  if (e.size() >= 3 || include_degenerate) {
    for (u64 x : e)
      for (u64 b : e)
        for (u64 c : e) {
          if (!include_degenerate && (x == b || x == c || b == c)) continue;
          if (c == b) continue;
          rinf.push_back(f.div(f.sub(x, b), f.sub(c, b)));
        }
  }
  if (e.size() >= 4 || include_degenerate) {
    for (u64 x : e)
      for (u64 b : e)
        for (u64 c : e) {
          if (!include_degenerate && (x == b || x == c || b == c)) continue;
          for (u64 d : e) {
            if (!include_degenerate && (d == x || d == b || d == c)) continue;
            u64 den = f.mul(f.sub(x, c), f.sub(b, d));
            if (den == 0) continue;
            rvals.push_back(f.div(f.mul(f.sub(x, b), f.sub(c, d)), den));
          }
        }
  }
  return {FSet::of(f, std::move(rvals)), FSet::of(f, std::move(rinf))};
}

struct DistanceSets {
  FSet quadratic;  // (A-A)^2 + (A-A)^2
  FSet cubic;      // (A-A)^3 + (A-A)^3
};

inline DistanceSets distance_sets(const FSet& a) {
  FSet d = diffset(a, a);
  FSet d2 = power_set(d, 2);
  FSet d3 = power_set(d, 3);
  return {sumset(d2, d2), sumset(d3, d3)};
}

}  // namespace fplab
