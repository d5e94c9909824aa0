#pragma once

// Brute-force reference counters. Everything here is a direct transcription
// of the defining formula (double/quadruple loops, determinant tests) and
// stays independent of the fast kernels it validates.

#include <set>
#include <vector>

#include "fplab/fset.hpp"
#include "fplab/geometry3.hpp"
#include "fplab/lines.hpp"
#include "fplab/plane_stats.hpp"

namespace fplab::oracle {

inline FSet sumset(const FSet& a, const FSet& b) {
  const PrimeField& f = a.field();
  std::set<u64> out;
  for (u64 x : a.elements())
    for (u64 y : b.elements()) out.insert(f.add(x, y));
  return FSet::of(f, std::vector<u64>(out.begin(), out.end()));
}

inline FSet productset(const FSet& a, const FSet& b) {
  const PrimeField& f = a.field();
  std::set<u64> out;
  for (u64 x : a.elements())
    for (u64 y : b.elements()) out.insert(f.mul(x, y));
  return FSet::of(f, std::vector<u64>(out.begin(), out.end()));
}

inline FSet ratioset(const FSet& a, const FSet& b) {
  const PrimeField& f = a.field();
  std::set<u64> out;
  for (u64 x : a.elements())
    for (u64 y : b.elements())
      if (y != 0) out.insert(f.div(x, y));
  return FSet::of(f, std::vector<u64>(out.begin(), out.end()));
}

inline u64 additive_energy(const FSet& a, const FSet& b) {
  const PrimeField& f = a.field();
  u64 n = 0;
  for (u64 a1 : a.elements())
    for (u64 b1 : b.elements())
      for (u64 a2 : a.elements())
        for (u64 b2 : b.elements())
          if (f.add(a1, b1) == f.add(a2, b2)) ++n;
  return n;
}

inline u64 multiplicative_energy(const FSet& a, const FSet& b) {
  const PrimeField& f = a.field();
  u64 n = 0;
  for (u64 a1 : a.elements())
    for (u64 b1 : b.elements()) {
      if (a1 == 0 || b1 == 0) continue;
      for (u64 a2 : a.elements())
        for (u64 b2 : b.elements()) {
          if (a2 == 0 || b2 == 0) continue;
          if (f.mul(a1, b1) == f.mul(a2, b2)) ++n;
        }
    }
  return n;
}

inline u64 power_energy(const FSet& a, u64 d) {
  const PrimeField& f = a.field();
  std::vector<u64> pw;
  for (u64 x : a.elements()) pw.push_back(f.pow(x, d));
  u64 n = 0;
  for (u64 x : pw)
    for (u64 y : pw)
      for (u64 z : pw)
        for (u64 w : pw)
          if (f.add(x, y) == f.add(z, w)) ++n;
  return n;
}

inline u64 collision_energy(const LineSet& l, const FSet& a) {
  const PrimeField& f = l.field();
  u64 n = 0;
  for (const Line& l1 : l.lines())
    for (const Line& l2 : l.lines())
      for (u64 x1 : a.elements())
        for (u64 x2 : a.elements())
          if (f.add(f.mul(l1.m, x1), l1.b) == f.add(f.mul(l2.m, x2), l2.b)) ++n;
  return n;
}

// Determinant test of three points: (b-a) x (c-a) = 0.
inline bool collinear3(const PrimeField& f, const Point2& a, const Point2& b, const Point2& c) {
  u64 lhs = f.mul(f.sub(b.x, a.x), f.sub(c.y, a.y));
  u64 rhs = f.mul(f.sub(b.y, a.y), f.sub(c.x, a.x));
  return lhs == rhs;
}

// Ordered triples of pairwise-distinct collinear points, by the determinant
// condition.
inline u64 collinear_triples_points(const PrimeField& f, const std::vector<Point2>& pts) {
  u64 n = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k == i || k == j) continue;
        if (collinear3(f, pts[i], pts[j], pts[k])) ++n;
      }
    }
  return n;
}

inline u64 collinear_triples(const FSet& a) {
  return oracle::collinear_triples_points(a.field(), grid_points(a, a));
}

inline u64 collinear_triples_grid(const FSet& a, const FSet& b) {
  return oracle::collinear_triples_points(a.field(), grid_points(a, b));
}

inline u64 point_plane_incidences(const PointSet3& q, const PlaneSet3& pi) {
  const PrimeField& f = q.field();
  u64 n = 0;
  for (const Point3& pt : q.points())
    for (const Plane3& pl : pi.planes())
      if (on_plane(f, pt, pl)) ++n;
  return n;
}

inline u64 point_plane_incidences_weighted(const PointSet3& q, const PlaneSet3& pi) {
  const PrimeField& f = q.field();
  u64 n = 0;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < pi.size(); ++j)
      if (on_plane(f, q.points()[i], pi.planes()[j]))
        n += q.weights()[i] * pi.weights()[j];
  return n;
}

inline u64 point_line_incidences(const PrimeField& f, const std::vector<Point2>& pts,
                                 const LineSet& l) {
  u64 n = 0;
  for (const Point2& q : pts)
    for (const Line& ln : l.lines())
      if (ln.contains(f, q.x, q.y)) ++n;
  return n;
}

// Max points of Q on one line: try every pair as a spanning pair.
inline u64 max_collinear(const PointSet3& q) {
  const auto& pts = q.points();
  if (pts.size() <= 2) return pts.size();
  const PrimeField& f = q.field();
  auto collinear = [&](const Point3& a, const Point3& b, const Point3& c) {
    u64 ux = f.sub(b.x, a.x), uy = f.sub(b.y, a.y), uz = f.sub(b.z, a.z);
    u64 vx = f.sub(c.x, a.x), vy = f.sub(c.y, a.y), vz = f.sub(c.z, a.z);
    return f.sub(f.mul(uy, vz), f.mul(uz, vy)) == 0 &&
           f.sub(f.mul(uz, vx), f.mul(ux, vz)) == 0 &&
           f.sub(f.mul(ux, vy), f.mul(uy, vx)) == 0;
  };
  u64 best = 2;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      u64 cnt = 2;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k == i || k == j) continue;
        if (collinear(pts[i], pts[j], pts[k])) ++cnt;
      }
      best = std::max(best, cnt);
    }
  return best;
}

inline u64 pencil_stat(const LineSet& l) {
  if (l.size() <= 1) return l.size();
  const PrimeField& f = l.field();
  const auto& lines = l.lines();
  auto in_pencil = [&](const Line& a, const Line& b, const Line& c) {
    // dual collinearity of covectors, verticals at infinity
    auto parallel = [&](const Line& u, const Line& v) {
      if (u.vertical || v.vertical) return u.vertical && v.vertical;
      return u.m == v.m;
    };
    if (parallel(a, b)) return parallel(b, c) && parallel(a, c);
    if (parallel(b, c) || parallel(a, c)) return false;
    // common point of a and b, then test c through it
    u64 x, y;
    if (a.vertical || b.vertical) {
      const Line& v = a.vertical ? a : b;
      const Line& n = a.vertical ? b : a;
      x = v.b;
      y = f.add(f.mul(n.m, x), n.b);
    } else {
      x = f.div(f.sub(b.b, a.b), f.sub(a.m, b.m));
      y = f.add(f.mul(a.m, x), a.b);
    }
    return c.contains(f, x, y);
  };
  u64 best = 1;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      u64 cnt = 2;
      for (std::size_t k = 0; k < lines.size(); ++k) {
        if (k == i || k == j) continue;
        if (in_pencil(lines[i], lines[j], lines[k])) ++cnt;
      }
      best = std::max(best, cnt);
    }
  return best;
}

struct LineDirectionCounts {
  u64 lines = 0;
  u64 directions = 0;
};

inline LineDirectionCounts lines_and_directions(const PrimeField& f,
                                                const std::vector<Point2>& pts) {
  std::set<std::tuple<bool, u64, u64>> lines;
  std::set<std::pair<bool, u64>> dirs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i].x == pts[j].x) {
        lines.insert({true, pts[i].x, 0});
        dirs.insert({true, 0});
      } else {
        u64 m = f.div(f.sub(pts[j].y, pts[i].y), f.sub(pts[j].x, pts[i].x));
        u64 b = f.sub(pts[i].y, f.mul(m, pts[i].x));
        lines.insert({false, m, b});
        dirs.insert({false, m});
      }
    }
  return {lines.size(), dirs.size()};
}

// Pinned six-tuple count: pairs of distinct triples with equal pinned
// cross-ratio (a-b)/(c-b).
inline u64 pinned_six_tuples(const FSet& a) {
  const PrimeField& f = a.field();
  const auto& e = a.elements();
  std::map<u64, u64> n;
  for (u64 x : e)
    for (u64 b : e)
      for (u64 c : e) {
        if (x == b || x == c || b == c) continue;
        ++n[f.div(f.sub(x, b), f.sub(c, b))];
      }
  u64 s = 0;
  for (auto& [r, cnt] : n) s += cnt * cnt;
  return s;
}

// Number of distinct affine planes, recounted by normalized-covector dedup.
inline u64 count_all_planes(const PrimeField& f) {
  std::set<Plane3> pls;
  const u64 p = f.modulus();
  for (u64 u = 0; u < p; ++u)
    for (u64 v = 0; v < p; ++v)
      for (u64 w = 0; w < p; ++w) {
        if (u == 0 && v == 0 && w == 0) continue;
        for (u64 c = 0; c < p; ++c) pls.insert(normalize_plane(f, u, v, w, c));
      }
  return pls.size();
}

}  // namespace fplab::oracle
